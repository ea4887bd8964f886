use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dellac::DellacConfig;
use crate::error::{Error, Result};

/// A normalized Dumont permutation of the second kind: `σ ∈ S_{2n+2}` with
/// `σ(k) < k` for even `k`, `σ(k) > k` for odd `k`, and
/// `σ⁻¹(2k) < σ⁻¹(2k+1)` for `k = 1..n`.
///
/// Stored 1-based as the value list `σ(1), …, σ(2n+2)` together with its
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DumontPermutation {
    values: Vec<usize>,
    inverse: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumontViolation {
    /// `σ(pos) ≥ pos` at an even position.
    EvenPosition { pos: usize, value: usize },
    /// `σ(pos) ≤ pos` at an odd position.
    OddPosition { pos: usize, value: usize },
    /// `σ⁻¹(2k) > σ⁻¹(2k+1)`.
    Order { k: usize, pos_even: usize, pos_odd: usize },
}

impl fmt::Display for DumontViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DumontViolation::EvenPosition { pos, value } => {
                write!(f, "sigma({pos}) = {value} is not < {pos}")
            }
            DumontViolation::OddPosition { pos, value } => {
                write!(f, "sigma({pos}) = {value} is not > {pos}")
            }
            DumontViolation::Order { k, pos_even, pos_odd } => write!(
                f,
                "sigma^-1({}) = {pos_even} is not < sigma^-1({}) = {pos_odd}",
                2 * k,
                2 * k + 1
            ),
        }
    }
}

fn inverse_of(values: &[usize]) -> Result<Vec<usize>> {
    let m = values.len();
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::structural(format!(
            "length {m} is not of the form 2n+2 with n >= 1"
        )));
    }
    let mut inverse = vec![0usize; m + 1];
    for (i, &v) in values.iter().enumerate() {
        if v == 0 || v > m || inverse[v] != 0 {
            return Err(Error::structural(format!(
                "{values:?} is not a permutation of 1..={m}"
            )));
        }
        inverse[v] = i + 1;
    }
    Ok(inverse)
}

fn violations(values: &[usize], inverse: &[usize]) -> Vec<DumontViolation> {
    let mut out = Vec::new();
    for (i, &value) in values.iter().enumerate() {
        let pos = i + 1;
        if pos % 2 == 0 && value >= pos {
            out.push(DumontViolation::EvenPosition { pos, value });
        } else if pos % 2 == 1 && value <= pos {
            out.push(DumontViolation::OddPosition { pos, value });
        }
    }
    let n = values.len() / 2 - 1;
    for k in 1..=n {
        let (pos_even, pos_odd) = (inverse[2 * k], inverse[2 * k + 1]);
        if pos_even > pos_odd {
            out.push(DumontViolation::Order { k, pos_even, pos_odd });
        }
    }
    out
}

/// Checks the three Dumont conditions. Violations come back in position
/// order (parity conditions first, then the ordering conditions by `k`); a
/// non-permutation is a structural error.
pub fn validate_dumont(values: &[usize]) -> Result<Vec<DumontViolation>> {
    let inverse = inverse_of(values)?;
    Ok(violations(values, &inverse))
}

impl DumontPermutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let inverse = inverse_of(&values)?;
        let v = violations(&values, &inverse);
        if let Some(first) = v.first() {
            return Err(Error::precondition(format!(
                "not a normalized Dumont permutation: {first}"
            )));
        }
        Ok(Self { values, inverse })
    }

    pub fn n(&self) -> usize {
        self.values.len() / 2 - 1
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `σ(pos)`, 1-based.
    pub fn value(&self, pos: usize) -> usize {
        self.values[pos - 1]
    }

    /// `σ⁻¹(value)`.
    pub fn position(&self, value: usize) -> usize {
        self.inverse[value]
    }
}

impl fmt::Display for DumontPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

impl Serialize for DumontPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

struct Search {
    m: usize,
    values: Vec<usize>,
    placed: Vec<bool>,
}

impl Search {
    fn allowed(&self, pos: usize, value: usize) -> bool {
        if self.placed[value] {
            return false;
        }
        let parity_ok = if pos.is_multiple_of(2) { value < pos } else { value > pos };
        // 2k+1 may only appear after 2k; 2n+2 is unpaired.
        let order_ok = value < 3 || value.is_multiple_of(2) || value == self.m || self.placed[value - 1];
        parity_ok && order_ok
    }

    fn run(&mut self, out: &mut Vec<DumontPermutation>) {
        let pos = self.values.len() + 1;
        if pos > self.m {
            let values = self.values.clone();
            let inverse = inverse_of(&values).expect("search builds permutations");
            out.push(DumontPermutation { values, inverse });
            return;
        }
        for value in 1..=self.m {
            if self.allowed(pos, value) {
                self.placed[value] = true;
                self.values.push(value);
                self.run(out);
                self.values.pop();
                self.placed[value] = false;
            }
        }
    }
}

/// Enumerates `PD2N_n` lexicographically by value sequence.
///
/// Backtracks position by position, admitting a value only if it respects the
/// parity bound of its position and, for `2k+1`, only once `2k` is placed.
/// The first position (always an even value) is split across threads.
pub fn enumerate_dumont(n: usize) -> Result<Vec<DumontPermutation>> {
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let m = 2 * n + 2;
    let branches: Vec<Vec<DumontPermutation>> = (1..=n + 1)
        .into_par_iter()
        .map(|half| {
            let first = 2 * half;
            let mut search = Search {
                m,
                values: vec![first],
                placed: vec![false; m + 1],
            };
            search.placed[first] = true;
            let mut out = Vec::new();
            search.run(&mut out);
            out
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

/// The bijection `PD2N_n → DC_n`: for each `k`, a member of
/// `(σ⁻¹(2k), σ⁻¹(2k+1))` equal to `2l-1` (`l ≤ k`) gives box `(k, n+l)`, and
/// one equal to `2l+2` (`l ≥ k`) gives box `(k, l)`.
pub fn dumont_to_dellac(p: &DumontPermutation) -> Result<DellacConfig> {
    let n = p.n();
    let mut columns = Vec::with_capacity(n);
    for k in 1..=n {
        let mut rows = [0usize; 2];
        for (slot, value) in [2 * k, 2 * k + 1].into_iter().enumerate() {
            let pos = p.position(value);
            rows[slot] = if pos % 2 == 1 && pos.div_ceil(2) <= k {
                n + pos.div_ceil(2)
            } else if pos.is_multiple_of(2) && pos >= 4 && (pos - 2) / 2 >= k {
                (pos - 2) / 2
            } else {
                return Err(Error::internal(format!(
                    "sigma^-1({value}) = {pos} matches no box rule in column {k} of {p}"
                )));
            };
        }
        columns.push(rows);
    }
    DellacConfig::from_columns(n, &columns)
        .map_err(|e| Error::internal(format!("dumont_to_dellac({p}) is not Dellac: {e}")))
}

/// Inverse of [`dumont_to_dellac`]. Row `l ≤ n` of column `k` sends `2k` or
/// `2k+1` to position `2l+2`; row `n+l` sends it to position `2l-1`; the lower
/// position takes `2k`. The leftover positions `2` and `2n+1` hold `1` and
/// `2n+2`.
pub fn dellac_to_dumont(d: &DellacConfig) -> DumontPermutation {
    let n = d.n();
    let m = 2 * n + 2;
    let mut values = vec![0usize; m];
    for k in 1..=n {
        let mut positions = d
            .column(k)
            .map(|row| if row <= n { 2 * row + 2 } else { 2 * (row - n) - 1 });
        positions.sort_unstable();
        values[positions[0] - 1] = 2 * k;
        values[positions[1] - 1] = 2 * k + 1;
    }
    values[1] = 1;
    values[2 * n] = m;
    let inverse = inverse_of(&values).expect("Dellac rows fill every other position once");
    debug_assert!(violations(&values, &inverse).is_empty());
    DumontPermutation { values, inverse }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate_dumont(&[4, 1, 6, 2, 7, 3, 8, 5]).unwrap().is_empty());

        let id: Vec<usize> = (1..=8).collect();
        let v = validate_dumont(&id).unwrap();
        assert_eq!(v[0], DumontViolation::OddPosition { pos: 1, value: 1 });

        let v = validate_dumont(&[4, 1, 6, 2, 7, 3, 5, 8]).unwrap();
        assert!(v.contains(&DumontViolation::EvenPosition { pos: 8, value: 8 }));
        assert!(v.contains(&DumontViolation::OddPosition { pos: 7, value: 5 }));
    }

    #[test]
    fn non_permutations_are_structural() {
        assert!(matches!(validate_dumont(&[1, 1, 2, 3]), Err(Error::Structural(_))));
        assert!(matches!(validate_dumont(&[2, 1, 3]), Err(Error::Structural(_))));
        assert!(matches!(validate_dumont(&[2, 1]), Err(Error::Structural(_))));
        assert!(matches!(validate_dumont(&[5, 1, 4, 2]), Err(Error::Structural(_))));
    }

    #[test]
    fn order_violation_detected() {
        // Parity holds everywhere, but 3 precedes 2.
        let v = validate_dumont(&[3, 1, 4, 2]).unwrap();
        assert_eq!(
            v,
            vec![DumontViolation::Order {
                k: 1,
                pos_even: 4,
                pos_odd: 1
            }]
        );
    }

    #[test]
    fn n3_listed_permutations() {
        let all = enumerate_dumont(3).unwrap();
        let mut listed: Vec<Vec<usize>> = [
            "41627385", "61427385", "41526387", "41627583", "61427583", "21637485", "21436587",
        ]
        .iter()
        .map(|s| s.bytes().map(|b| (b - b'0') as usize).collect())
        .collect();
        listed.sort();
        let got: Vec<Vec<usize>> = all.iter().map(|p| p.values().to_vec()).collect();
        assert_eq!(got, listed);
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_dumont(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 38, 295]);
    }

    #[test]
    fn map_examples() {
        let p = DumontPermutation::new(vec![4, 1, 6, 2, 7, 3, 8, 5]).unwrap();
        let d = dumont_to_dellac(&p).unwrap();
        assert_eq!(d.boxes(), vec![(1, 1), (1, 2), (2, 3), (2, 4), (3, 5), (3, 6)]);
        assert_eq!(dellac_to_dumont(&d), p);

        let p = DumontPermutation::new(vec![2, 1, 4, 3, 6, 5, 8, 7]).unwrap();
        let d = dumont_to_dellac(&p).unwrap();
        assert_eq!(d.boxes(), vec![(1, 1), (1, 4), (2, 2), (2, 5), (3, 3), (3, 6)]);

        let sixth = DellacConfig::new(3, &[(1, 1), (1, 4), (2, 2), (2, 3), (3, 5), (3, 6)]).unwrap();
        assert_eq!(dellac_to_dumont(&sixth).values(), &[2, 1, 6, 3, 7, 4, 8, 5]);
    }

    #[test]
    fn round_trip_n5() {
        let all = enumerate_dumont(5).unwrap();
        for p in &all {
            let d = dumont_to_dellac(p).unwrap();
            assert_eq!(&dellac_to_dumont(&d), p);
        }
    }

    #[test]
    fn serializes_as_value_list() {
        let p = DumontPermutation::new(vec![2, 1, 4, 3]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,4,3]");
    }
}
