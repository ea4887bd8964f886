use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::combinations;
use crate::dellac::DellacConfig;
use crate::error::{Error, Result};

/// A torus fixed point `(I^1, …, I^s)` of the degenerate partial flag variety
/// with dimension vector `dims`: `|I^l| = d_l`, each subset sorted.
///
/// Construction only checks the shape; [`FixedPointTuple::violation`] checks
/// the fixed-point condition `I^l \ {d_l+1, …, d_{l+1}} ⊆ I^{l+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FixedPointTuple {
    n: usize,
    dims: Vec<usize>,
    subsets: Vec<Vec<usize>>,
}

/// First failure of the fixed-point condition: `element ∈ I^level` lies
/// outside the band `{d_level+1, …, d_{level+1}}` but not in `I^{level+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleViolation {
    pub level: usize,
    pub element: usize,
}

impl fmt::Display for TupleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "element {} of I^{} is outside the projection band and missing from I^{}",
            self.element,
            self.level,
            self.level + 1
        )
    }
}

/// `(1, 2, …, n-1)`.
pub fn complete_dims(n: usize) -> Vec<usize> {
    (1..n).collect()
}

pub(crate) fn check_dims(n: usize, dims: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::structural("n must be at least 1"));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::structural(format!(
            "dims {dims:?} are not strictly increasing"
        )));
    }
    if let Some(&d) = dims.iter().find(|&&d| d == 0 || d >= n) {
        return Err(Error::structural(format!(
            "dimension {d} is outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

impl FixedPointTuple {
    pub fn new(n: usize, dims: Vec<usize>, subsets: Vec<Vec<usize>>) -> Result<Self> {
        check_dims(n, &dims)?;
        if subsets.len() != dims.len() {
            return Err(Error::structural(format!(
                "{} subsets for {} dimensions",
                subsets.len(),
                dims.len()
            )));
        }
        let mut sorted = Vec::with_capacity(subsets.len());
        for (l, (mut s, &d)) in subsets.into_iter().zip(&dims).enumerate() {
            s.sort_unstable();
            if s.len() != d {
                return Err(Error::structural(format!(
                    "|I^{}| = {} but d_{} = {d}",
                    l + 1,
                    s.len(),
                    l + 1
                )));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::structural(format!("I^{} has repeated entries", l + 1)));
            }
            if s.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::structural(format!(
                    "I^{} has entries outside 1..={n}",
                    l + 1
                )));
            }
            sorted.push(s);
        }
        Ok(Self {
            n,
            dims,
            subsets: sorted,
        })
    }

    /// Complete-flag tuple `(I^1, …, I^{n-1})`.
    pub fn complete(n: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(n, complete_dims(n), subsets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// `I^l`, 1-based.
    pub fn subset(&self, l: usize) -> &[usize] {
        &self.subsets[l - 1]
    }

    pub fn is_complete(&self) -> bool {
        self.dims.len() + 1 == self.n && self.dims.iter().enumerate().all(|(i, &d)| d == i + 1)
    }

    /// First failing level of the fixed-point condition, if any.
    pub fn violation(&self) -> Option<TupleViolation> {
        for l in 0..self.dims.len().saturating_sub(1) {
            let (lo, hi) = (self.dims[l] + 1, self.dims[l + 1]);
            let next = &self.subsets[l + 1];
            if let Some(&element) = self.subsets[l]
                .iter()
                .find(|&&x| !(lo..=hi).contains(&x) && next.binary_search(&x).is_err())
            {
                return Some(TupleViolation {
                    level: l + 1,
                    element,
                });
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }
}

impl fmt::Display for FixedPointTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .subsets
            .iter()
            .map(|s| {
                let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Shape check plus fixed-point condition. `Ok(None)` means valid.
pub fn validate_tuple(
    n: usize,
    dims: &[usize],
    subsets: &[Vec<usize>],
) -> Result<Option<TupleViolation>> {
    Ok(FixedPointTuple::new(n, dims.to_vec(), subsets.to_vec())?.violation())
}

/// All fixed-point tuples for `dims`, lexicographically by subset sequence.
pub fn enumerate_tuples(n: usize, dims: &[usize]) -> Result<Vec<FixedPointTuple>> {
    check_dims(n, dims)?;
    if dims.is_empty() {
        return Ok(vec![FixedPointTuple {
            n,
            dims: Vec::new(),
            subsets: Vec::new(),
        }]);
    }
    let universe: Vec<usize> = (1..=n).collect();
    let firsts = combinations(&universe, dims[0]);
    let branches: Vec<Vec<FixedPointTuple>> = firsts
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut stack = vec![first];
            extend_tuple(n, dims, &mut stack, &mut out);
            out
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

fn extend_tuple(n: usize, dims: &[usize], stack: &mut Vec<Vec<usize>>, out: &mut Vec<FixedPointTuple>) {
    let l = stack.len();
    if l == dims.len() {
        out.push(FixedPointTuple {
            n,
            dims: dims.to_vec(),
            subsets: stack.clone(),
        });
        return;
    }
    let (lo, hi) = (dims[l - 1] + 1, dims[l]);
    let required: Vec<usize> = stack[l - 1]
        .iter()
        .copied()
        .filter(|x| !(lo..=hi).contains(x))
        .collect();
    let pool: Vec<usize> = (1..=n).filter(|x| required.binary_search(x).is_err()).collect();
    // Merging a fixed set into lexicographically ordered extensions keeps the
    // order lexicographic.
    for extra in combinations(&pool, dims[l] - required.len()) {
        let mut next = required.clone();
        next.extend(extra);
        next.sort_unstable();
        stack.push(next);
        extend_tuple(n, dims, stack, out);
        stack.pop();
    }
}

fn fold_row(j: usize, l: usize, n: usize) -> usize {
    if j > l {
        j
    } else {
        j + n
    }
}

/// Maps a complete-flag fixed point to its Dellac configuration, column by
/// column, with `I^0 = ∅`:
///
/// * `l ∉ I^{l-1}`: one new `j`, boxes `(l, l)` and `(l, j)` (or `(l, j+n)`
///   when `j ≤ l`);
/// * `l ∈ I^{l-1} ∩ I^l`: one new `j`, boxes `(l, l+n)` and `(l, j)` / `(l, j+n)`;
/// * `l ∈ I^{l-1} \ I^l`: two new `j1 < j2`, boxes `(l, j_i)` / `(l, j_i+n)`.
///
/// Column `n` takes the two rows left over.
pub fn tuple_to_dellac(t: &FixedPointTuple) -> Result<DellacConfig> {
    if !t.is_complete() {
        return Err(Error::precondition(format!(
            "tuple_to_dellac needs complete dims (1..{}), got {:?}",
            t.n, t.dims
        )));
    }
    if let Some(v) = t.violation() {
        return Err(Error::precondition(v.to_string()));
    }
    let n = t.n;
    let empty = Vec::new();
    let mut columns = Vec::with_capacity(n);
    let mut used = vec![false; 2 * n + 1];
    for l in 1..n {
        let prev = if l == 1 { &empty } else { &t.subsets[l - 2] };
        let cur = &t.subsets[l - 1];
        let new: Vec<usize> = cur
            .iter()
            .copied()
            .filter(|x| prev.binary_search(x).is_err())
            .collect();
        let in_prev = prev.binary_search(&l).is_ok();
        let in_cur = cur.binary_search(&l).is_ok();
        let rows = match (in_prev, in_cur, new.as_slice()) {
            (false, _, &[j]) => [l, fold_row(j, l, n)],
            (true, true, &[j]) => [l + n, fold_row(j, l, n)],
            (true, false, &[j1, j2]) => [fold_row(j1, l, n), fold_row(j2, l, n)],
            _ => {
                return Err(Error::internal(format!(
                    "column {l}: unexpected difference {new:?} for {t}"
                )))
            }
        };
        for &r in &rows {
            used[r] = true;
        }
        columns.push(rows);
    }
    let rest: Vec<usize> = (1..=2 * n).filter(|&r| !used[r]).collect();
    let last: [usize; 2] = rest.as_slice().try_into().map_err(|_| {
        Error::internal(format!("{} rows left for the last column of {t}", rest.len()))
    })?;
    columns.push(last);
    DellacConfig::from_columns(n, &columns)
        .map_err(|e| Error::internal(format!("tuple_to_dellac({t}) is not Dellac: {e}")))
}

fn unfold_row(j: usize, n: usize) -> usize {
    if j <= n {
        j
    } else {
        j - n
    }
}

/// Inverse of [`tuple_to_dellac`], built inductively over columns `1..n-1`.
pub fn dellac_to_tuple(d: &DellacConfig) -> FixedPointTuple {
    let n = d.n();
    let mut subsets: Vec<Vec<usize>> = Vec::with_capacity(n.saturating_sub(1));
    let mut prev: Vec<usize> = Vec::new();
    for l in 1..n {
        let [a, b] = d.column(l);
        let mut cur = if a == l || b == l {
            let other = if a == l { b } else { a };
            let mut s = prev.clone();
            s.push(unfold_row(other, n));
            s
        } else {
            let mut s: Vec<usize> = prev.iter().copied().filter(|&x| x != l).collect();
            s.push(unfold_row(a, n));
            s.push(unfold_row(b, n));
            s
        };
        cur.sort_unstable();
        subsets.push(cur.clone());
        prev = cur;
    }
    FixedPointTuple {
        n,
        dims: complete_dims(n),
        subsets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dellac::enumerate_dellac;

    fn t3(a: &[usize], b: &[usize]) -> FixedPointTuple {
        FixedPointTuple::complete(3, vec![a.to_vec(), b.to_vec()]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_tuple(3, &[1, 2], &[vec![2], vec![1, 3]]).unwrap(), None);
        assert_eq!(
            validate_tuple(3, &[1, 2], &[vec![3], vec![1, 2]]).unwrap(),
            Some(TupleViolation {
                level: 1,
                element: 3
            })
        );
        assert_eq!(
            validate_tuple(4, &[1, 3], &[vec![2], vec![1, 3, 4]]).unwrap(),
            None
        );
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            validate_tuple(3, &[1, 2], &[vec![2], vec![1]]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_tuple(3, &[2, 1], &[vec![2, 3], vec![1]]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_tuple(3, &[1, 3], &[vec![2], vec![1, 2, 3]]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_tuple(3, &[2], &[vec![2, 2]]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_tuple(3, &[1], &[vec![4]]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn enumerate_n3_matches_listed_pairs() {
        let got = enumerate_tuples(3, &[1, 2]).unwrap();
        let mut listed = vec![
            t3(&[2], &[1, 3]),
            t3(&[2], &[2, 3]),
            t3(&[2], &[1, 2]),
            t3(&[3], &[1, 3]),
            t3(&[3], &[2, 3]),
            t3(&[1], &[1, 3]),
            t3(&[1], &[1, 2]),
        ];
        listed.sort();
        assert_eq!(got, listed);
    }

    #[test]
    fn enumerate_partial_counts() {
        assert_eq!(enumerate_tuples(4, &[2]).unwrap().len(), 6);
        assert_eq!(enumerate_tuples(4, &[1, 3]).unwrap().len(), 14);
        assert_eq!(enumerate_tuples(1, &[]).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        for (n, dims) in [(5, vec![1, 2, 3, 4]), (5, vec![2, 4]), (6, vec![1, 3, 5])] {
            let all = enumerate_tuples(n, &dims).unwrap();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(FixedPointTuple::is_valid));
        }
    }

    #[test]
    fn to_dellac_examples() {
        let d = tuple_to_dellac(&t3(&[2], &[1, 3])).unwrap();
        assert_eq!(d.boxes(), vec![(1, 1), (1, 2), (2, 3), (2, 4), (3, 5), (3, 6)]);

        let t = FixedPointTuple::complete(2, vec![vec![1]]).unwrap();
        let d = tuple_to_dellac(&t).unwrap();
        assert_eq!(d.boxes(), vec![(1, 1), (1, 3), (2, 2), (2, 4)]);
        assert_eq!(dellac_to_tuple(&d), t);

        let t = FixedPointTuple::complete(1, vec![]).unwrap();
        let d = tuple_to_dellac(&t).unwrap();
        assert_eq!(d.boxes(), vec![(1, 1), (1, 2)]);
        assert_eq!(dellac_to_tuple(&d), t);
    }

    #[test]
    fn to_dellac_rejects_bad_input() {
        let partial = FixedPointTuple::new(4, vec![1, 3], vec![vec![2], vec![1, 3, 4]]).unwrap();
        assert!(matches!(tuple_to_dellac(&partial), Err(Error::Precondition(_))));
        let invalid = t3(&[3], &[1, 2]);
        assert!(matches!(tuple_to_dellac(&invalid), Err(Error::Precondition(_))));
    }

    #[test]
    fn second_n3_diagram() {
        let d = DellacConfig::new(3, &[(1, 1), (1, 2), (2, 3), (2, 5), (3, 4), (3, 6)]).unwrap();
        assert_eq!(dellac_to_tuple(&d), t3(&[2], &[2, 3]));
    }

    #[test]
    fn round_trips() {
        for n in 1..=6 {
            let tuples = enumerate_tuples(n, &complete_dims(n)).unwrap();
            let mut images = Vec::with_capacity(tuples.len());
            for t in &tuples {
                let d = tuple_to_dellac(t).unwrap();
                assert_eq!(&dellac_to_tuple(&d), t);
                images.push(d);
            }
            images.sort();
            let all = enumerate_dellac(n).unwrap();
            assert_eq!(images, all, "n = {n}");
        }
    }
}
