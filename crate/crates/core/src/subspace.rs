//! Subspaces of `F_p^n` in canonical reduced row echelon form, coordinate
//! projections, and enumeration of Grassmannians.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bijections::combinations;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Largest supported ambient dimension.
pub const MAX_N: usize = 12;

/// A subspace of `F_p^n`.
///
/// The basis is kept in reduced row echelon form with each row's pivot at its
/// minimal-index nonzero coordinate, pivot entries 1 and rows ordered by
/// pivot. That form is unique, so `==` is equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: PrimeField,
    n: usize,
    rows: Vec<Vec<u32>>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::range(format!("ambient dimension {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

/// In-place Gauss–Jordan elimination; returns the nonzero rows in reduced
/// echelon form (pivots at minimal index).
pub(crate) fn rref(field: PrimeField, mut m: Vec<Vec<u32>>, n: usize) -> Vec<Vec<u32>> {
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]);
        for c in col..n {
            m[rank][c] = field.mul(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let factor = m[r][col];
            for c in col..n {
                let t = field.mul(factor, m[rank][c]);
                m[r][c] = field.sub(m[r][c], t);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m
}

impl Subspace {
    /// Span of `vectors`, each of length `n` with entries reduced mod `p`.
    pub fn span(field: PrimeField, n: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        check_n(n)?;
        let mut m = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != n {
                return Err(Error::structural(format!(
                    "vector of length {} in ambient dimension {n}",
                    v.len()
                )));
            }
            m.push(v.iter().map(|&x| x % field.p()).collect());
        }
        Ok(Self::from_rref(field, n, rref(field, m, n)))
    }

    /// Rows must already be in canonical form.
    pub(crate) fn from_rref(field: PrimeField, n: usize, rows: Vec<Vec<u32>>) -> Self {
        Self { field, n, rows }
    }

    pub fn zero(field: PrimeField, n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            field,
            n,
            rows: Vec::new(),
        })
    }

    /// The coordinate subspace `p_L = span(v_l : l ∈ L)`.
    pub fn coordinate(field: PrimeField, n: usize, indices: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() || sorted.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::structural(format!(
                "{indices:?} is not a set of indices in 1..={n}"
            )));
        }
        let rows = sorted
            .iter()
            .map(|&i| {
                let mut r = vec![0; n];
                r[i - 1] = 1;
                r
            })
            .collect();
        Ok(Self { field, n, rows })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis rows.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Pivot columns, 1-based.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("rows are nonzero") + 1)
            .collect()
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let f = self.field;
        let mut rest = v.to_vec();
        for row in &self.rows {
            let piv = row.iter().position(|&x| x != 0).expect("rows are nonzero");
            let c = rest[piv];
            if c == 0 {
                continue;
            }
            for (x, &y) in rest.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        rest.iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`, by solving membership for each generator of `other`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.n == self.n
            && other.dim() <= self.dim()
            && other.rows.iter().all(|r| self.contains_vector(r))
    }

    /// Image under the coordinate projection zeroing coordinates
    /// `i+1, …, j` (written `pr_{i+1,j}`); requires `1 ≤ i < j ≤ n`.
    pub fn projection(&self, i: usize, j: usize) -> Result<Subspace> {
        if !(1 <= i && i < j && j <= self.n) {
            return Err(Error::precondition(format!(
                "projection band ({i},{j}] invalid for n = {}",
                self.n
            )));
        }
        Ok(self.zero_band(i + 1, j))
    }

    /// Zeros coordinates `lo..=hi` and re-canonicalizes.
    pub(crate) fn zero_band(&self, lo: usize, hi: usize) -> Subspace {
        let m: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                for x in &mut r[lo - 1..hi] {
                    *x = 0;
                }
                r
            })
            .collect();
        Subspace::from_rref(self.field, self.n, rref(self.field, m, self.n))
    }

    /// Image under the coordinate permutation `v_i ↦ v_{target(i)}`.
    pub(crate) fn permute_coordinates(&self, target: impl Fn(usize) -> usize) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| {
                let mut out = vec![0; self.n];
                for (i, &x) in r.iter().enumerate() {
                    out[target(i + 1) - 1] = x;
                }
                out
            })
            .collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let v: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", v.join(" "))
            })
            .collect();
        write!(f, "span{{{}}} in F_{}^{}", rows.join(", "), self.field.p(), self.n)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subspace", 4)?;
        st.serialize_field("p", &self.field.p())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.dim())?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

/// Streams every `d`-dimensional subspace of `F_p^n` exactly once.
///
/// Order: pivot sets lexicographically, then the free entries of the echelon
/// form read row-major as a base-`p` number, last entry fastest.
pub struct GrassmannianIter {
    field: PrimeField,
    n: usize,
    pivot_sets: std::vec::IntoIter<Vec<usize>>,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
    done_with_set: bool,
}

impl GrassmannianIter {
    pub fn new(d: usize, n: usize, field: PrimeField) -> Result<Self> {
        check_n(n)?;
        if d > n {
            return Err(Error::precondition(format!("d = {d} exceeds n = {n}")));
        }
        let columns: Vec<usize> = (0..n).collect();
        Ok(Self {
            field,
            n,
            pivot_sets: combinations(&columns, d).into_iter(),
            pivots: Vec::new(),
            free: Vec::new(),
            digits: Vec::new(),
            done_with_set: true,
        })
    }

    fn load_next_set(&mut self) -> bool {
        let Some(pivots) = self.pivot_sets.next() else {
            return false;
        };
        self.free = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| {
                let piv = pivots.clone();
                (c + 1..self.n)
                    .filter(move |col| !piv.contains(col))
                    .map(move |col| (r, col))
            })
            .collect();
        self.digits = vec![0; self.free.len()];
        self.pivots = pivots;
        self.done_with_set = false;
        true
    }

    fn current(&self) -> Subspace {
        let mut rows = vec![vec![0u32; self.n]; self.pivots.len()];
        for (r, &c) in self.pivots.iter().enumerate() {
            rows[r][c] = 1;
        }
        for (&(r, c), &x) in self.free.iter().zip(&self.digits) {
            rows[r][c] = x;
        }
        Subspace::from_rref(self.field, self.n, rows)
    }

    fn advance(&mut self) {
        let p = self.field.p();
        for x in self.digits.iter_mut().rev() {
            *x += 1;
            if *x < p {
                return;
            }
            *x = 0;
        }
        self.done_with_set = true;
    }
}

impl Iterator for GrassmannianIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done_with_set && !self.load_next_set() {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// Every `d`-dimensional subspace of `F_p^n`, in [`GrassmannianIter`] order.
pub fn enumerate_grassmannian(d: usize, n: usize, field: PrimeField) -> Result<Vec<Subspace>> {
    Ok(GrassmannianIter::new(d, n, field)?.collect())
}

/// Gaussian binomial `[n choose d]_q` via the q-Pascal rule
/// `[n, d] = [n-1, d-1] + q^d [n-1, d]`.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> BigUint {
    if d > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let left = if k >= 1 { row[k - 1].clone() } else { BigUint::zero() };
            let right = if k < m { q.pow(k as u32) * &row[k] } else { BigUint::zero() };
            *slot = left + right;
        }
        row = next;
    }
    row.swap_remove(d)
}
