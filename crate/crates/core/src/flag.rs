//! Points of the degenerate flag variety over `F_p`, modelled as chains of
//! subspaces `(V_1, …, V_s)` with `dim V_l = d_l` and
//! `pr_{d_l+1, d_{l+1}} V_l ⊆ V_{l+1}`, and their cell decomposition.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::{check_dims, tuple_to_dellac, FixedPointTuple};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::subspace::{enumerate_grassmannian, rref, Subspace};

/// Largest ambient dimension accepted by the chain enumerations.
pub const MAX_FLAG_N: usize = 8;

/// A sequence of subspaces with strictly increasing dimensions in
/// `1..n-1`, all in the same `F_p^n`. Whether it is a point of the degenerate
/// flag variety is a separate question, see [`FlagChain::is_degenerate_flag`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagChain {
    field: PrimeField,
    n: usize,
    dims: Vec<usize>,
    spaces: Vec<Subspace>,
}

impl FlagChain {
    pub fn new(field: PrimeField, n: usize, spaces: Vec<Subspace>) -> Result<Self> {
        if let Some(v) = spaces.iter().find(|v| v.n() != n || v.field() != field) {
            return Err(Error::structural(format!(
                "subspace {v} does not live in F_{}^{n}",
                field.p()
            )));
        }
        let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
        check_dims(n, &dims)?;
        Ok(Self {
            field,
            n,
            dims,
            spaces,
        })
    }

    /// The chain of coordinate subspaces `p_{I^1}, …, p_{I^s}`.
    pub fn coordinate(field: PrimeField, tuple: &FixedPointTuple) -> Result<Self> {
        let spaces = tuple
            .subsets()
            .iter()
            .map(|s| Subspace::coordinate(field, tuple.n(), s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, tuple.n(), spaces)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn is_complete(&self) -> bool {
        self.dims.len() + 1 == self.n
    }

    /// Consecutive conditions `pr_{d_l+1, d_{l+1}} V_l ⊆ V_{l+1}`.
    pub fn is_degenerate_flag(&self) -> bool {
        (0..self.spaces.len().saturating_sub(1)).all(|l| self.pair_condition(l, l + 1))
    }

    /// All conditions `pr_{d_l+1, d_m} V_l ⊆ V_m` for `l < m`.
    pub fn satisfies_all_pairs(&self) -> bool {
        let s = self.spaces.len();
        (0..s).all(|l| (l + 1..s).all(|m| self.pair_condition(l, m)))
    }

    fn pair_condition(&self, l: usize, m: usize) -> bool {
        let projected = self.spaces[l].zero_band(self.dims[l] + 1, self.dims[m]);
        self.spaces[m].contains(&projected)
    }
}

impl fmt::Display for FlagChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.spaces.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" ; "))
    }
}

impl Serialize for FlagChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.spaces.serialize(s)
    }
}

pub fn is_degenerate_flag(chain: &FlagChain) -> bool {
    chain.is_degenerate_flag()
}

struct ChainSearch<'a> {
    grassmannians: &'a [Vec<Subspace>],
    dims: &'a [usize],
}

impl ChainSearch<'_> {
    fn walk(&self, stack: &mut Vec<Subspace>, visit: &mut dyn FnMut(&[Subspace])) {
        let l = stack.len();
        if l == self.dims.len() {
            visit(stack);
            return;
        }
        let required = stack
            .last()
            .map(|prev| prev.zero_band(self.dims[l - 1] + 1, self.dims[l]));
        for candidate in &self.grassmannians[l] {
            if required.as_ref().is_none_or(|w| candidate.contains(w)) {
                stack.push(candidate.clone());
                self.walk(stack, visit);
                stack.pop();
            }
        }
    }
}

fn grassmannians(dims: &[usize], n: usize, field: PrimeField) -> Result<Vec<Vec<Subspace>>> {
    check_dims(n, dims)?;
    if n > MAX_FLAG_N {
        return Err(Error::range(format!("n = {n} exceeds {MAX_FLAG_N}")));
    }
    dims.iter()
        .map(|&d| enumerate_grassmannian(d, n, field))
        .collect()
}

/// Runs `visit` on every chain, split across threads by the choice of `V_1`.
/// Each thread folds into its own accumulator; accumulators come back in
/// `V_1` order.
fn fold_chains<A, F>(dims: &[usize], n: usize, field: PrimeField, init: A, visit: F) -> Result<Vec<A>>
where
    A: Clone + Send + Sync,
    F: Fn(&mut A, &[Subspace]) + Sync,
{
    let grass = grassmannians(dims, n, field)?;
    if dims.is_empty() {
        let mut acc = init;
        visit(&mut acc, &[]);
        return Ok(vec![acc]);
    }
    let search = ChainSearch {
        grassmannians: &grass,
        dims,
    };
    Ok(grass[0]
        .par_iter()
        .map(|first| {
            let mut acc = init.clone();
            let mut stack = vec![first.clone()];
            search.walk(&mut stack, &mut |spaces| visit(&mut acc, spaces));
            acc
        })
        .collect())
}

/// Every point of the degenerate flag variety for `dims` over `F_p`, grouped
/// by `V_1` in Grassmannian order, then depth-first.
pub fn enumerate_chains(dims: &[usize], n: usize, field: PrimeField) -> Result<Vec<FlagChain>> {
    let parts = fold_chains(dims, n, field, Vec::new(), |acc: &mut Vec<FlagChain>, spaces| {
        acc.push(FlagChain {
            field,
            n,
            dims: dims.to_vec(),
            spaces: spaces.to_vec(),
        })
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Number of `F_p`-points of the degenerate flag variety for `dims`.
pub fn count_points(dims: &[usize], n: usize, field: PrimeField) -> Result<BigUint> {
    let parts = fold_chains(dims, n, field, 0u64, |acc, _| *acc += 1)?;
    Ok(parts.into_iter().map(BigUint::from).sum())
}

fn psi(i: usize, d: usize, n: usize) -> usize {
    if i > d {
        i - d
    } else {
        i + n - d
    }
}

fn psi_inverse(j: usize, d: usize, n: usize) -> usize {
    if j + d <= n {
        j + d
    } else {
        j + d - n
    }
}

/// Pivot set of `rows` when each pivot is the maximal-index nonzero
/// coordinate (1-based, sorted).
fn max_pivots(field: PrimeField, n: usize, rows: Vec<Vec<u32>>) -> Vec<usize> {
    let reversed: Vec<Vec<u32>> = rows
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    let reduced = rref(field, reversed, n);
    let mut pivots: Vec<usize> = reduced
        .iter()
        .map(|r| n - r.iter().position(|&x| x != 0).expect("rows are nonzero"))
        .collect();
    pivots.sort_unstable();
    pivots
}

/// Label `L` of the Grassmannian cell containing `v`: apply
/// `ψ: v_i ↦ v_{[i-d]_+}`, read the maximal-index pivots `J` of the image,
/// and pull back, `L = {ψ⁻¹(j) : j ∈ J}` sorted.
pub fn grassmann_cell_label(v: &Subspace) -> Vec<usize> {
    let (d, n) = (v.dim(), v.n());
    let image = v.permute_coordinates(|i| psi(i, d, n));
    let mut label: Vec<usize> = max_pivots(v.field(), n, image)
        .into_iter()
        .map(|j| psi_inverse(j, d, n))
        .collect();
    label.sort_unstable();
    label
}

/// Dimension of the cell labelled `label` in `Gr(|label|, n)`:
/// `Σ_t (J_t - t)` with `J = sorted ψ(label)`.
pub fn grassmann_cell_dimension(label: &[usize], n: usize) -> Result<usize> {
    let d = label.len();
    if label.windows(2).any(|w| w[0] >= w[1]) || label.iter().any(|&l| l == 0 || l > n) {
        return Err(Error::structural(format!(
            "{label:?} is not a sorted subset of 1..={n}"
        )));
    }
    let mut j: Vec<usize> = label.iter().map(|&l| psi(l, d, n)).collect();
    j.sort_unstable();
    Ok(j.iter().enumerate().map(|(t, &jt)| jt - (t + 1)).sum())
}

/// `(I^1, …, I^s)` with `I^l` the Grassmannian cell label of `V_l`. The
/// result must be a fixed-point tuple; anything else is an internal error.
pub fn flag_cell_label(chain: &FlagChain) -> Result<FixedPointTuple> {
    let subsets: Vec<Vec<usize>> = chain.spaces.iter().map(grassmann_cell_label).collect();
    let tuple = FixedPointTuple::new(chain.n, chain.dims.clone(), subsets)?;
    if let Some(v) = tuple.violation() {
        return Err(Error::internal(format!(
            "cell label {tuple} of {chain} is not a fixed point: {v}"
        )));
    }
    Ok(tuple)
}

/// [`flag_cell_label`] restricted to complete flags on the variety.
pub fn full_flag_cell_label(chain: &FlagChain) -> Result<FixedPointTuple> {
    if !chain.is_complete() {
        return Err(Error::precondition(format!(
            "expected complete dims, got {:?}",
            chain.dims
        )));
    }
    if !chain.is_degenerate_flag() {
        return Err(Error::precondition(format!("{chain} is not a degenerate flag")));
    }
    flag_cell_label(chain)
}

/// Number of `F_p`-points in one cell. For complete flags `dellac_length` is
/// the length of the Dellac configuration attached to the label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCount {
    pub tuple: FixedPointTuple,
    pub dellac_length: Option<usize>,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub count: BigUint,
}

/// Groups all points by cell label, sorted by label.
pub fn cell_point_counts(dims: &[usize], n: usize, field: PrimeField) -> Result<Vec<CellCount>> {
    type Tally = BTreeMap<FixedPointTuple, u64>;
    let parts = fold_chains(
        dims,
        n,
        field,
        Ok(Tally::new()),
        |acc: &mut Result<Tally>, spaces| {
            let Ok(tally) = acc else { return };
            let chain = FlagChain {
                field,
                n,
                dims: dims.to_vec(),
                spaces: spaces.to_vec(),
            };
            match flag_cell_label(&chain) {
                Ok(label) => *tally.entry(label).or_default() += 1,
                Err(e) => *acc = Err(e),
            }
        },
    )?;
    let mut total = Tally::new();
    for part in parts {
        for (k, v) in part? {
            *total.entry(k).or_default() += v;
        }
    }
    let complete = dims.len() + 1 == n;
    total
        .into_iter()
        .map(|(tuple, count)| {
            let dellac_length = if complete {
                Some(tuple_to_dellac(&tuple)?.length())
            } else {
                None
            };
            Ok(CellCount {
                tuple,
                dellac_length,
                count: BigUint::from(count),
            })
        })
        .collect()
}
