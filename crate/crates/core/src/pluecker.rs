//! Plücker coordinates of subspaces, classical and degenerate Plücker
//! relations, and a brute-force check that the degenerate relations cut out
//! exactly the chains satisfying the projection conditions.

use std::fmt;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bijections::{check_dims, combinations};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::flag::{FlagChain, MAX_FLAG_N};
use crate::subspace::{enumerate_grassmannian, Subspace};

/// Default cap on the number of generated relations.
pub const DEFAULT_RELATION_BUDGET: usize = 1_000_000;

/// Largest product of Grassmannian sizes [`verify_ideal_cutout`] will scan.
pub const MAX_CUTOUT_POINTS: u64 = 10_000_000;

fn mask_of(sorted: &[usize]) -> usize {
    sorted.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

/// Sorts `indices` and returns the sign of the sorting permutation, or
/// `None` when an index repeats (the coordinate vanishes identically).
fn normalize(indices: &[usize]) -> Option<(i8, Vec<usize>)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // Insertion sort, counting transpositions.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// Plücker coordinates `X_J` of a `d`-dimensional subspace, for sorted
/// `d`-subsets `J` of `1..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    field: PrimeField,
    n: usize,
    d: usize,
    // Indexed by the bitmask of J.
    coords: Vec<u32>,
}

impl PlueckerVector {
    /// Maximal minors of the `d × n` matrix with the given rows.
    pub fn from_basis(field: PrimeField, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::precondition("Plücker coordinates need d >= 1"));
        }
        if n > crate::subspace::MAX_N || rows.iter().any(|r| r.len() != n) {
            return Err(Error::structural(format!("basis rows must have length {n}")));
        }
        let mut coords = vec![0u32; 1 << n];
        let universe: Vec<usize> = (1..=n).collect();
        for cols in combinations(&universe, d) {
            let minor: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c - 1] % field.p()).collect())
                .collect();
            coords[mask_of(&cols)] = field.det(minor);
        }
        Ok(Self {
            field,
            n,
            d,
            coords,
        })
    }

    pub fn from_subspace(v: &Subspace) -> Result<Self> {
        Self::from_basis(v.field(), v.n(), v.rows())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `X_J` for an arbitrary index tuple: `sgn(σ) X_{sorted}` for a
    /// reordering, 0 for repeated indices.
    pub fn get(&self, indices: &[usize]) -> u32 {
        assert_eq!(indices.len(), self.d, "tuple size must equal d");
        match normalize(indices) {
            None => 0,
            Some((sign, sorted)) => {
                let x = self.coords[mask_of(&sorted)];
                if sign < 0 {
                    self.field.neg(x)
                } else {
                    x
                }
            }
        }
    }

    fn get_mask(&self, mask: usize) -> u32 {
        self.coords[mask]
    }

    /// Nonzero coordinates as `(J, X_J)`, `J` in lexicographic order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, u32)> {
        let universe: Vec<usize> = (1..=self.n).collect();
        combinations(&universe, self.d)
            .into_iter()
            .filter_map(|j| {
                let x = self.coords[mask_of(&j)];
                (x != 0).then_some((j, x))
            })
            .collect()
    }
}

impl Serialize for PlueckerVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<(Vec<usize>, u32)> = self.nonzero();
        let mut st = s.serialize_struct("PlueckerVector", 4)?;
        st.serialize_field("p", &self.field.p())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

pub fn pluecker_coordinates(v: &Subspace) -> Result<PlueckerVector> {
    PlueckerVector::from_subspace(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Classical,
    Degenerate,
}

/// One monomial `sign · X_L X_J` with both tuples sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Term {
    pub sign: i8,
    #[serde(rename = "L")]
    pub l: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
}

/// `R^k_{L,J}` or its degenerate version `R^{k;a}_{L,J}`, a quadratic form
/// in the coordinates of a `p`-dimensional and a `q`-dimensional subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlueckerRelation {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub l: Vec<usize>,
    pub j: Vec<usize>,
    pub kind: RelationKind,
    pub terms: Vec<Term>,
}

impl Serialize for PlueckerRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PlueckerRelation", 5)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("L", &self.l)?;
        st.serialize_field("J", &self.j)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("terms", &self.terms)?;
        st.end()
    }
}

impl fmt::Display for PlueckerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let idx = |v: &[usize]| v.iter().map(ToString::to_string).collect::<String>();
        for (i, t) in self.terms.iter().enumerate() {
            let sign = match (i, t.sign) {
                (0, 1) => "",
                (0, _) => "-",
                (_, 1) => " + ",
                _ => " - ",
            };
            write!(f, "{sign}X_{}X_{}", idx(&t.l), idx(&t.j))?;
        }
        Ok(())
    }
}

fn check_relation_shape(l: &[usize], j: &[usize], k: usize) -> Result<()> {
    let (p, q) = (l.len(), j.len());
    if !(p >= q && q >= k && k >= 1) {
        return Err(Error::precondition(format!(
            "need |L| >= |J| >= k >= 1, got |L| = {p}, |J| = {q}, k = {k}"
        )));
    }
    if l.iter().chain(j).any(|&x| x == 0 || x > crate::subspace::MAX_N) {
        return Err(Error::structural("indices must lie in 1..=n"));
    }
    Ok(())
}

fn build_relation(l: &[usize], j: &[usize], k: usize, kind: RelationKind) -> Result<PlueckerRelation> {
    check_relation_shape(l, j, k)?;
    let (p, q) = (l.len(), j.len());
    let in_band = |x: usize| kind == RelationKind::Degenerate && x > q && x <= p;
    let mut terms = Vec::new();
    let mut push = |sign: i8, lt: &[usize], jt: &[usize]| {
        if let (Some((sl, l_sorted)), Some((sj, j_sorted))) = (normalize(lt), normalize(jt)) {
            terms.push(Term {
                sign: sign * sl * sj,
                l: l_sorted,
                j: j_sorted,
            });
        }
    };
    if !j[..k].iter().any(|&x| in_band(x)) {
        push(1, l, j);
    }
    let positions: Vec<usize> = (0..p).collect();
    for r in combinations(&positions, k) {
        if r.iter().any(|&pos| in_band(l[pos])) {
            continue;
        }
        let mut l_new = l.to_vec();
        let mut j_new = j.to_vec();
        for (t, &pos) in r.iter().enumerate() {
            l_new[pos] = j[t];
            j_new[t] = l[pos];
        }
        push(-1, &l_new, &j_new);
    }
    Ok(PlueckerRelation {
        p,
        q,
        k,
        l: l.to_vec(),
        j: j.to_vec(),
        kind,
        terms,
    })
}

/// `X_L X_J - Σ_{r_1<…<r_k} X_{L'} X_{J'}`, where `L'`, `J'` swap the entries
/// of `L` at positions `r_1..r_k` with `j_1..j_k`. Terms are sign-normalized
/// by sorting; terms with a repeated index are dropped.
pub fn classical_relation(l: &[usize], j: &[usize], k: usize) -> Result<PlueckerRelation> {
    build_relation(l, j, k, RelationKind::Classical)
}

/// The sub-sum of [`classical_relation`] whose swapped entries of `L` avoid
/// the band `{q+1, …, p}`; the leading term is kept only if `j_1..j_k` avoid
/// the band as well.
pub fn degenerate_relation(l: &[usize], j: &[usize], k: usize) -> Result<PlueckerRelation> {
    build_relation(l, j, k, RelationKind::Degenerate)
}

/// `Σ sign · X_L(xp) · X_J(xq)` over the relation's terms.
pub fn evaluate_relation(rel: &PlueckerRelation, xp: &PlueckerVector, xq: &PlueckerVector) -> Result<u32> {
    if xp.d != rel.p || xq.d != rel.q {
        return Err(Error::structural(format!(
            "relation expects dimensions ({}, {}), got ({}, {})",
            rel.p, rel.q, xp.d, xq.d
        )));
    }
    if xp.field != xq.field || xp.n != xq.n {
        return Err(Error::structural("vectors live in different spaces"));
    }
    if rel.terms.iter().any(|t| t.l.iter().chain(&t.j).any(|&x| x > xp.n)) {
        return Err(Error::structural(format!("relation indices exceed n = {}", xp.n)));
    }
    let f = xp.field;
    Ok(rel.terms.iter().fold(0, |acc, t| {
        let v = f.mul(xp.get(&t.l), xq.get(&t.j));
        if t.sign > 0 {
            f.add(acc, v)
        } else {
            f.sub(acc, v)
        }
    }))
}

/// All relations of `kind` for the dimension vector `dims` in ambient
/// dimension `n`: for every `p ≥ q` in `dims`, every `k ≤ q`, every sorted
/// `p`-subset `L` and every `J` of size `q` written as a sorted `k`-subset
/// (the swapped entries) followed by the sorted rest. Other orderings of `L`
/// and `J` only change the overall sign.
pub fn relation_generators(
    dims: &[usize],
    n: usize,
    kind: RelationKind,
    budget: usize,
) -> Result<Vec<PlueckerRelation>> {
    check_dims(n, dims)?;
    let universe: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for (a, &p) in dims.iter().enumerate() {
        for &q in &dims[..=a] {
            let ls = combinations(&universe, p);
            let js = combinations(&universe, q);
            for k in 1..=q {
                for l in &ls {
                    for jset in &js {
                        for swapped in combinations(jset, k) {
                            let mut j = swapped.clone();
                            j.extend(jset.iter().filter(|x| !swapped.contains(x)));
                            out.push(build_relation(l, &j, k, kind)?);
                            if out.len() > budget {
                                return Err(Error::range(format!(
                                    "more than {budget} relations for dims {dims:?}, n = {n}"
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of [`verify_ideal_cutout`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CutoutReport {
    pub points_scanned: u64,
    pub relations: usize,
    pub points_by_chain: u64,
    pub points_by_relations: u64,
    pub equal: bool,
    /// Up to five points on which the two descriptions disagree.
    pub mismatches: Vec<Vec<Subspace>>,
}

struct CompiledTerm {
    negative: bool,
    l_mask: usize,
    j_mask: usize,
}

struct CompiledGroup {
    // Indices into dims of the p- and q-dimensional spaces.
    big: usize,
    small: usize,
    relations: Vec<Vec<CompiledTerm>>,
}

/// Scans the whole product `Gr(d_1, n) × … × Gr(d_s, n)` over `F_p` and
/// compares the points where every degenerate relation vanishes with the
/// points satisfying the projection conditions. Set-theoretic only.
pub fn verify_ideal_cutout(dims: &[usize], n: usize, field: PrimeField) -> Result<CutoutReport> {
    check_dims(n, dims)?;
    if n > MAX_FLAG_N {
        return Err(Error::range(format!("n = {n} exceeds {MAX_FLAG_N}")));
    }
    let grass: Vec<Vec<Subspace>> = dims
        .iter()
        .map(|&d| enumerate_grassmannian(d, n, field))
        .collect::<Result<_>>()?;
    let total = grass
        .iter()
        .try_fold(1u64, |acc, g| acc.checked_mul(g.len() as u64))
        .filter(|&t| t <= MAX_CUTOUT_POINTS)
        .ok_or_else(|| {
            Error::range(format!(
                "product of Grassmannians exceeds {MAX_CUTOUT_POINTS} points"
            ))
        })?;
    let coords: Vec<Vec<PlueckerVector>> = grass
        .iter()
        .map(|g| g.iter().map(PlueckerVector::from_subspace).collect())
        .collect::<Result<_>>()?;

    let relations = relation_generators(dims, n, RelationKind::Degenerate, DEFAULT_RELATION_BUDGET)?;
    let relation_count = relations.len();
    let index_of = |d: usize| dims.iter().position(|&x| x == d).expect("dims contain p and q");
    let mut groups: Vec<CompiledGroup> = Vec::new();
    for rel in &relations {
        let (big, small) = (index_of(rel.p), index_of(rel.q));
        let compiled: Vec<CompiledTerm> = rel
            .terms
            .iter()
            .map(|t| CompiledTerm {
                negative: t.sign < 0,
                l_mask: mask_of(&t.l),
                j_mask: mask_of(&t.j),
            })
            .collect();
        match groups.iter_mut().find(|g| g.big == big && g.small == small) {
            Some(g) => g.relations.push(compiled),
            None => groups.push(CompiledGroup {
                big,
                small,
                relations: vec![compiled],
            }),
        }
    }

    let s = dims.len();
    let relations_vanish = |idx: &[usize]| {
        groups.iter().all(|g| {
            let xp = &coords[g.big][idx[g.big]];
            let xq = &coords[g.small][idx[g.small]];
            g.relations.iter().all(|terms| {
                terms.iter().fold(0, |acc, t| {
                    let v = field.mul(xp.get_mask(t.l_mask), xq.get_mask(t.j_mask));
                    if t.negative {
                        field.sub(acc, v)
                    } else {
                        field.add(acc, v)
                    }
                }) == 0
            })
        })
    };

    #[derive(Default)]
    struct Tally {
        by_chain: u64,
        by_relations: u64,
        mismatches: Vec<Vec<Subspace>>,
    }

    let tallies: Vec<Tally> = (0..grass[0].len())
        .into_par_iter()
        .map(|first| {
            let mut tally = Tally::default();
            let mut idx = vec![0usize; s];
            idx[0] = first;
            loop {
                let spaces: Vec<Subspace> = (0..s).map(|t| grass[t][idx[t]].clone()).collect();
                let chain_ok = FlagChain::new(field, n, spaces.clone())
                    .map(|c| c.is_degenerate_flag())
                    .unwrap_or(false);
                let rel_ok = relations_vanish(&idx);
                tally.by_chain += chain_ok as u64;
                tally.by_relations += rel_ok as u64;
                if chain_ok != rel_ok && tally.mismatches.len() < 5 {
                    tally.mismatches.push(spaces);
                }
                // Odometer over positions 1..s.
                let mut t = s;
                loop {
                    if t == 1 {
                        return tally;
                    }
                    t -= 1;
                    idx[t] += 1;
                    if idx[t] < grass[t].len() {
                        break;
                    }
                    idx[t] = 0;
                }
            }
        })
        .collect();

    let mut report = CutoutReport {
        points_scanned: total,
        relations: relation_count,
        points_by_chain: 0,
        points_by_relations: 0,
        equal: true,
        mismatches: Vec::new(),
    };
    for t in tallies {
        report.points_by_chain += t.by_chain;
        report.points_by_relations += t.by_relations;
        for m in t.mismatches {
            if report.mismatches.len() < 5 {
                report.mismatches.push(m);
            }
        }
    }
    report.equal = report.mismatches.is_empty();
    Ok(report)
}
