use degenflag::pluecker::{
    classical_relation, degenerate_relation, evaluate_relation, relation_generators, verify_ideal_cutout,
    RelationKind,
};
use degenflag::subspace::enumerate_grassmannian;
use degenflag::{FlagChain, PlueckerVector, PrimeField, Subspace};
use proptest::prelude::*;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn mat_mul(f: PrimeField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|c| row.iter().zip(b).fold(0, |acc, (&x, brow)| f.add(acc, f.mul(x, brow[c]))))
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn change_of_basis_scales_by_determinant(
        p in prop::sample::select(vec![2u32, 3, 5, 7]),
        basis in prop::collection::vec(prop::collection::vec(0u32..7, 5), 2),
        g in prop::collection::vec(prop::collection::vec(0u32..7, 2), 2),
    ) {
        let f = field(p);
        let basis: Vec<Vec<u32>> = basis.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        let g: Vec<Vec<u32>> = g.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        let x = PlueckerVector::from_basis(f, 5, &basis).unwrap();
        let y = PlueckerVector::from_basis(f, 5, &mat_mul(f, &g, &basis)).unwrap();
        let det = f.det(g.clone());
        for i in 1..=5 {
            for j in i + 1..=5 {
                prop_assert_eq!(y.get(&[i, j]), f.mul(det, x.get(&[i, j])));
            }
        }
    }

    #[test]
    fn classical_relations_vanish_on_grassmannians(
        p in prop::sample::select(vec![2u32, 3, 5]),
        rows in prop::collection::vec(prop::collection::vec(0u32..5, 5), 3),
        l in prop::sample::subsequence(vec![1usize, 2, 3, 4, 5], 3),
        j in prop::sample::subsequence(vec![1usize, 2, 3, 4, 5], 3),
        k in 1usize..=3,
    ) {
        let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        let v = Subspace::span(field(p), 5, &rows).unwrap();
        prop_assume!(v.dim() == 3);
        let x = PlueckerVector::from_subspace(&v).unwrap();
        let rel = classical_relation(&l, &j, k).unwrap();
        prop_assert_eq!(evaluate_relation(&rel, &x, &x).unwrap(), 0);
    }
}

#[test]
fn degenerate_relations_vanish_on_chains() {
    let f = field(3);
    let dims = [1, 2, 3];
    let rels = relation_generators(&dims, 4, RelationKind::Degenerate, 100_000).unwrap();
    for chain in degenflag::flag::enumerate_chains(&dims, 4, f).unwrap() {
        let xs: Vec<PlueckerVector> = chain.spaces().iter().map(|v| PlueckerVector::from_subspace(v).unwrap()).collect();
        for rel in &rels {
            let a = dims.iter().position(|&d| d == rel.p).unwrap();
            let b = dims.iter().position(|&d| d == rel.q).unwrap();
            assert_eq!(evaluate_relation(rel, &xs[a], &xs[b]).unwrap(), 0, "{rel} on {chain}");
        }
    }
}

#[test]
fn degenerate_relation_detects_non_chain() {
    let f = field(2);
    let v1 = Subspace::coordinate(f, 4, &[4]).unwrap();
    let v3 = Subspace::coordinate(f, 4, &[1, 2, 3]).unwrap();
    let chain = FlagChain::new(f, 4, vec![v1.clone(), v3.clone()]).unwrap();
    assert!(!chain.is_degenerate_flag());
    let rels = relation_generators(&[1, 3], 4, RelationKind::Degenerate, 10_000).unwrap();
    let x1 = PlueckerVector::from_subspace(&v1).unwrap();
    let x3 = PlueckerVector::from_subspace(&v3).unwrap();
    assert!(rels
        .iter()
        .filter(|r| r.p == 3 && r.q == 1)
        .any(|r| evaluate_relation(r, &x3, &x1).unwrap() != 0));
}

#[test]
fn equal_sizes_agree_for_all_generators() {
    let c = relation_generators(&[2], 4, RelationKind::Classical, 10_000).unwrap();
    let d = relation_generators(&[2], 4, RelationKind::Degenerate, 10_000).unwrap();
    assert_eq!(c.len(), d.len());
    for (a, b) in c.iter().zip(&d) {
        assert_eq!(a.terms, b.terms);
    }
}

#[test]
fn self_swap_vanishes_on_single_subspaces() {
    let f = field(3);
    let rel = classical_relation(&[1, 3], &[1, 3], 2).unwrap();
    for v in enumerate_grassmannian(2, 4, f).unwrap() {
        let x = PlueckerVector::from_subspace(&v).unwrap();
        assert_eq!(evaluate_relation(&rel, &x, &x).unwrap(), 0);
    }
    let rel = degenerate_relation(&[1, 2, 4], &[3, 4], 1).unwrap();
    assert!(rel.terms.iter().all(|t| t.l.len() == 3 && t.j.len() == 2));
}

#[test]
fn cutout_partial_and_complete_n4() {
    for p in [2, 3] {
        for dims in [vec![1, 3], vec![1, 2, 3]] {
            let r = verify_ideal_cutout(&dims, 4, field(p)).unwrap();
            assert!(r.equal, "dims {dims:?} p {p}: {r:?}");
            assert_eq!(r.points_by_chain, r.points_by_relations);
        }
    }
}
