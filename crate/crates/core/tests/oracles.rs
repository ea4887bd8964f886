//! Brute-force cross-checks of the library against naive re-implementations.

use std::collections::{BTreeMap, BTreeSet};

use degenflag::bijections::{
    dellac_to_dumont, dellac_to_tuple, enumerate_dumont, enumerate_tuples, dumont_to_dellac, tuple_to_dellac,
};
use degenflag::dellac::enumerate_dellac;
use degenflag::flag::{
    cell_point_counts, count_points, full_flag_cell_label, grassmann_cell_dimension, grassmann_cell_label,
};
use degenflag::genocchi::{kreweras_triangle, normalized_h, poincare_polynomial};
use degenflag::subspace::{enumerate_grassmannian, gaussian_binomial};
use degenflag::{FixedPointTuple, FlagChain, PrimeField, Subspace};
use num_bigint::BigUint;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// Every assignment of two rows of `1..2n` to each column, kept when the
/// three defining conditions hold.
fn naive_dellac(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (1..=2 * n)
        .flat_map(|a| (a + 1..=2 * n).map(move |b| (a, b)))
        .collect();
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; n];
    loop {
        let mut boxes = Vec::new();
        for (c, &i) in choice.iter().enumerate() {
            boxes.push((c + 1, pairs[i].0));
            boxes.push((c + 1, pairs[i].1));
        }
        let rows: BTreeSet<usize> = boxes.iter().map(|b| b.1).collect();
        if rows.len() == 2 * n && boxes.iter().all(|&(l, j)| l <= j && j <= n + l) {
            boxes.sort();
            out.insert(boxes);
        }
        let mut t = 0;
        loop {
            if t == n {
                return out;
            }
            choice[t] += 1;
            if choice[t] < pairs.len() {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
    }
}

fn naive_length(boxes: &[(usize, usize)]) -> usize {
    let mut count = 0;
    for &(l1, j1) in boxes {
        for &(l2, j2) in boxes {
            if l1 < l2 && j1 > j2 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn dellac_matches_naive_search() {
    for n in 1..=4 {
        let naive = naive_dellac(n);
        let fast: BTreeSet<Vec<(usize, usize)>> =
            enumerate_dellac(n).unwrap().iter().map(|d| d.boxes()).collect();
        assert_eq!(naive, fast, "n = {n}");
        assert_eq!(BigUint::from(naive.len()), normalized_h(n).unwrap());
        for d in enumerate_dellac(n).unwrap() {
            assert_eq!(d.length(), naive_length(&d.boxes()));
        }
    }
}

#[test]
fn poincare_matches_naive_lengths() {
    for n in 1..=4 {
        let mut coeffs = vec![0u64; n * n];
        for boxes in naive_dellac(n) {
            coeffs[naive_length(&boxes)] += 1;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let got: Vec<BigUint> = poincare_polynomial(n).unwrap().coeffs().to_vec();
        let want: Vec<BigUint> = coeffs.into_iter().map(BigUint::from).collect();
        assert_eq!(got, want, "n = {n}");
    }
}

fn is_dumont(s: &[usize]) -> bool {
    let m = s.len();
    let pos_of = |v: usize| s.iter().position(|&x| x == v).unwrap() + 1;
    (1..=m).all(|i| if i % 2 == 0 { s[i - 1] < i } else { s[i - 1] > i })
        && (1..m / 2).all(|k| pos_of(2 * k) < pos_of(2 * k + 1))
}

#[test]
fn dumont_matches_filtered_symmetric_group() {
    for n in 1..=4 {
        let mut perm: Vec<usize> = (1..=2 * n + 2).collect();
        let mut naive = Vec::new();
        loop {
            if is_dumont(&perm) {
                naive.push(perm.clone());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let fast: Vec<Vec<usize>> = enumerate_dumont(n).unwrap().iter().map(|p| p.values().to_vec()).collect();
        assert_eq!(naive, fast, "n = {n}");
        for p in enumerate_dumont(n).unwrap() {
            let d = dumont_to_dellac(&p).unwrap();
            assert_eq!(dellac_to_dumont(&d), p);
        }
    }
}

#[test]
fn refinements_match_kreweras() {
    let kr = kreweras_triangle(6).unwrap();
    for n in 1..=6 {
        let mut by_dellac = vec![0u64; n];
        let mut by_tuple = vec![0u64; n];
        for d in enumerate_dellac(n).unwrap() {
            by_dellac[d.refinement_stat() - 1] += 1;
            // min{j : 1 ∈ I^j}, with I^n = {1..n} as a sentinel.
            let t = dellac_to_tuple(&d);
            let k = (1..n).find(|&j| t.subset(j).contains(&1)).unwrap_or(n);
            by_tuple[k - 1] += 1;
        }
        let want: Vec<u64> = kr.row(n).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(by_dellac, want, "n = {n}");
        assert_eq!(by_tuple, want, "n = {n}");
    }
    for n in 1..=5 {
        let mut by_first = vec![0u64; n];
        for p in enumerate_dumont(n).unwrap() {
            by_first[p.value(1) / 2 - 1] += 1;
            assert_eq!(dumont_to_dellac(&p).unwrap().refinement_stat(), p.value(1) / 2);
        }
        let want: Vec<u64> = kr.row(n).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(by_first, want, "n = {n}");
    }
}

#[test]
fn tuple_bijection_round_trips() {
    for n in 1..=6 {
        let tuples = enumerate_tuples(n, &(1..n).collect::<Vec<_>>()).unwrap();
        let images: BTreeSet<_> = tuples.iter().map(|t| tuple_to_dellac(t).unwrap()).collect();
        let dellac: BTreeSet<_> = enumerate_dellac(n).unwrap().into_iter().collect();
        assert_eq!(images, dellac, "n = {n}");
        for t in &tuples {
            assert_eq!(&dellac_to_tuple(&tuple_to_dellac(t).unwrap()), t);
        }
    }
}

#[test]
fn fixed_point_criterion_on_coordinate_chains() {
    // Every tuple of coordinate subspaces: the chain is on the variety
    // exactly when the tuple condition holds.
    for n in 2..=5 {
        let dims: Vec<usize> = (1..n).collect();
        let levels: Vec<Vec<Vec<usize>>> = dims.iter().map(|&d| subsets_of(n, d)).collect();
        let mut idx = vec![0usize; dims.len()];
        let mut on_variety = BTreeSet::new();
        loop {
            let subsets: Vec<Vec<usize>> = idx.iter().zip(&levels).map(|(&i, l)| l[i].clone()).collect();
            let t = FixedPointTuple::new(n, dims.clone(), subsets).unwrap();
            let chain = FlagChain::coordinate(field(2), &t).unwrap();
            assert_eq!(chain.is_degenerate_flag(), t.is_valid(), "{t}");
            if t.is_valid() {
                on_variety.insert(t);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < levels[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        assert_eq!(BigUint::from(on_variety.len()), normalized_h(n).unwrap());
    }
}

#[test]
fn partial_fixed_points_n4_dims_1_3() {
    let tuples = enumerate_tuples(4, &[1, 3]).unwrap();
    assert_eq!(tuples.len(), 14);
    let listed: BTreeSet<_> = tuples.into_iter().collect();
    for a in subsets_of(4, 1) {
        for b in subsets_of(4, 3) {
            let t = FixedPointTuple::new(4, vec![1, 3], vec![a.clone(), b]).unwrap();
            let chain = FlagChain::coordinate(field(3), &t).unwrap();
            assert_eq!(chain.is_degenerate_flag(), listed.contains(&t));
        }
    }
}

#[test]
fn grassmannian_cells_sum_to_gaussian_binomial() {
    for p in [2u32, 3] {
        for n in 1..=6 {
            for d in 0..=n {
                let all = enumerate_grassmannian(d, n, field(p)).unwrap();
                assert_eq!(BigUint::from(all.len()), gaussian_binomial(n, d, p as u64));
                let mut by_label: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
                for v in &all {
                    *by_label.entry(grassmann_cell_label(v)).or_default() += 1;
                }
                let labels = subsets_of(n, d);
                assert_eq!(by_label.len(), labels.len());
                for l in labels {
                    let dim = grassmann_cell_dimension(&l, n).unwrap() as u32;
                    assert_eq!(by_label[&l], (p as u64).pow(dim), "p={p} n={n} L={l:?}");
                }
            }
        }
    }
}

/// `V_i ⊆ V_{i+1}` after zeroing coordinates `d_i+1..d_{i+1}`, for consecutive
/// pairs, computed from spanning vectors rather than the library's projection.
fn naive_chain_check(spaces: &[Subspace], dims: &[usize]) -> bool {
    spaces.windows(2).zip(dims.windows(2)).all(|(v, d)| {
        v[0].rows().iter().all(|row| {
            let mut r = row.clone();
            for x in &mut r[d[0]..d[1]] {
                *x = 0;
            }
            v[1].contains_vector(&r)
        })
    })
}

/// Same condition for every pair `i < j`.
fn naive_all_pairs(spaces: &[Subspace], dims: &[usize]) -> bool {
    (0..spaces.len()).all(|a| {
        (a + 1..spaces.len()).all(|b| {
            spaces[a].rows().iter().all(|row| {
                let mut r = row.clone();
                for x in &mut r[dims[a]..dims[b]] {
                    *x = 0;
                }
                spaces[b].contains_vector(&r)
            })
        })
    })
}

fn product_scan(dims: &[usize], n: usize, p: u32, mut visit: impl FnMut(&[Subspace])) {
    let grass: Vec<Vec<Subspace>> = dims.iter().map(|&d| enumerate_grassmannian(d, n, field(p)).unwrap()).collect();
    let mut idx = vec![0usize; dims.len()];
    loop {
        let spaces: Vec<Subspace> = idx.iter().zip(&grass).map(|(&i, g)| g[i].clone()).collect();
        visit(&spaces);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < grass[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn consecutive_and_all_pairs_conditions_agree() {
    for (n, p) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)] {
        let dims: Vec<usize> = (1..n).collect();
        let mut on = 0u64;
        product_scan(&dims, n, p, |spaces| {
            let chain = FlagChain::new(field(p), n, spaces.to_vec()).unwrap();
            let consecutive = naive_chain_check(spaces, &dims);
            assert_eq!(consecutive, naive_all_pairs(spaces, &dims));
            assert_eq!(chain.is_degenerate_flag(), consecutive);
            assert_eq!(chain.satisfies_all_pairs(), consecutive);
            on += consecutive as u64;
        });
        let want = poincare_polynomial(n).unwrap().eval_u64(p as u64);
        assert_eq!(BigUint::from(on), want, "n={n} p={p}");
        assert_eq!(count_points(&dims, n, field(p)).unwrap(), want);
    }
}

#[test]
fn partial_flag_counts_match_naive_scan() {
    for (n, p, dims) in [(4, 2, vec![1, 3]), (4, 3, vec![2]), (5, 2, vec![2, 3]), (4, 2, vec![1, 2])] {
        let mut on = 0u64;
        product_scan(&dims, n, p, |spaces| on += naive_chain_check(spaces, &dims) as u64);
        assert_eq!(count_points(&dims, n, field(p)).unwrap(), BigUint::from(on));
    }
}

#[test]
fn cells_have_dellac_length_dimension() {
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let cells = cell_point_counts(&(1..n).collect::<Vec<_>>(), n, field(p)).unwrap();
        assert_eq!(BigUint::from(cells.len()), normalized_h(n).unwrap());
        let mut total = BigUint::from(0u32);
        for c in &cells {
            let d = tuple_to_dellac(&c.tuple).unwrap();
            assert_eq!(c.dellac_length, Some(d.length()));
            assert_eq!(c.count, BigUint::from(p).pow(d.length() as u32));
            total += &c.count;
        }
        assert_eq!(total, poincare_polynomial(n).unwrap().eval_u64(p as u64));
    }
}

#[test]
fn full_flag_labels_are_fixed_points() {
    let dims = vec![1, 2];
    for chain in degenflag::flag::enumerate_chains(&dims, 3, field(3)).unwrap() {
        let t = full_flag_cell_label(&chain).unwrap();
        assert!(t.is_valid());
    }
}

#[test]
fn disputed_cell_has_2_pow_10_points() {
    let label = vec![2, 3, 6, 7];
    assert_eq!(grassmann_cell_dimension(&label, 9).unwrap(), 10);
    let count = degenflag::subspace::GrassmannianIter::new(4, 9, field(2))
        .unwrap()
        .filter(|v| grassmann_cell_label(v) == label)
        .count();
    assert_eq!(count, 1 << 10);
}
