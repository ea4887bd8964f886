//! Torus fixed-point tuples and normalized Dumont permutations of the second
//! kind, each in explicit bijection with Dellac configurations.

mod dumont;
mod tuple;

pub use dumont::{
    dellac_to_dumont, dumont_to_dellac, enumerate_dumont, validate_dumont, DumontPermutation,
    DumontViolation,
};
pub(crate) use tuple::check_dims;
pub use tuple::{
    complete_dims, dellac_to_tuple, enumerate_tuples, tuple_to_dellac, validate_tuple,
    FixedPointTuple, TupleViolation,
};

/// All `k`-subsets of the sorted slice `pool`, lexicographically.
pub(crate) fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..pool.len() {
            if pool.len() - i < need {
                break;
            }
            cur.push(pool[i]);
            go(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= pool.len() {
        go(pool, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::combinations;

    #[test]
    fn combinations_lex() {
        assert_eq!(
            combinations(&[1, 2, 3, 4], 2),
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(combinations(&[1, 2], 0), vec![Vec::<usize>::new()]);
        assert!(combinations(&[1, 2], 3).is_empty());
    }
}
