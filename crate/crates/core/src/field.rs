//! Arithmetic in `F_p` for a prime `p ≤ 2^16`.

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::range(format!("p = {p} exceeds 2^16")));
        }
        if !is_prime(p) {
            return Err(Error::precondition(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduces a signed integer into `0..p`.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Determinant of a square matrix given as rows.
    pub fn det(self, mut m: Vec<Vec<u32>>) -> u32 {
        let size = m.len();
        let mut det = 1;
        for col in 0..size {
            let Some(pivot) = (col..size).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            if pivot != col {
                m.swap(pivot, col);
                det = self.neg(det);
            }
            det = self.mul(det, m[col][col]);
            let inv = self.inv(m[col][col]);
            for r in col + 1..size {
                let factor = self.mul(m[r][col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..size {
                    let t = self.mul(factor, m[col][c]);
                    m[r][c] = self.sub(m[r][c], t);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites_and_large() {
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(65_536).is_err());
        assert!(PrimeField::new(65_537).is_err());
        assert!(PrimeField::new(65_521).is_ok());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn determinant() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.det(vec![vec![1, 2], vec![3, 4]]), f.from_i64(-2));
        assert_eq!(f.det(vec![vec![0, 1], vec![1, 0]]), 6);
        assert_eq!(f.det(vec![vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(f.det(vec![]), 1);
    }

    proptest! {
        #[test]
        fn field_axioms(p in prop::sample::select(vec![2u32, 3, 5, 7, 13, 65_521]),
                        a in 0u32..65_521, b in 0u32..65_521, c in 0u32..65_521) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (a % p, b % p, c % p);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }
}
