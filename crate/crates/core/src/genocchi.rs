//! Seidel and Kreweras triangles, the (normalized) median Genocchi numbers,
//! and the length-generating polynomials `P_n(q)` over Dellac configurations.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::dellac::enumerate_dellac;
use crate::error::{Error, Result};
use crate::serde_big;

/// Rows of the Seidel triangle; row `m` (1-based) holds
/// `G_{1,m}, …, G_{⌊(m+1)/2⌋,m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl SeidelTriangle {
    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Row `m`, 1-based.
    pub fn row(&self, m: usize) -> &[BigUint] {
        &self.rows[m - 1]
    }

    /// `G_{k,m}`, both 1-based.
    pub fn get(&self, k: usize, m: usize) -> &BigUint {
        &self.rows[m - 1][k - 1]
    }
}

impl Serialize for SeidelTriangle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_big::biguint_rows(&self.rows, s)
    }
}

/// Generates the first `rows` rows from `G_{1,1} = 1` by alternating
/// suffix sums (even rows) and prefix sums (odd rows).
pub fn seidel_triangle(rows: usize) -> Result<SeidelTriangle> {
    if rows == 0 {
        return Err(Error::precondition("rows must be at least 1"));
    }
    let mut out: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for m in 2..=rows {
        let prev = &out[m - 2];
        let width = m.div_ceil(2);
        let mut row = Vec::with_capacity(width);
        if m % 2 == 0 {
            // G_{k,m} = sum_{i >= k} G_{i,m-1}
            let mut acc = BigUint::zero();
            for v in prev.iter().rev() {
                acc += v;
                row.push(acc.clone());
            }
            row.reverse();
        } else {
            // G_{k,m} = sum_{i <= k} G_{i,m-1}; the last entry repeats the full sum.
            let mut acc = BigUint::zero();
            for v in prev {
                acc += v;
                row.push(acc.clone());
            }
            row.push(acc);
        }
        debug_assert_eq!(row.len(), width);
        out.push(row);
    }
    Ok(SeidelTriangle { rows: out })
}

/// Median Genocchi number `G_{1,2n}`.
pub fn median_genocchi(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let t = seidel_triangle(2 * n)?;
    Ok(t.get(1, 2 * n).clone())
}

/// Normalized median Genocchi number `h_n = G_{1,2n+2} / 2^n`.
///
/// The division is exact; a nonzero remainder is reported as an internal
/// consistency failure.
pub fn normalized_h(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let t = seidel_triangle(2 * n + 2)?;
    normalize(t.get(1, 2 * n + 2), n)
}

/// `h_1, …, h_max_n` from a single triangle.
pub fn normalized_h_sequence(max_n: usize) -> Result<Vec<BigUint>> {
    if max_n == 0 {
        return Err(Error::precondition("max_n must be at least 1"));
    }
    let t = seidel_triangle(2 * max_n + 2)?;
    (1..=max_n)
        .map(|n| normalize(t.get(1, 2 * n + 2), n))
        .collect()
}

fn normalize(g: &BigUint, n: usize) -> Result<BigUint> {
    let low_mask = (BigUint::one() << n) - BigUint::one();
    if !(g & &low_mask).is_zero() {
        return Err(Error::internal(format!(
            "G_(1,{}) = {g} is not divisible by 2^{n}",
            2 * n + 2
        )));
    }
    Ok(g >> n)
}

/// Rows of the Kreweras triangle; row `n` is `h_{n,1}, …, h_{n,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrewerasTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl KrewerasTriangle {
    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n - 1]
    }

    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        &self.rows[n - 1][k - 1]
    }
}

impl Serialize for KrewerasTriangle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_big::biguint_rows(&self.rows, s)
    }
}

/// Generates the first `rows` rows of the Kreweras triangle:
///
/// ```text
/// h_{n,1} = h_{n-1,1} + … + h_{n-1,n-1}
/// h_{n,2} = 2 h_{n,1} - h_{n-1,1}
/// h_{n,k} = 2 h_{n,k-1} - h_{n,k-2} - h_{n-1,k-2} - h_{n-1,k-1}   (k ≥ 3)
/// ```
pub fn kreweras_triangle(rows: usize) -> Result<KrewerasTriangle> {
    if rows == 0 {
        return Err(Error::precondition("rows must be at least 1"));
    }
    let mut signed: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 2..=rows {
        let prev = &signed[n - 2];
        let mut row: Vec<BigInt> = Vec::with_capacity(n);
        row.push(prev.iter().sum());
        row.push(2 * &row[0] - &prev[0]);
        for k in 3..=n {
            let v = 2 * &row[k - 2] - &row[k - 3] - &prev[k - 3] - &prev[k - 2];
            row.push(v);
        }
        signed.push(row);
    }
    let rows = signed
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(k, v)| {
                    v.to_biguint().ok_or_else(|| {
                        Error::internal(format!("h_({},{}) = {v} is negative", i + 1, k + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KrewerasTriangle { rows })
}

/// Polynomial in `q` with nonnegative integer coefficients, dense,
/// `coeffs[m]` being the coefficient of `q^m`. Trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigUint>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> BigUint {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| {
            acc * x + BigInt::from_biguint(Sign::Plus, c.clone())
        })
    }

    pub fn eval_u64(&self, x: u64) -> BigUint {
        let x = BigUint::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * &x + c)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| match m {
                0 => c.to_string(),
                1 if c.is_one() => "q".to_string(),
                1 => format!("{c}q"),
                _ if c.is_one() => format!("q^{m}"),
                _ => format!("{c}q^{m}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [BigUint]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serde_big::biguint_vec(self.0, s)
            }
        }
        let mut st = s.serialize_struct("QPolynomial", 1)?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

/// Horner evaluation of `poly` at `x`.
pub fn eval_qpoly(poly: &QPolynomial, x: &BigInt) -> BigInt {
    poly.eval(x)
}

/// `P_n(q) = Σ_{D ∈ DC_n} q^{l(D)}`, computed by enumerating `DC_n`.
pub fn poincare_polynomial(n: usize) -> Result<QPolynomial> {
    let configs = enumerate_dellac(n)?;
    let mut counts: Vec<u64> = Vec::new();
    for d in &configs {
        let len = d.length();
        if counts.len() <= len {
            counts.resize(len + 1, 0);
        }
        counts[len] += 1;
    }
    Ok(QPolynomial::from_u64s(&counts))
}
