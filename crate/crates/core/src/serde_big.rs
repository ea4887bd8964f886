//! Serde adapters that render big integers as decimal strings, so JSON
//! consumers never see them as (lossy) floating-point numbers.

use num_bigint::{BigInt, BigUint};
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn biguint<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn bigint<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn biguint_vec<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

pub fn biguint_rows<S: Serializer>(rows: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        let strs: Vec<String> = row.iter().map(ToString::to_string).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}
