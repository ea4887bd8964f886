//! Exact computations around the normalized median Genocchi numbers and the
//! degenerate (abelianized) type-A flag varieties.
//!
//! The crate has two halves that check each other:
//!
//! * the combinatorial side ([`genocchi`], [`dellac`], [`bijections`]):
//!   Seidel and Kreweras triangles, Dellac configurations with their length
//!   statistic, fixed-point tuples and normalized Dumont permutations;
//! * the geometric side ([`field`], [`subspace`], [`flag`], [`pluecker`]):
//!   subspaces of `F_p^n` in canonical echelon form, chains of subspaces that
//!   are compatible under coordinate projections, their cell decomposition,
//!   and the degenerate Plücker relations that cut them out.
//!
//! All indices in the public model are 1-based.

pub mod bijections;
pub mod dellac;
mod error;
pub mod field;
pub mod flag;
pub mod genocchi;
pub mod pluecker;
pub mod serde_big;
pub mod subspace;

pub use bijections::{DumontPermutation, FixedPointTuple};
pub use dellac::DellacConfig;
pub use error::{Error, Result};
pub use field::PrimeField;
pub use flag::FlagChain;
pub use genocchi::{KrewerasTriangle, QPolynomial, SeidelTriangle};
pub use pluecker::{PlueckerRelation, PlueckerVector};
pub use subspace::Subspace;
