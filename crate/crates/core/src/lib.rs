//! Rank-metric codes over small finite fields.
//!
//! Vector codes over GF(q^m) ([`gabidulin`]) and matrix codes over GF(q)
//! ([`delsarte`]), tied together by basis expansion ([`basis`]). Every
//! decision (LCD, MRD, optimal anticode) is exact: arithmetic is tabulated
//! and minimum ranks come from full codeword enumeration.

pub mod basis;
pub mod delsarte;
pub mod error;
pub mod field;
pub mod gabidulin;
pub mod finite_field;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use field::FieldOps;
pub use finite_field::{make_tower, BaseField, Elem, FieldElement, FieldTower, Scalar, TowerDescriptor};
