//! Exact arithmetic: number fields, polynomials, linear algebra and modular tools.

pub mod extension;
pub mod field;
pub mod linalg;
pub mod modp;
pub mod parse;
pub mod poly;

pub use field::{FieldElement, NumberField};
pub use poly::{MultiPoly, Var};
