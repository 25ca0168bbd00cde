//! Exact point-line constructions and invariants of plane curve arrangements.

pub mod arrangement;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod freeness;
pub mod io;
pub mod monodromy;
pub mod pencil;
pub mod projgeom;
pub mod repro;
pub mod rigidity;
pub mod unexpected;

pub use error::{Error, Result};
