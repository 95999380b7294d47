//! Binary matroids over GF(2) with splitting and element-splitting
//! operations, minor search, and exhaustive verification campaigns over
//! small graphs.

pub mod analysis;
pub mod campaign;
pub mod catalog;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod matroid;
pub mod par;
pub mod splitting;

pub use campaign::{Verdict, VerificationReport};
pub use error::{Error, Result};
pub use gf2::{GF2Matrix, RowEchelon};
pub use matroid::{BinaryMatroid, CircuitFamily};
pub use par::Execution;
