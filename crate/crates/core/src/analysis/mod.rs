//! Isomorphism, minors and the classification predicates built on them.

mod classify;
mod eulerian;
mod iso;
mod minimal;
mod minor;

pub use classify::{is_cographic, is_graphic, Classification, Forbidden, ForbiddenCatalog, Obstruction, SPLIT_TARGETS};
pub use eulerian::{eulerian_report, is_eulerian, EulerianReport};
pub use iso::{check_bijection, is_isomorphic, ISO_LIMIT};
pub(crate) use iso::{find_isomorphism, CircuitData};
pub use minimal::{check_form, verify_minimal, MinimalEvidence, SplitForm};
pub use minor::{has_minor, MinorWitness, MINOR_LIMIT};
