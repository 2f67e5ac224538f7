//! Exact osculating invariants of parametrized projective varieties:
//! osculating dimensions, Laplace equations, fundamental forms and their
//! apolar systems, Jacobian systems, Gauss maps and osculating defects.

pub mod catalog;
pub mod cli;
pub mod defects;
pub mod error;
pub mod exact;
pub mod forms;
pub mod jets;
pub mod sampling;

pub use catalog::{catalog_expected, catalog_get, catalog_names, CatalogEntry};
pub use defects::{Theorem, TheoremVerdict};
pub use error::{Error, Result};
pub use jets::Parametrization;
pub use sampling::{Mode, Options};
