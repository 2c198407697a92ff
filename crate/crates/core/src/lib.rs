//! Exact computations with comagma algebras, slack left Hopf structures,
//! quasi-bialgebras and their module categories, plus the finite-category
//! version of the slack Hopf criterion.
//!
//! All arithmetic is exact, over the rationals or a prime field.

pub mod algebra;
pub mod bialgebra;
pub mod error;
pub mod exactlin;
pub mod fincat;
pub mod fixtures;
pub mod modcat;
pub mod quasihopf;
pub mod report;
pub mod slackhopf;

pub use error::{Error, Result};
pub use report::{Check, ValidationReport};
