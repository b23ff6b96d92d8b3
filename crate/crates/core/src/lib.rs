//! Exact computation of barred preferential arrangement numbers
//! `H_n(lambda, beta, gamma) = n! [x^n] e^{gamma x} / (2 - e^{beta x})^lambda`,
//! generalized Stirling and Bell numbers, and the structures they count.
//!
//! Every number is computed by several independent algorithms and checked
//! against brute-force enumeration on small inputs.

pub mod asymptotics;
pub mod bfile;
pub mod egf;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod identities;
pub mod numbers;
pub mod numeric;
pub mod par;
pub mod stirling;

pub use enumerate::{BpaStructure, EnumerationBudget};
pub use error::{Error, Result};
pub use numbers::{compute, HTable, Method, Params};
pub use numeric::CountValue;
