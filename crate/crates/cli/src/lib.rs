//! Command-line front end for `genreg`: JSON in, one JSON verdict out, and
//! the theorem-verification suites.

pub mod commands;
pub mod suites;

pub use commands::{run, Outcome};
