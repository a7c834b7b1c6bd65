//! Generalized inverses of morphisms and relative regularity, decided
//! exactly in concrete categories: vector spaces over Q and F_p, finitely
//! presented modules over Z and Z/n, finite sets, finite graded algebras
//! and finite-dimensional coalgebras.

pub mod error;
pub mod exact;
pub mod matops;
pub mod abcat;
pub mod regular;
pub mod graded;
pub mod coalg;

pub use error::{Error, Result};
pub use exact::{Ring, Scalar};
pub use matops::ExactMatrix;
