//! Numerical toolkit for complete Pick kernel spaces on finite point sets.
//!
//! A kernel on n points is an n x n strictly positive definite Hermitian
//! matrix; the reproducing kernel space it generates, its multiplier
//! algebra, contractively included subspaces, and transfer-function
//! realizations all become finite-dimensional objects. Each structural
//! statement about these spaces (Pick factorization, Beurling-type
//! representation of invariant subspaces, complementary-space
//! characterizations, Gleason-type identities) is realized here as a
//! machine-checkable identity or inequality with explicit tolerances.

pub mod beurling;
pub mod embed;
pub mod error;
pub mod io;
pub mod mult;
pub mod numlin;
pub mod pick;
pub mod realize;
pub mod report;
pub mod rkhs;
pub mod subspace;
pub mod suite;

pub use error::{Error, Result};
pub use numlin::{CMatrix, Tolerances};
