//! Numerical verification toolkit for the global de Finetti representation
//! of permutation-invariant quantum states: symmetric-subspace bases,
//! i.i.d. projector families, exact Haar twirls via the permutation
//! commutant, the decomposition-defect pipeline with its error bound, a
//! catalog of boundary examples, and the extensive-quantity trend checks.
//!
//! Everything that can be computed exactly is (twirls, γ, Haar moments);
//! quadrature and optimizer outputs are always labeled as estimates and
//! carry convergence diagnostics.

extern crate blas_src;

pub mod catalog;
pub mod channel;
pub mod config;
pub mod error;
pub mod iid;
pub mod linalg;
pub mod optim;
pub mod perm;
pub mod sym;
pub mod theorem;
pub mod twirl;

pub use config::{RunConfig, Tolerances};
pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, DensityOperator, Projector, PureVector};
pub use theorem::{verify_theorem, DecompositionReport, TheoremParams};
