//! Exact computation of local representation densities of hermitian lattices
//! over unramified quadratic extensions of p-adic fields.
//!
//! Three independent computation paths are implemented and cross-checked:
//! brute-force congruence counting over Galois rings, closed formulas for
//! every named constant, and overlattice enumeration. All arithmetic is
//! exact: arbitrary-precision rationals at a fixed prime power q, or rational
//! functions in an indeterminate for symbolic identity checking.

pub mod closedform;
pub mod density;
pub mod error;
pub mod exact;
pub mod gring;
pub mod herm;
pub mod lattice;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use exact::{ExactScalar, QMode, XPolynomial};
pub use herm::{EElem, EFieldCtx, HermMatrix, Partition, YClass};
