//! Exact integer linear algebra over any [`Scalar`] ring.

mod finab;
mod homology;
mod matrix;
mod scalar;
mod smith;

pub use finab::FinAbGroup;
pub use homology::{homology_at, ClassMap, SubquotientPresentation};
pub use matrix::IntMatrix;
pub use scalar::{ext_gcd, Scalar};
pub use smith::{cokernel, column_span_basis, kernel_basis, rank, snf, solve_in_lattice, LatticeSolver, SmithForm};
pub(crate) use smith::{smith, Track};
