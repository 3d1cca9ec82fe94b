//! Exact computation of Picard groups of connected reductive groups over number
//! fields, as the degree-one hypercohomology of the character complex
//! `[X*(T) -> X*(T_sc)]` under a finite Galois quotient.
//!
//! The integer linear algebra in [`exactlin`] is generic over [`exactlin::Scalar`];
//! everything above it runs on arbitrary-precision [`Int`].

pub mod cohom;
pub mod error;
pub mod exactlin;
pub mod gmod;
pub mod hyper;
pub mod picard;
pub mod random;
pub mod rootdata;
pub mod schema;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout the cohomology pipeline.
pub type Int = num_bigint::BigInt;
/// Integer matrix over [`Int`].
pub type Matrix = exactlin::IntMatrix<Int>;
/// Finitely generated abelian group over [`Int`].
pub type AbGroup = exactlin::FinAbGroup<Int>;
/// Homology presentation over [`Int`].
pub type Subquotient = exactlin::SubquotientPresentation<Int>;
/// Induced map on classes over [`Int`].
pub type ClassMap = exactlin::ClassMap<Int>;
