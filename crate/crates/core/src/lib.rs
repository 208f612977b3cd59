//! Exact operator algebra on bosonic Fock spaces.
//!
//! The crate models the cohomology of instanton moduli spaces through its
//! free-field description: r copies of a Heisenberg algebra acting on
//! polynomial rings, Virasoro and vertex-operator charges built from them,
//! the reflection R-matrix intertwining two Virasoro actions, and the spin
//! chain and symmetric-function dictionaries used to cross-check it. All
//! arithmetic is over the rationals or rational functions of one variable.

pub mod fock;
pub mod gamma;
pub mod grassmann;
pub mod linalg;
pub mod partitions;
pub mod rmatrix;
pub mod scalar;
pub mod suites;
pub mod symfunc;
pub mod vertexops;
pub mod virasoro;

pub use fock::{FockVector, GradedOperator, Insertion};
pub use linalg::Matrix;
pub use partitions::{MultiPartition, Partition};
pub use scalar::{sample_params, Field, Params, Poly, RatFunc, Scalar, DEGREE_CAP};

#[derive(Clone, Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameter sampling gave up after {0} attempts")]
    Sampling(usize),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("singular matrix")]
    Singular,
    #[error("rational reconstruction failed")]
    Reconstruction,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}
