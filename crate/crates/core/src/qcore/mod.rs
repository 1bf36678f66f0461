//! Complex dense linear algebra for few-qubit systems.
//!
//! Everything here is a pure function over immutable values: states and
//! matrices are validated on construction and never mutated in place.

mod eigen;
mod matrix;
mod measure;
mod operator;
pub mod rng;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, EIGEN_MAX_DIM, HERMITIAN_TOL};
pub use matrix::{density, partial_trace, CMatrix, DensityMatrix};
pub use measure::{
    measurement_branches, outcome_probabilities, projective_measure, MeasurementOutcome,
};
pub use operator::{apply_local, Operator, UNITARY_TOL};
pub use state::{inner, tensor, StateVector, NORM_TOL};

pub(crate) use eigen::sqrt_psd;
