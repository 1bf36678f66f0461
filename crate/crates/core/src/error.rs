use thiserror::Error;

/// Errors produced by state construction, linear algebra and protocol runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("a state needs at least one qubit")]
    NoQubits,

    #[error("{num_qubits} qubit(s) require {expected} amplitudes, got {actual}")]
    AmplitudeCount {
        num_qubits: usize,
        expected: usize,
        actual: usize,
    },

    #[error("state norm² deviates from 1 by {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix data has {actual} entries, expected {expected}")]
    MatrixShape { expected: usize, actual: usize },

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit system")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndexOutOfRange { index: usize, dim: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("operator dimension {op_dim} does not fit {targets} target qubit(s)")]
    OperatorDimension { op_dim: usize, targets: usize },

    #[error("operator is not unitary (U†U deviates from I by {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:.3e}, tolerance {tol:.1e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("eigensolver supports dimensions up to {max}, got {dim}")]
    EigenTooLarge { dim: usize, max: usize },

    #[error("Jacobi rotations did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("trace deviates from 1 by {deviation:.3e}")]
    TraceNotOne { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("partial trace must keep a nonempty proper subset of qubits (kept {kept} of {total})")]
    TrivialPartition { kept: usize, total: usize },

    #[error("basis vectors are not orthonormal (deviation {deviation:.3e}, tolerance {tol:.1e})")]
    NotOrthonormal { deviation: f64, tol: f64 },

    #[error("basis has {have} vectors but the measured subspace needs {need}")]
    BasisIncomplete { have: usize, need: usize },

    #[error("measurement basis covers qubits {basis:?} but the protocol measures {expected:?}")]
    BasisSubsetMismatch {
        basis: Vec<usize>,
        expected: Vec<usize>,
    },

    #[error("n must be nonnegative, got {0}")]
    NegativeN(f64),

    #[error("no correction listed for outcome \"{0}\"")]
    MissingCorrection(String),

    #[error("message {message} out of range for a {bits}-bit scheme")]
    MessageOutOfRange { message: usize, bits: usize },

    #[error("scheme expects a {expected}-qubit shared state, got {actual} qubits")]
    SharedStateQubits { expected: usize, actual: usize },

    #[error("measurement landed on auxiliary outcome \"{label}\" (p = {probability:.3e}); the channel does not match the decoder")]
    AuxOutcomeSampled { label: String, probability: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
