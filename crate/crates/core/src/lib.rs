//! Dense state-vector simulation of few-qubit systems, together with the
//! protocol machinery needed to run perfect teleportation and superdense
//! coding over three-qubit entangled resources.
//!
//! The crate is organised in four layers:
//!
//! * [`qcore`] — complex dense linear algebra: tensor products, local
//!   operator application, partial trace, a Jacobi eigensolver for Hermitian
//!   matrices, and seeded projective measurement.
//! * [`states`] — constructors for the named states (GHZ, the prototype
//!   W state, the `W_n` family) and the measurement bases that go with them,
//!   plus Gram–Schmidt basis completion.
//! * [`entanglement`] — entanglement measures (von Neumann entropy,
//!   concurrences, residual 3-tangle) and SLOCC classification of pure
//!   three-qubit states.
//! * [`protocols`] — executable teleportation and superdense-coding
//!   protocols with correction tables, fidelity verification and resource
//!   accounting.
//!
//! Qubits are numbered from 1; qubit 1 is the leftmost ket label and the
//! most significant bit of an amplitude index, so |q1 q2 q3⟩ sits at index
//! `4·q1 + 2·q2 + q3`. All randomness flows through seeded ChaCha8 streams,
//! one stream per protocol run, so every run is reproducible from its seed.

#![forbid(unsafe_code)]

pub mod entanglement;
mod error;
pub mod protocols;
pub mod qcore;
pub mod states;

pub use error::{Error, Result};
pub use num_complex::Complex64;
