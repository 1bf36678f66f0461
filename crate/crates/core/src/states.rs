//! Constructors for the named states and measurement bases, plus basis
//! completion and orthonormality checking.
//!
//! The `W_n` family is parameterised by a nonnegative real `n` and two
//! phases; its three nonzero amplitudes sit on |100⟩, |010⟩ and |001⟩ with
//! weights 1, √n·e^{iγ} and √(n+1)·e^{iδ} over a common 1/√(2+2n) factor.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{inner, StateVector};

/// Orthonormality tolerance for a valid measurement basis.
pub const BASIS_TOL: f64 = 1e-10;
/// Gram–Schmidt candidates below this residual norm are discarded.
const COMPLETION_RESIDUAL: f64 = 1e-8;

/// Outcome labels shared between bases, correction tables and JSON output.
pub mod labels {
    pub const ETA_PLUS: &str = "eta+";
    pub const ETA_MINUS: &str = "eta-";
    pub const XI_PLUS: &str = "xi+";
    pub const XI_MINUS: &str = "xi-";
    pub const PSI1_PLUS: &str = "psi1+";
    pub const PSI1_MINUS: &str = "psi1-";
    pub const PSI2_PLUS: &str = "psi2+";
    pub const PSI2_MINUS: &str = "psi2-";
    pub const PSI3_PLUS: &str = "psi3+";
    pub const PSI3_MINUS: &str = "psi3-";
    pub const PSI4_PLUS: &str = "psi4+";
    pub const PSI4_MINUS: &str = "psi4-";
    pub const PHI_PLUS: &str = "phi+";
    pub const PHI_MINUS: &str = "phi-";
    pub const BELL_PSI_PLUS: &str = "psi+";
    pub const BELL_PSI_MINUS: &str = "psi-";

    pub fn aux(k: usize) -> String {
        format!("aux_{k}")
    }
}

/// Parameters of the `W_n` family: weight `n ≥ 0` and phases in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WParams {
    pub n: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl WParams {
    pub fn new(n: f64, gamma: f64, delta: f64) -> Result<Self> {
        if !n.is_finite() || !gamma.is_finite() || !delta.is_finite() {
            return Err(Error::NonFinite("W-state parameters"));
        }
        if n < 0.0 {
            return Err(Error::NegativeN(n));
        }
        Ok(Self { n, gamma, delta })
    }

    /// (normalisation, √n·e^{iγ}, √(n+1)·e^{iδ}).
    fn coefficients(&self) -> (f64, Complex64, Complex64) {
        let norm = 1.0 / (2.0 + 2.0 * self.n).sqrt();
        let a = Complex64::from_polar(self.n.sqrt(), self.gamma);
        let b = Complex64::from_polar((self.n + 1.0).sqrt(), self.delta);
        (norm, a, b)
    }
}

/// One vector of a measurement basis, carrying its outcome label.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    pub label: String,
    pub state: StateVector,
}

/// An ordered orthonormal set of vectors on a qubit subset. The first
/// `labeled_count` vectors carry protocol labels; any remainder are
/// Gram–Schmidt fillers named `aux_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    subset: Vec<usize>,
    vectors: Vec<BasisVector>,
    labeled_count: usize,
}

impl MeasurementBasis {
    /// Builds a (possibly partial) basis from labeled vectors, verifying
    /// orthonormality within [`BASIS_TOL`].
    pub fn new(subset: Vec<usize>, vectors: Vec<BasisVector>) -> Result<Self> {
        let k = subset.len();
        if k == 0 {
            return Err(Error::NoQubits);
        }
        for (i, &q) in subset.iter().enumerate() {
            if q == 0 {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: k,
                });
            }
            if subset[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        let dim = 1usize << k;
        if vectors.is_empty() || vectors.len() > dim {
            return Err(Error::BasisIncomplete {
                have: vectors.len(),
                need: dim,
            });
        }
        for v in &vectors {
            if v.state.num_qubits() != k {
                return Err(Error::DimensionMismatch {
                    left: v.state.dim(),
                    right: dim,
                });
            }
        }
        let states: Vec<StateVector> = vectors.iter().map(|v| v.state.clone()).collect();
        let report = check_orthonormal(&states, BASIS_TOL)?;
        if !report.pass {
            return Err(Error::NotOrthonormal {
                deviation: report.max_deviation,
                tol: BASIS_TOL,
            });
        }
        let labeled_count = vectors.len();
        Ok(Self {
            subset,
            vectors,
            labeled_count,
        })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn vectors(&self) -> &[BasisVector] {
        &self.vectors
    }

    pub fn labeled_count(&self) -> usize {
        self.labeled_count
    }

    pub fn num_qubits(&self) -> usize {
        self.subset.len()
    }

    pub fn is_complete(&self) -> bool {
        self.vectors.len() == 1usize << self.subset.len()
    }

    /// The same vectors re-targeted at a different qubit subset.
    pub fn with_subset(mut self, subset: Vec<usize>) -> Result<Self> {
        if subset.len() != self.subset.len() {
            return Err(Error::DimensionMismatch {
                left: subset.len(),
                right: self.subset.len(),
            });
        }
        for (i, &q) in subset.iter().enumerate() {
            if q == 0 {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: subset.len(),
                });
            }
            if subset[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        self.subset = subset;
        Ok(self)
    }

    pub fn position_of(&self, label: &str) -> Option<usize> {
        self.vectors.iter().position(|v| v.label == label)
    }

    /// Largest Gram-matrix deviation from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let states: Vec<StateVector> = self.vectors.iter().map(|v| v.state.clone()).collect();
        check_orthonormal(&states, BASIS_TOL)
            .map(|r| r.max_deviation)
            .unwrap_or(f64::INFINITY)
    }
}

/// Result of an orthonormality check: the largest |⟨bᵢ|bⱼ⟩ − δᵢⱼ|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthonormalityReport {
    pub max_deviation: f64,
    pub pass: bool,
}

/// Largest Gram-matrix deviation of a set of equal-dimension vectors.
pub fn check_orthonormal(vectors: &[StateVector], tol: f64) -> Result<OrthonormalityReport> {
    let mut max_deviation: f64 = 0.0;
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let overlap = inner(&vectors[i], &vectors[j])?;
            let target = if i == j { 1.0 } else { 0.0 };
            max_deviation = max_deviation.max((overlap - target).norm());
        }
    }
    Ok(OrthonormalityReport {
        max_deviation,
        pass: max_deviation <= tol,
    })
}

fn state_from_entries(entries: &[(usize, Complex64)]) -> StateVector {
    let mut amps = vec![Complex64::ZERO; 8];
    for &(idx, amp) in entries {
        amps[idx] = amp;
    }
    StateVector::new(3, amps).expect("named three-qubit states are normalized")
}

/// (|000⟩ + |111⟩)/√2.
pub fn make_ghz() -> StateVector {
    let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    state_from_entries(&[(0b000, r), (0b111, r)])
}

/// (|100⟩ + |010⟩ + |001⟩)/√3, the prototype W state.
pub fn make_w_prototype() -> StateVector {
    let r = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    state_from_entries(&[(0b100, r), (0b010, r), (0b001, r)])
}

/// (|100⟩ + √n·e^{iγ}|010⟩ + √(n+1)·e^{iδ}|001⟩)/√(2+2n).
pub fn make_w_n(p: &WParams) -> StateVector {
    let (norm, a, b) = p.coefficients();
    state_from_entries(&[
        (0b100, Complex64::new(norm, 0.0)),
        (0b010, a * norm),
        (0b001, b * norm),
    ])
}

/// (|00⟩ + |11⟩)/√2, one shared ebit.
pub fn make_bell() -> StateVector {
    let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let mut amps = vec![Complex64::ZERO; 4];
    amps[0b00] = r;
    amps[0b11] = r;
    StateVector::new(2, amps).expect("Bell state is normalized")
}

fn superposition(plus: usize, minus: usize, sign: f64) -> StateVector {
    let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    state_from_entries(&[(plus, r), (minus, r * sign)])
}

/// The four labeled vectors ψ±₁ = (|000⟩±|111⟩)/√2, ψ±₂ = (|100⟩±|011⟩)/√2,
/// completed to a full eight-vector basis.
pub fn ghz_teleport_basis() -> MeasurementBasis {
    let vectors = vec![
        BasisVector {
            label: labels::PSI1_PLUS.into(),
            state: superposition(0b000, 0b111, 1.0),
        },
        BasisVector {
            label: labels::PSI1_MINUS.into(),
            state: superposition(0b000, 0b111, -1.0),
        },
        BasisVector {
            label: labels::PSI2_PLUS.into(),
            state: superposition(0b100, 0b011, 1.0),
        },
        BasisVector {
            label: labels::PSI2_MINUS.into(),
            state: superposition(0b100, 0b011, -1.0),
        },
    ];
    let partial =
        MeasurementBasis::new(vec![1, 2, 3], vectors).expect("ψ± vectors are orthonormal");
    complete_basis(&partial).expect("completion of an orthonormal set succeeds")
}

/// All eight labeled vectors ψ±₁ … ψ±₄; a complete basis with no fillers.
pub fn ghz_dense8_basis() -> MeasurementBasis {
    let vectors = vec![
        BasisVector {
            label: labels::PSI1_PLUS.into(),
            state: superposition(0b000, 0b111, 1.0),
        },
        BasisVector {
            label: labels::PSI1_MINUS.into(),
            state: superposition(0b000, 0b111, -1.0),
        },
        BasisVector {
            label: labels::PSI2_PLUS.into(),
            state: superposition(0b100, 0b011, 1.0),
        },
        BasisVector {
            label: labels::PSI2_MINUS.into(),
            state: superposition(0b100, 0b011, -1.0),
        },
        BasisVector {
            label: labels::PSI3_PLUS.into(),
            state: superposition(0b010, 0b101, 1.0),
        },
        BasisVector {
            label: labels::PSI3_MINUS.into(),
            state: superposition(0b010, 0b101, -1.0),
        },
        BasisVector {
            label: labels::PSI4_PLUS.into(),
            state: superposition(0b110, 0b001, 1.0),
        },
        BasisVector {
            label: labels::PSI4_MINUS.into(),
            state: superposition(0b110, 0b001, -1.0),
        },
    ];
    MeasurementBasis::new(vec![1, 2, 3], vectors).expect("ψ± vectors are orthonormal")
}

/// The four labeled vectors η±ₙ, ξ±ₙ matched to `make_w_n`, completed to
/// eight:
///
/// η±ₙ = (|010⟩ + √n·e^{iγ}|001⟩ ± √(n+1)·e^{iδ}|100⟩)/√(2+2n)
/// ξ±ₙ = (|110⟩ + √n·e^{iγ}|101⟩ ± √(n+1)·e^{iδ}|000⟩)/√(2+2n)
pub fn w_teleport_basis(p: &WParams) -> MeasurementBasis {
    let (norm, a, b) = p.coefficients();
    let nc = Complex64::new(norm, 0.0);
    let eta = |sign: f64| {
        state_from_entries(&[(0b010, nc), (0b001, a * norm), (0b100, b * norm * sign)])
    };
    let xi = |sign: f64| {
        state_from_entries(&[(0b110, nc), (0b101, a * norm), (0b000, b * norm * sign)])
    };
    let vectors = vec![
        BasisVector {
            label: labels::ETA_PLUS.into(),
            state: eta(1.0),
        },
        BasisVector {
            label: labels::ETA_MINUS.into(),
            state: eta(-1.0),
        },
        BasisVector {
            label: labels::XI_PLUS.into(),
            state: xi(1.0),
        },
        BasisVector {
            label: labels::XI_MINUS.into(),
            state: xi(-1.0),
        },
    ];
    let partial =
        MeasurementBasis::new(vec![1, 2, 3], vectors).expect("η±/ξ± vectors are orthonormal");
    complete_basis(&partial).expect("completion of an orthonormal set succeeds")
}

/// The Bell basis Φ±, Ψ± on two qubits (already complete).
pub fn bell_basis() -> MeasurementBasis {
    let r = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let two_qubit = |plus: usize, minus: usize, sign: f64| {
        let mut amps = vec![Complex64::ZERO; 4];
        amps[plus] = r;
        amps[minus] = r * sign;
        StateVector::new(2, amps).expect("Bell vectors are normalized")
    };
    let vectors = vec![
        BasisVector {
            label: labels::PHI_PLUS.into(),
            state: two_qubit(0b00, 0b11, 1.0),
        },
        BasisVector {
            label: labels::PHI_MINUS.into(),
            state: two_qubit(0b00, 0b11, -1.0),
        },
        BasisVector {
            label: labels::BELL_PSI_PLUS.into(),
            state: two_qubit(0b01, 0b10, 1.0),
        },
        BasisVector {
            label: labels::BELL_PSI_MINUS.into(),
            state: two_qubit(0b01, 0b10, -1.0),
        },
    ];
    MeasurementBasis::new(vec![1, 2], vectors).expect("Bell vectors are orthonormal")
}

/// Extends a partial orthonormal basis to a complete one with modified
/// Gram–Schmidt seeded by the computational kets, in index order. Labeled
/// vectors keep their positions; fillers are labeled `aux_0`, `aux_1`, ….
pub fn complete_basis(partial: &MeasurementBasis) -> Result<MeasurementBasis> {
    let states: Vec<StateVector> = partial.vectors.iter().map(|v| v.state.clone()).collect();
    let report = check_orthonormal(&states, BASIS_TOL)?;
    if !report.pass {
        return Err(Error::NotOrthonormal {
            deviation: report.max_deviation,
            tol: BASIS_TOL,
        });
    }

    let k = partial.num_qubits();
    let dim = 1usize << k;
    let mut vectors = partial.vectors.clone();
    let mut aux_index = 0usize;

    for ket in 0..dim {
        if vectors.len() == dim {
            break;
        }
        let mut residual = vec![Complex64::ZERO; dim];
        residual[ket] = Complex64::ONE;
        // Two orthogonalisation passes keep the fillers orthonormal to
        // working precision.
        for _ in 0..2 {
            for v in &vectors {
                let overlap: Complex64 = v
                    .state
                    .amps()
                    .iter()
                    .zip(&residual)
                    .map(|(b, r)| b.conj() * r)
                    .sum();
                for (r, b) in residual.iter_mut().zip(v.state.amps()) {
                    *r -= overlap * b;
                }
            }
        }
        let norm = residual
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm < COMPLETION_RESIDUAL {
            continue;
        }
        let amps = residual.into_iter().map(|z| z / norm).collect();
        vectors.push(BasisVector {
            label: labels::aux(aux_index),
            state: StateVector::new(k, amps)?,
        });
        aux_index += 1;
    }

    debug_assert_eq!(vectors.len(), dim);
    Ok(MeasurementBasis {
        subset: partial.subset.clone(),
        vectors,
        labeled_count: partial.labeled_count,
    })
}
