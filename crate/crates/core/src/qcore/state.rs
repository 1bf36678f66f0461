use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Tolerance on Σ|aₖ|² for a vector to count as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// A normalized pure state of `num_qubits` qubits.
///
/// Qubit 1 is the leftmost ket label and the most significant bit of the
/// amplitude index: |q1 q2 q3⟩ lives at index `4·q1 + 2·q2 + q3`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from explicit amplitudes, which must already be
    /// normalized within [`NORM_TOL`] and finite.
    pub fn new(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let expected = 1usize << num_qubits;
        if amps.len() != expected {
            return Err(Error::AmplitudeCount {
                num_qubits,
                expected,
                actual: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm_sqr: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { num_qubits, amps })
    }

    /// Builds a state from arbitrary finite amplitudes, rescaling to unit
    /// norm. Fails on the zero vector.
    pub fn from_unnormalized(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let expected = 1usize << num_qubits;
        if amps.len() != expected {
            return Err(Error::AmplitudeCount {
                num_qubits,
                expected,
                actual: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm_sqr: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::ZeroVector);
        }
        let scale = norm_sqr.sqrt().recip();
        let amps = amps.into_iter().map(|a| a * scale).collect();
        Ok(Self { num_qubits, amps })
    }

    /// The computational basis state |index⟩.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::BasisIndexOutOfRange { index, dim });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        Ok(Self { num_qubits, amps })
    }

    /// A Haar-random pure state: independent complex Gaussian amplitudes,
    /// normalized. The Gaussians come from a Box–Muller transform of the
    /// supplied stream, so the draw is reproducible from the stream's seed.
    pub fn random_haar<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let dim = 1usize << num_qubits;
        let mut amps = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (g0, g1) = gaussian_pair(rng);
            amps.push(Complex64::new(g0, g1));
        }
        Self::from_unnormalized(num_qubits, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// 2^num_qubits.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// Value of qubit `qubit` (1-based) in the basis label `index`.
    pub fn bit_of(&self, index: usize, qubit: usize) -> u8 {
        debug_assert!(qubit >= 1 && qubit <= self.num_qubits);
        ((index >> (self.num_qubits - qubit)) & 1) as u8
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// 1 − |⟨a|b⟩|, a phase-insensitive distance: zero exactly when the two
    /// states are equal up to a global phase.
    pub fn phase_distance(&self, other: &Self) -> Result<f64> {
        Ok(1.0 - inner(self, other)?.norm())
    }
}

fn gaussian_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    // Box–Muller; u is kept away from 0 so the log stays finite.
    let u: f64 = loop {
        let u = rng.random::<f64>();
        if u > f64::MIN_POSITIVE {
            break u;
        }
    };
    let v: f64 = rng.random();
    let r = (-2.0 * u.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * v;
    (r * theta.cos(), r * theta.sin())
}

/// Kronecker product a ⊗ b, with a's qubits more significant.
pub fn tensor(a: &StateVector, b: &StateVector) -> StateVector {
    let num_qubits = a.num_qubits + b.num_qubits;
    let bdim = b.dim();
    let mut amps = Vec::with_capacity(a.dim() * bdim);
    for &ai in &a.amps {
        for &bj in &b.amps {
            amps.push(ai * bj);
        }
    }
    StateVector { num_qubits, amps }
}

/// ⟨a|b⟩, conjugate-linear in the first argument.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.num_qubits != b.num_qubits {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum())
}
