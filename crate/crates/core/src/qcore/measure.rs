use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qcore::state::StateVector;
use crate::states::MeasurementBasis;

/// One outcome of a projective measurement.
///
/// `collapsed` holds the normalized remainder on the unmeasured qubits,
/// relabeled in order; it is `None` when the measurement consumed every
/// qubit, or when the branch carries no probability.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    pub index: usize,
    pub label: String,
    pub probability: f64,
    pub collapsed: Option<StateVector>,
}

/// All outcomes of measuring `s` in `basis`, with exact probabilities
/// pᵢ = ‖(⟨bᵢ| ⊗ I)|s⟩‖² and collapsed remainder states.
pub fn measurement_branches(
    s: &StateVector,
    basis: &MeasurementBasis,
) -> Result<Vec<MeasurementOutcome>> {
    let n = s.num_qubits();
    let subset = basis.subset();
    let k = subset.len();
    for &q in subset {
        if q < 1 || q > n {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: n,
            });
        }
    }
    if !basis.is_complete() {
        return Err(Error::BasisIncomplete {
            have: basis.vectors().len(),
            need: 1usize << k,
        });
    }
    let deviation = basis.gram_deviation();
    if deviation > crate::states::BASIS_TOL {
        return Err(Error::NotOrthonormal {
            deviation,
            tol: crate::states::BASIS_TOL,
        });
    }

    // Bit positions (from the LSB) of measured and remaining qubits; the
    // first subset entry is the most significant bit of the basis index.
    let measured_shifts: Vec<usize> = subset.iter().map(|&q| n - q).collect();
    let rest: Vec<usize> = (1..=n).filter(|q| !subset.contains(q)).collect();
    let rest_shifts: Vec<usize> = rest.iter().map(|&q| n - q).collect();
    let rest_dim = 1usize << rest.len();

    let assemble = |measured: usize, remaining: usize| -> usize {
        let mut idx = 0usize;
        for (j, &sh) in measured_shifts.iter().enumerate() {
            if (measured >> (k - 1 - j)) & 1 == 1 {
                idx |= 1 << sh;
            }
        }
        for (j, &sh) in rest_shifts.iter().enumerate() {
            if (remaining >> (rest.len() - 1 - j)) & 1 == 1 {
                idx |= 1 << sh;
            }
        }
        idx
    };

    let mut outcomes = Vec::with_capacity(basis.vectors().len());
    let mut total = 0.0;
    for (index, bv) in basis.vectors().iter().enumerate() {
        let mut remainder = vec![Complex64::ZERO; rest_dim];
        for (u, r) in remainder.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for m in 0..(1usize << k) {
                acc += bv.state.amp(m).conj() * s.amp(assemble(m, u));
            }
            *r = acc;
        }
        let probability: f64 = remainder.iter().map(|z| z.norm_sqr()).sum();
        total += probability;
        let collapsed = if rest.is_empty() || probability < 1e-300 {
            None
        } else {
            let scale = probability.sqrt().recip();
            let amps = remainder.into_iter().map(|z| z * scale).collect();
            Some(StateVector::new(rest.len(), amps)?)
        };
        outcomes.push(MeasurementOutcome {
            index,
            label: bv.label.clone(),
            probability,
            collapsed,
        });
    }
    assert!(
        (total - 1.0).abs() < 1e-10,
        "outcome probabilities of a complete basis must sum to 1, got {total}"
    );
    Ok(outcomes)
}

/// Just the outcome probabilities, in basis order.
pub fn outcome_probabilities(s: &StateVector, basis: &MeasurementBasis) -> Result<Vec<f64>> {
    Ok(measurement_branches(s, basis)?
        .into_iter()
        .map(|o| o.probability)
        .collect())
}

/// Samples one outcome with probability pᵢ from the supplied stream and
/// returns it together with the collapsed remainder state.
pub fn projective_measure<R: Rng + ?Sized>(
    s: &StateVector,
    basis: &MeasurementBasis,
    rng: &mut R,
) -> Result<MeasurementOutcome> {
    let branches = measurement_branches(s, basis)?;
    let u: f64 = rng.random();
    let mut cumulative = 0.0;
    let mut chosen: Option<usize> = None;
    for (i, outcome) in branches.iter().enumerate() {
        cumulative += outcome.probability;
        if u < cumulative {
            chosen = Some(i);
            break;
        }
    }
    // If u landed beyond the accumulated total (roundoff), take the last
    // outcome that carries any probability.
    let idx = match chosen {
        Some(i) => i,
        None => branches
            .iter()
            .rposition(|o| o.probability > 0.0)
            .expect("a normalized state has at least one supported outcome"),
    };
    let outcome = branches.into_iter().nth(idx).expect("index in range");
    assert!(
        outcome.probability > 0.0,
        "sampled a zero-probability branch"
    );
    Ok(outcome)
}
