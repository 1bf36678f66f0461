//! Entanglement measures and SLOCC classification for pure three-qubit
//! states.
//!
//! The residual tangle is computed as C²₁₍₂₃₎ − C²₁₂ − C²₁₃: the squared
//! concurrence of qubit 1 against the rest, minus the squared pairwise
//! concurrences of the two reduced two-qubit states. It vanishes on the
//! whole W class and reaches 1 on the GHZ state.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{
    self, density, hermitian_eigenvalues, partial_trace, CMatrix, DensityMatrix, Operator,
    StateVector,
};

/// Default tolerance for classification decisions on determinants and the
/// tangle.
pub const CLASS_TOL: f64 = 1e-9;
/// Negative values above this floor are treated as eigensolver roundoff and
/// clamped to zero.
const ROUNDOFF_FLOOR: f64 = -1e-10;
/// Eigenvalues at or below this weight are ignored by the entropy sum.
const ENTROPY_CUTOFF: f64 = 1e-12;
/// Eigenvalues of √ρ ρ̃ √ρ below this are treated as exact zeros before the
/// square root; otherwise roundoff of order 1e-18 would surface as spurious
/// 1e-9 contributions to the concurrence.
const SPECTRUM_CUTOFF: f64 = 1e-14;
/// Raw tangle values below this threshold are reported as exactly zero.
const TANGLE_CUTOFF: f64 = 1e-10;

/// The four SLOCC classes of a pure three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SloccClass {
    Product,
    Biseparable,
    WClass,
    GHZClass,
}

impl std::fmt::Display for SloccClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SloccClass::Product => "Product",
            SloccClass::Biseparable => "Biseparable",
            SloccClass::WClass => "WClass",
            SloccClass::GHZClass => "GHZClass",
        };
        f.write_str(name)
    }
}

/// Pairwise concurrences of the three reduced two-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairConcurrences {
    pub c12: f64,
    pub c13: f64,
    pub c23: f64,
}

/// The full set of measures for one pure three-qubit state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    /// Entropy in bits across each one-vs-two cut, keyed "1|23", "2|13",
    /// "3|12".
    pub entropy_bits_per_cut: BTreeMap<String, f64>,
    pub concurrence_pairs: PairConcurrences,
    pub concurrence_1_23: f64,
    pub tangle: f64,
    pub slocc_class: SloccClass,
    /// C²₁₍₂₃₎ − C²₁₂ − C²₁₃ before clamping; nonnegative up to roundoff.
    pub monogamy_slack: f64,
}

/// −Σ λ log₂ λ over the eigenvalues of a density matrix, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let mut bits = 0.0;
    for &l in &rho.eigenvalues()? {
        if l > ENTROPY_CUTOFF {
            bits -= l * l.log2();
        }
    }
    Ok(bits.clamp(0.0, rho.num_qubits() as f64))
}

/// Concurrence of one qubit against the rest of a pure state:
/// 2√(det ρ_a), clamped to [0, 1].
pub fn concurrence_pure_cut(s: &StateVector, a: usize) -> Result<f64> {
    if a < 1 || a > s.num_qubits() {
        return Err(Error::QubitOutOfRange {
            qubit: a,
            num_qubits: s.num_qubits(),
        });
    }
    let rho_a = partial_trace(&density(s), &[a])?;
    let det = rho_a.determinant()?;
    Ok((2.0 * clamp_roundoff(det)?.sqrt()).clamp(0.0, 1.0))
}

/// Wootters concurrence of a two-qubit density matrix: with the spin-flipped
/// matrix ρ̃ = (σ₂⊗σ₂) ρ* (σ₂⊗σ₂), the λᵢ are the descending square roots
/// of the eigenvalues of ρρ̃ and C = max(0, λ₁ − λ₂ − λ₃ − λ₄).
///
/// The λᵢ are obtained from the Hermitian matrix √ρ ρ̃ √ρ, which shares the
/// spectrum of ρρ̃, so only the Hermitian eigensolver is needed.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.num_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    let yy = CMatrix::kron(Operator::sigma_y().matrix(), Operator::sigma_y().matrix());
    let rho_tilde = yy.mul(&rho.matrix().conj())?.mul(&yy)?;
    let root = qcore::sqrt_psd(rho.matrix())?;
    let m = root.mul(&rho_tilde)?.mul(&root)?;
    let lambdas: Vec<f64> = hermitian_eigenvalues(&m)?
        .into_iter()
        .map(|mu| {
            let mu = clamp_roundoff(mu)?;
            Ok(if mu < SPECTRUM_CUTOFF { 0.0 } else { mu.sqrt() })
        })
        .collect::<Result<_>>()?;
    let spread = lambdas[0] - lambdas[1..].iter().sum::<f64>();
    Ok(spread.max(0.0))
}

/// Residual tangle τ = C²₁₍₂₃₎ − C²₁₂ − C²₁₃ of a pure three-qubit state,
/// reported as zero below [`TANGLE_CUTOFF`].
pub fn three_tangle(s: &StateVector) -> Result<f64> {
    let raw = monogamy_slack(s)?;
    Ok(if raw < TANGLE_CUTOFF { 0.0 } else { raw })
}

fn monogamy_slack(s: &StateVector) -> Result<f64> {
    require_three_qubits(s)?;
    let c1 = concurrence_pure_cut(s, 1)?;
    let rho = density(s);
    let c12 = wootters_concurrence(&partial_trace(&rho, &[1, 2])?)?;
    let c13 = wootters_concurrence(&partial_trace(&rho, &[1, 3])?)?;
    Ok(c1 * c1 - c12 * c12 - c13 * c13)
}

/// SLOCC class of a pure three-qubit state: counting how many single-qubit
/// reduced states are pure (det ≤ tol) separates Product (≥ 2) from
/// Biseparable (exactly 1); genuinely tripartite states split by the tangle
/// into GHZClass (τ > tol) and WClass (τ ≤ tol).
pub fn slocc_classify(s: &StateVector, tol: f64) -> Result<SloccClass> {
    require_three_qubits(s)?;
    let rho = density(s);
    let vanishing = (1..=3)
        .map(|q| -> Result<bool> {
            Ok(partial_trace(&rho, &[q])?.determinant()? <= tol)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&v| v)
        .count();
    Ok(match vanishing {
        2.. => SloccClass::Product,
        1 => SloccClass::Biseparable,
        _ => {
            if three_tangle(s)? > tol {
                SloccClass::GHZClass
            } else {
                SloccClass::WClass
            }
        }
    })
}

/// The full report: entropies per cut, all concurrences, tangle, class and
/// monogamy slack.
pub fn analyze(s: &StateVector) -> Result<EntanglementReport> {
    require_three_qubits(s)?;
    let rho = density(s);

    let mut entropy_bits_per_cut = BTreeMap::new();
    for (q, key) in [(1, "1|23"), (2, "2|13"), (3, "3|12")] {
        let reduced = partial_trace(&rho, &[q])?;
        entropy_bits_per_cut.insert(key.to_string(), von_neumann_entropy(&reduced)?);
    }

    let c12 = wootters_concurrence(&partial_trace(&rho, &[1, 2])?)?;
    let c13 = wootters_concurrence(&partial_trace(&rho, &[1, 3])?)?;
    let c23 = wootters_concurrence(&partial_trace(&rho, &[2, 3])?)?;
    let concurrence_1_23 = concurrence_pure_cut(s, 1)?;
    let monogamy_slack = concurrence_1_23 * concurrence_1_23 - c12 * c12 - c13 * c13;

    Ok(EntanglementReport {
        entropy_bits_per_cut,
        concurrence_pairs: PairConcurrences { c12, c13, c23 },
        concurrence_1_23,
        tangle: three_tangle(s)?,
        slocc_class: slocc_classify(s, CLASS_TOL)?,
        monogamy_slack,
    })
}

fn require_three_qubits(s: &StateVector) -> Result<()> {
    if s.num_qubits() != 3 {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: 8,
        });
    }
    Ok(())
}

fn clamp_roundoff(value: f64) -> Result<f64> {
    if value < ROUNDOFF_FLOOR {
        return Err(Error::NotPositive {
            min_eigenvalue: value,
        });
    }
    Ok(value.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{self, WParams};
    use crate::qcore::tensor;

    fn w1() -> StateVector {
        states::make_w_n(&WParams::new(1.0, 0.0, 0.0).unwrap())
    }

    #[test]
    fn entropy_of_maximally_mixed_qubit_is_one_bit() {
        let rho3 = partial_trace(&density(&w1()), &[3]).unwrap();
        assert!((von_neumann_entropy(&rho3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_a_pure_state_is_zero() {
        let rho = density(&states::make_ghz());
        assert!(von_neumann_entropy(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn entropy_of_three_quarter_mixture_matches_closed_form() {
        let rho1 = partial_trace(&density(&w1()), &[1]).unwrap();
        // −(3/4)log₂(3/4) − (1/4)log₂(1/4)
        assert!((von_neumann_entropy(&rho1).unwrap() - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn pure_cut_concurrences_for_named_states() {
        assert!((concurrence_pure_cut(&w1(), 1).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let product = StateVector::basis_state(3, 0).unwrap();
        for q in 1..=3 {
            assert!(concurrence_pure_cut(&product, q).unwrap() < 1e-12);
        }
        for q in 1..=3 {
            assert!((concurrence_pure_cut(&states::make_ghz(), q).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn wootters_concurrence_of_w1_reductions() {
        let rho = density(&w1());
        let c12 = wootters_concurrence(&partial_trace(&rho, &[1, 2]).unwrap()).unwrap();
        assert!((c12 - 0.5).abs() < 1e-10, "C12 = {c12}");
        let c13 = wootters_concurrence(&partial_trace(&rho, &[1, 3]).unwrap()).unwrap();
        assert!((c13 - 1.0 / 2f64.sqrt()).abs() < 1e-10, "C13 = {c13}");
    }

    #[test]
    fn wootters_concurrence_of_a_bell_state_is_one() {
        let rho = density(&states::make_bell());
        assert!((wootters_concurrence(&rho).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn tangle_vanishes_across_the_w_family() {
        for &n in &[0.0, 0.25, 1.0, 2.0, 7.5] {
            let p = WParams::new(n, 0.7, 2.1).unwrap();
            let tau = three_tangle(&states::make_w_n(&p)).unwrap();
            assert_eq!(tau, 0.0, "tangle at n={n}");
        }
    }

    #[test]
    fn tangle_of_ghz_is_one() {
        assert!((three_tangle(&states::make_ghz()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn tangle_of_a_product_state_is_zero() {
        assert_eq!(
            three_tangle(&StateVector::basis_state(3, 0).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn classification_of_named_states() {
        assert_eq!(
            slocc_classify(&states::make_ghz(), CLASS_TOL).unwrap(),
            SloccClass::GHZClass
        );
        assert_eq!(slocc_classify(&w1(), CLASS_TOL).unwrap(), SloccClass::WClass);
        let zero_bell = tensor(&StateVector::basis_state(1, 0).unwrap(), &states::make_bell());
        assert_eq!(
            slocc_classify(&zero_bell, CLASS_TOL).unwrap(),
            SloccClass::Biseparable
        );
        assert_eq!(
            slocc_classify(&StateVector::basis_state(3, 5).unwrap(), CLASS_TOL).unwrap(),
            SloccClass::Product
        );
    }

    #[test]
    fn w0_classifies_as_biseparable() {
        let w0 = states::make_w_n(&WParams::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(
            slocc_classify(&w0, CLASS_TOL).unwrap(),
            SloccClass::Biseparable
        );
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn analyze_w1_reproduces_the_reference_table() {
        let report = analyze(&w1()).unwrap();
        assert!((report.concurrence_pairs.c12 - 0.5).abs() < 1e-8);
        assert!((report.concurrence_pairs.c13 - 0.70710678).abs() < 1e-8);
        assert!((report.concurrence_1_23 - 0.86602540).abs() < 1e-8);
        assert_eq!(report.tangle, 0.0);
        assert!(report.monogamy_slack.abs() < 1e-9);
        assert_eq!(report.slocc_class, SloccClass::WClass);
        assert!((report.entropy_bits_per_cut["3|12"] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn analyze_product_state_is_all_zero() {
        let report = analyze(&StateVector::basis_state(3, 0).unwrap()).unwrap();
        assert_eq!(report.slocc_class, SloccClass::Product);
        assert!(report.concurrence_1_23 < 1e-12);
        assert!(report.concurrence_pairs.c12 < 1e-12);
        assert!(report.tangle == 0.0);
        for bits in report.entropy_bits_per_cut.values() {
            assert!(*bits < 1e-12);
        }
    }

    #[test]
    fn analyze_prototype_w_gives_two_thirds_pairwise() {
        let report = analyze(&states::make_w_prototype()).unwrap();
        for c in [
            report.concurrence_pairs.c12,
            report.concurrence_pairs.c13,
            report.concurrence_pairs.c23,
        ] {
            assert!((c - 2.0 / 3.0).abs() < 1e-10, "pairwise C = {c}");
        }
        assert_eq!(report.tangle, 0.0);
        assert_eq!(report.slocc_class, SloccClass::WClass);
    }

    #[test]
    fn wootters_rejects_non_two_qubit_input() {
        let rho = density(&states::make_ghz());
        assert!(matches!(
            wootters_concurrence(&rho).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }
}
