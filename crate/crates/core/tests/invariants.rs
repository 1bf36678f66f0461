//! Cross-module properties: norm preservation, partial-trace consistency,
//! measurement completeness, eigen reassembly, local-unitary invariance of
//! the entanglement measures, and monogamy on random states.

mod common;

use common::{hyperdeterminant_tangle, random_unitary};
use num_complex::Complex64;
use proptest::prelude::*;
use wtangle::entanglement::{analyze, von_neumann_entropy};
use wtangle::qcore::rng::protocol_rng;
use wtangle::qcore::{
    apply_local, density, hermitian_eigenvalues, outcome_probabilities, partial_trace,
    projective_measure, tensor, CMatrix, StateVector,
};
use wtangle::states::{self, BasisVector, MeasurementBasis, WParams};

fn haar_state(num_qubits: usize, seed: u64) -> StateVector {
    StateVector::random_haar(num_qubits, &mut protocol_rng(seed)).unwrap()
}

fn computational_basis(num_qubits: usize) -> MeasurementBasis {
    let vectors = (0..1usize << num_qubits)
        .map(|i| BasisVector {
            label: format!("{i}"),
            state: StateVector::basis_state(num_qubits, i).unwrap(),
        })
        .collect();
    MeasurementBasis::new((1..=num_qubits).collect(), vectors).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unitaries_preserve_the_norm(seed in any::<u64>()) {
        let mut rng = protocol_rng(seed);
        let s = StateVector::random_haar(3, &mut rng).unwrap();
        let u1 = random_unitary(2, &mut rng);
        let u2 = random_unitary(4, &mut rng);
        let after_single = apply_local(&u1, &[2], &s).unwrap();
        prop_assert!((after_single.norm_sqr() - 1.0).abs() < 1e-12);
        let after_pair = apply_local(&u2, &[1, 3], &after_single).unwrap();
        prop_assert!((after_pair.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_of_a_product_recovers_the_factor(seed in any::<u64>()) {
        let mut rng = protocol_rng(seed);
        let a = StateVector::random_haar(2, &mut rng).unwrap();
        let b = StateVector::random_haar(2, &mut rng).unwrap();
        let joint = density(&tensor(&a, &b));
        let reduced = partial_trace(&joint, &[1, 2]).unwrap();
        let direct = density(&a);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((reduced.get(i, j) - direct.get(i, j)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn outcome_probabilities_sum_to_one(seed in any::<u64>(), n_times_4 in 0u32..32) {
        let mut rng = protocol_rng(seed);
        let s = StateVector::random_haar(3, &mut rng).unwrap();
        let p = WParams::new(f64::from(n_times_4) / 4.0, 0.9, 2.2).unwrap();
        for basis in [states::w_teleport_basis(&p), computational_basis(3)] {
            let total: f64 = outcome_probabilities(&s, &basis).unwrap().iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalues_reassemble_trace_and_det(entries in prop::array::uniform4(-1.0f64..1.0), im in -1.0f64..1.0) {
        let m = CMatrix::from_rows(&[
            vec![Complex64::new(entries[0], 0.0), Complex64::new(entries[1], im)],
            vec![Complex64::new(entries[1], -im), Complex64::new(entries[2], 0.0)],
        ]).unwrap();
        let values = hermitian_eigenvalues(&m).unwrap();
        prop_assert!((values.iter().sum::<f64>() - m.trace().re).abs() < 1e-10);
        let det = (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re;
        prop_assert!((values[0] * values[1] - det).abs() < 1e-10);
    }

    #[test]
    fn measurement_is_repeatable_per_seed(seed in any::<u64>()) {
        let s = haar_state(3, seed ^ 0xABCD);
        let basis = computational_basis(3);
        let run = |meas_seed: u64| {
            let mut rng = protocol_rng(meas_seed);
            (0..8).map(|_| projective_measure(&s, &basis, &mut rng).unwrap().index).collect::<Vec<_>>()
        };
        prop_assert_eq!(run(seed), run(seed));
    }
}

#[test]
fn monogamy_holds_on_random_states() {
    for trial in 0..200u64 {
        let s = haar_state(3, 0x5EED_0000 + trial);
        let report = analyze(&s).unwrap();
        assert!(
            report.monogamy_slack >= -1e-9,
            "trial {trial}: slack {}",
            report.monogamy_slack
        );
    }
}

#[test]
fn residual_tangle_matches_the_hyperdeterminant_on_random_states() {
    for trial in 0..200u64 {
        let s = haar_state(3, 0x7A9C_0000 + trial);
        let tangle = wtangle::entanglement::three_tangle(&s).unwrap();
        let oracle = hyperdeterminant_tangle(&s);
        assert!(
            (tangle - oracle).abs() < 1e-7,
            "trial {trial}: {tangle} vs oracle {oracle}"
        );
    }
}

#[test]
fn measures_are_invariant_under_local_unitaries() {
    for trial in 0..32u64 {
        let mut rng = protocol_rng(0x10CA_1000 + trial);
        let s = StateVector::random_haar(3, &mut rng).unwrap();
        let mut rotated = s.clone();
        for q in 1..=3 {
            let u = random_unitary(2, &mut rng);
            rotated = apply_local(&u, &[q], &rotated).unwrap();
        }
        let before = analyze(&s).unwrap();
        let after = analyze(&rotated).unwrap();
        assert!((before.tangle - after.tangle).abs() < 1e-9, "tangle drift");
        assert!(
            (before.concurrence_1_23 - after.concurrence_1_23).abs() < 1e-9,
            "cut concurrence drift"
        );
        assert!(
            (before.concurrence_pairs.c12 - after.concurrence_pairs.c12).abs() < 1e-9
                && (before.concurrence_pairs.c13 - after.concurrence_pairs.c13).abs() < 1e-9
                && (before.concurrence_pairs.c23 - after.concurrence_pairs.c23).abs() < 1e-9,
            "pairwise concurrence drift"
        );
        for key in ["1|23", "2|13", "3|12"] {
            assert!(
                (before.entropy_bits_per_cut[key] - after.entropy_bits_per_cut[key]).abs() < 1e-9,
                "entropy drift across {key}"
            );
        }
        assert_eq!(before.slocc_class, after.slocc_class);
    }
}

#[test]
fn entropy_stays_within_bounds() {
    for trial in 0..64u64 {
        let s = haar_state(3, 0xE117_0000 + trial);
        let rho = density(&s);
        for q in 1..=3usize {
            let reduced = partial_trace(&rho, &[q]).unwrap();
            let bits = von_neumann_entropy(&reduced).unwrap();
            assert!((0.0..=1.0).contains(&bits), "single-qubit entropy {bits}");
        }
        let pair = partial_trace(&rho, &[1, 3]).unwrap();
        let bits = von_neumann_entropy(&pair).unwrap();
        assert!((0.0..=2.0).contains(&bits), "two-qubit entropy {bits}");
    }
}

#[test]
fn matched_pairings_leave_no_probability_on_fillers() {
    let mut seeds = wtangle::qcore::rng::SeedSequence::new(0xF111);
    for &n in &[0.0, 0.25, 1.0, 2.0, 7.5] {
        for &(gamma, delta) in &[(0.0, 0.0), (std::f64::consts::FRAC_PI_4, std::f64::consts::PI)] {
            let p = WParams::new(n, gamma, delta).unwrap();
            let resource = states::make_w_n(&p);
            let basis = states::w_teleport_basis(&p);
            for _ in 0..8 {
                let input = wtangle::protocols::InputQubit::random(&mut protocol_rng(
                    seeds.next().unwrap(),
                ));
                let joint = tensor(&input.to_state(), &resource);
                let probs = outcome_probabilities(&joint, &basis).unwrap();
                for &prob in &probs[..basis.labeled_count()] {
                    assert!(
                        (prob - 0.25).abs() <= 1e-10,
                        "labeled outcome carries {prob} at n={n}, γ={gamma}, δ={delta}"
                    );
                }
                for (i, &prob) in probs.iter().enumerate().skip(basis.labeled_count()) {
                    assert!(
                        prob <= 1e-12,
                        "filler {i} carries {prob:.3e} at n={n}, γ={gamma}, δ={delta}"
                    );
                }
            }
        }
    }
}

#[test]
fn w_family_saturates_monogamy_across_the_sweep() {
    for &n in &[0.0, 0.25, 1.0, 2.0, 7.5] {
        for &gamma in &[0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::PI] {
            for &delta in &[0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::PI] {
                let p = WParams::new(n, gamma, delta).unwrap();
                let report = analyze(&states::make_w_n(&p)).unwrap();
                assert!(
                    report.monogamy_slack.abs() <= 1e-9,
                    "slack {} at n={n}, γ={gamma}, δ={delta}",
                    report.monogamy_slack
                );
                assert_eq!(report.tangle, 0.0);
            }
        }
    }
}
