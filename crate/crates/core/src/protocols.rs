//! Executable teleportation and superdense-coding protocols.
//!
//! Teleportation runs over a four-qubit joint system (a,1,2,3): the input
//! qubit `a` is the most significant, Alice measures (a,1,2) in a complete
//! three-qubit basis, and Bob's qubit 3 receives a Pauli correction chosen
//! by the outcome label. Superdense coding applies the encoding unitaries
//! {1, σ₁, iσ₂, σ₃} to Alice's qubit(s) of a shared state and decodes with
//! a projective measurement in the matching orthogonal basis.
//!
//! Corrections are applied as the phase-free Paulis {1, σ₁, σ₂, σ₃}; the
//! iσ₂ branches of the protocols hold up to a global phase, which fidelity
//! does not see.

use num_complex::Complex64;
use serde::Serialize;

use crate::entanglement::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::qcore::rng::{protocol_rng, SeedSequence};
use crate::qcore::{
    apply_local, density, inner, measurement_branches, partial_trace, projective_measure, tensor,
    Operator, StateVector, NORM_TOL,
};
use crate::states::{
    self, labels, make_bell, make_ghz, make_w_n, make_w_prototype, w_teleport_basis,
    MeasurementBasis, WParams,
};

/// The unknown qubit α|0⟩ + β|1⟩ handed to the sender.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputQubit {
    alpha: Complex64,
    beta: Complex64,
}

impl InputQubit {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite() && beta.re.is_finite() && beta.im.is_finite()) {
            return Err(Error::NonFinite("input qubit amplitudes"));
        }
        let deviation = (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { alpha, beta })
    }

    /// A Haar-random qubit drawn from the supplied stream.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        let s = StateVector::random_haar(1, rng).expect("one qubit is valid");
        Self {
            alpha: s.amp(0),
            beta: s.amp(1),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn to_state(&self) -> StateVector {
        StateVector::new(1, vec![self.alpha, self.beta]).expect("validated on construction")
    }
}

/// The correction alphabet. Y is applied as σ₂; where a protocol branch
/// calls for ±iσ₂ the difference is a global phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn operator(&self) -> Operator {
        match self {
            Pauli::I => Operator::identity(2),
            Pauli::X => Operator::sigma_x(),
            Pauli::Y => Operator::sigma_y(),
            Pauli::Z => Operator::sigma_z(),
        }
    }
}

impl std::fmt::Display for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        })
    }
}

/// Outcome label → Pauli correction for Bob.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionTable {
    map: std::collections::BTreeMap<String, Pauli>,
}

impl CorrectionTable {
    pub fn from_pairs(pairs: &[(&str, Pauli)]) -> Self {
        Self {
            map: pairs
                .iter()
                .map(|&(label, pauli)| (label.to_string(), pauli))
                .collect(),
        }
    }

    /// η⁺→1, η⁻→σ₃, ξ⁺→σ₁, ξ⁻→σ₂ (the last up to a phase).
    pub fn w_standard() -> Self {
        Self::from_pairs(&[
            (labels::ETA_PLUS, Pauli::I),
            (labels::ETA_MINUS, Pauli::Z),
            (labels::XI_PLUS, Pauli::X),
            (labels::XI_MINUS, Pauli::Y),
        ])
    }

    /// ψ⁺₁→1, ψ⁻₁→σ₃, ψ⁺₂→σ₁, ψ⁻₂→σ₂ (the last up to a phase).
    pub fn ghz_standard() -> Self {
        Self::from_pairs(&[
            (labels::PSI1_PLUS, Pauli::I),
            (labels::PSI1_MINUS, Pauli::Z),
            (labels::PSI2_PLUS, Pauli::X),
            (labels::PSI2_MINUS, Pauli::Y),
        ])
    }

    pub fn get(&self, label: &str) -> Option<Pauli> {
        self.map.get(label).copied()
    }

    /// Every labeled outcome of `basis` must have an entry.
    pub fn covers(&self, basis: &MeasurementBasis) -> Result<()> {
        for v in &basis.vectors()[..basis.labeled_count()] {
            if !self.map.contains_key(&v.label) {
                return Err(Error::MissingCorrection(v.label.clone()));
            }
        }
        Ok(())
    }
}

/// Full record of one teleportation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeleportTrace {
    pub resource_name: String,
    pub params: Option<WParams>,
    pub outcome_label: String,
    pub outcome_probability: f64,
    /// Two-bit code of the labeled outcome; `None` when an auxiliary
    /// outcome was sampled (possible only for mismatched pairings).
    pub classical_bits: Option<u8>,
    pub correction: Pauli,
    pub fidelity: f64,
    pub seed: u64,
}

/// |⟨a|b⟩|², insensitive to global phase.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(inner(a, b)?.norm_sqr())
}

/// Runs one teleportation: joint state input ⊗ resource, measurement of
/// qubits (a,1,2) in `basis`, table-driven correction on Bob's qubit.
///
/// Mismatched resource/basis pairings are allowed; if the measurement lands
/// on an auxiliary outcome the trace records it with no correction and no
/// classical bits. For matched pairings auxiliary outcomes carry zero
/// probability and cannot be sampled.
pub fn teleport(
    resource: &StateVector,
    basis: &MeasurementBasis,
    table: &CorrectionTable,
    input: &InputQubit,
    seed: u64,
) -> Result<TeleportTrace> {
    if resource.num_qubits() != 3 {
        return Err(Error::SharedStateQubits {
            expected: 3,
            actual: resource.num_qubits(),
        });
    }
    if basis.subset() != [1, 2, 3] {
        return Err(Error::BasisSubsetMismatch {
            basis: basis.subset().to_vec(),
            expected: vec![1, 2, 3],
        });
    }
    table.covers(basis)?;

    let joint = tensor(&input.to_state(), resource);
    let mut rng = protocol_rng(seed);
    let outcome = projective_measure(&joint, basis, &mut rng)?;

    let labeled = outcome.index < basis.labeled_count();
    let correction = if labeled {
        table
            .get(&outcome.label)
            .expect("coverage was checked above")
    } else {
        Pauli::I
    };
    let bob = outcome
        .collapsed
        .expect("one unmeasured qubit always remains");
    let corrected = apply_local(&correction.operator(), &[1], &bob)?;
    let fidelity = fidelity(&input.to_state(), &corrected)?;

    Ok(TeleportTrace {
        resource_name: "custom".into(),
        params: None,
        outcome_label: outcome.label,
        outcome_probability: outcome.probability,
        classical_bits: labeled.then_some(outcome.index as u8),
        correction,
        fidelity,
        seed,
    })
}

/// Teleportation over the `W_n` resource with its matched basis and the
/// standard correction table.
pub fn w_teleport(p: &WParams, input: &InputQubit, seed: u64) -> Result<TeleportTrace> {
    let resource = make_w_n(p);
    let basis = w_teleport_basis(p);
    let mut trace = teleport(&resource, &basis, &CorrectionTable::w_standard(), input, seed)?;
    trace.resource_name = "wn".into();
    trace.params = Some(*p);
    Ok(trace)
}

/// Teleportation over the GHZ resource with its matched basis and the
/// standard correction table.
pub fn ghz_teleport(input: &InputQubit, seed: u64) -> Result<TeleportTrace> {
    let resource = make_ghz();
    let basis = states::ghz_teleport_basis();
    let mut trace = teleport(
        &resource,
        &basis,
        &CorrectionTable::ghz_standard(),
        input,
        seed,
    )?;
    trace.resource_name = "ghz".into();
    Ok(trace)
}

/// Shared entanglement across the Alice|Bob cut, in ebits: the von Neumann
/// entropy of the reduced state on Alice's qubits.
pub fn resource_accounting(resource: &StateVector, alice_qubits: &[usize]) -> Result<f64> {
    if alice_qubits.is_empty() || alice_qubits.len() >= resource.num_qubits() {
        return Err(Error::TrivialPartition {
            kept: alice_qubits.len(),
            total: resource.num_qubits(),
        });
    }
    let reduced = partial_trace(&density(resource), alice_qubits)?;
    von_neumann_entropy(&reduced)
}

/// The four superdense-coding schemes: the two-qubit Bell original plus the
/// three-qubit variants. The 2-bit schemes send one qubit; GHZ3 sends two
/// qubits carrying three bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SdcScheme {
    Bell2,
    Wn2,
    Ghz2,
    Ghz3,
}

impl SdcScheme {
    pub fn bits(&self) -> usize {
        match self {
            SdcScheme::Ghz3 => 3,
            _ => 2,
        }
    }

    pub fn message_count(&self) -> usize {
        1 << self.bits()
    }

    pub fn qubits_sent(&self) -> usize {
        match self {
            SdcScheme::Ghz3 => 2,
            _ => 1,
        }
    }

    pub fn shared_qubits(&self) -> usize {
        match self {
            SdcScheme::Bell2 => 2,
            _ => 3,
        }
    }

    pub fn alice_qubits(&self) -> &'static [usize] {
        match self {
            SdcScheme::Ghz3 => &[1, 2],
            _ => &[1],
        }
    }

    /// The state Alice and Bob share before encoding: a Bell pair, |η⁺ₙ⟩
    /// for the W scheme, or |ψ⁺₁⟩ (the GHZ state itself).
    pub fn shared_state(&self, params: Option<&WParams>) -> StateVector {
        match self {
            SdcScheme::Bell2 => make_bell(),
            SdcScheme::Wn2 => {
                let default = WParams::new(1.0, 0.0, 0.0).expect("valid defaults");
                let p = params.copied().unwrap_or(default);
                w_teleport_basis(&p).vectors()[0].state.clone()
            }
            SdcScheme::Ghz2 | SdcScheme::Ghz3 => make_ghz(),
        }
    }

    /// The complete basis Bob measures in.
    pub fn decode_basis(&self, params: Option<&WParams>) -> MeasurementBasis {
        match self {
            SdcScheme::Bell2 => states::bell_basis(),
            SdcScheme::Wn2 => {
                let default = WParams::new(1.0, 0.0, 0.0).expect("valid defaults");
                let p = params.copied().unwrap_or(default);
                w_teleport_basis(&p)
            }
            SdcScheme::Ghz2 => states::ghz_teleport_basis(),
            SdcScheme::Ghz3 => states::ghz_dense8_basis(),
        }
    }

    /// Outcome label carrying message `m`, in encoding order.
    pub fn message_label(&self, message: usize) -> Result<&'static str> {
        let table: &[&'static str] = match self {
            SdcScheme::Bell2 => &[
                labels::PHI_PLUS,
                labels::BELL_PSI_PLUS,
                labels::BELL_PSI_MINUS,
                labels::PHI_MINUS,
            ],
            SdcScheme::Wn2 => &[
                labels::ETA_PLUS,
                labels::XI_PLUS,
                labels::XI_MINUS,
                labels::ETA_MINUS,
            ],
            SdcScheme::Ghz2 => &[
                labels::PSI1_PLUS,
                labels::PSI2_PLUS,
                labels::PSI2_MINUS,
                labels::PSI1_MINUS,
            ],
            SdcScheme::Ghz3 => &[
                labels::PSI1_PLUS,
                labels::PSI2_PLUS,
                labels::PSI2_MINUS,
                labels::PSI1_MINUS,
                labels::PSI3_PLUS,
                labels::PSI3_MINUS,
                labels::PSI4_PLUS,
                labels::PSI4_MINUS,
            ],
        };
        table.get(message).copied().ok_or(Error::MessageOutOfRange {
            message,
            bits: self.bits(),
        })
    }

    /// Single-qubit encoding operations for message `m`, as (operator,
    /// target qubit) pairs applied in order.
    fn encode_ops(&self, message: usize) -> Result<Vec<(Operator, usize)>> {
        if message >= self.message_count() {
            return Err(Error::MessageOutOfRange {
                message,
                bits: self.bits(),
            });
        }
        let two_bit = |m: usize, qubit: usize| -> Vec<(Operator, usize)> {
            match m {
                0 => vec![],
                1 => vec![(Operator::sigma_x(), qubit)],
                2 => vec![(Operator::i_sigma_y(), qubit)],
                _ => vec![(Operator::sigma_z(), qubit)],
            }
        };
        Ok(match self {
            SdcScheme::Bell2 | SdcScheme::Wn2 | SdcScheme::Ghz2 => two_bit(message, 1),
            SdcScheme::Ghz3 => match message {
                0..=3 => two_bit(message, 1),
                4 => vec![(Operator::sigma_x(), 2)],
                5 => vec![(Operator::i_sigma_y(), 2)],
                6 => vec![(Operator::sigma_x(), 1), (Operator::sigma_x(), 2)],
                _ => vec![(Operator::sigma_x(), 1), (Operator::i_sigma_y(), 2)],
            },
        })
    }
}

impl std::fmt::Display for SdcScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SdcScheme::Bell2 => "bell2",
            SdcScheme::Wn2 => "wn2",
            SdcScheme::Ghz2 => "ghz2",
            SdcScheme::Ghz3 => "ghz3",
        })
    }
}

/// Encodes `message` by applying the scheme's unitaries to Alice's qubit(s)
/// of the shared state.
pub fn sdc_encode(scheme: SdcScheme, message: usize, shared: &StateVector) -> Result<StateVector> {
    if shared.num_qubits() != scheme.shared_qubits() {
        return Err(Error::SharedStateQubits {
            expected: scheme.shared_qubits(),
            actual: shared.num_qubits(),
        });
    }
    let mut state = shared.clone();
    for (op, qubit) in scheme.encode_ops(message)? {
        state = apply_local(&op, &[qubit], &state)?;
    }
    Ok(state)
}

/// Decodes a transmitted state by measuring it in the scheme's basis and
/// mapping the sampled label back to its message index. Landing on a
/// Gram–Schmidt filler means the channel does not match the decoder.
pub fn sdc_decode(
    scheme: SdcScheme,
    s: &StateVector,
    params: Option<&WParams>,
    seed: u64,
) -> Result<usize> {
    if s.num_qubits() != scheme.shared_qubits() {
        return Err(Error::SharedStateQubits {
            expected: scheme.shared_qubits(),
            actual: s.num_qubits(),
        });
    }
    let basis = scheme.decode_basis(params);
    let mut rng = protocol_rng(seed);
    let outcome = projective_measure(s, &basis, &mut rng)?;
    if outcome.index >= basis.labeled_count() {
        return Err(Error::AuxOutcomeSampled {
            label: outcome.label,
            probability: outcome.probability,
        });
    }
    for m in 0..scheme.message_count() {
        if scheme.message_label(m)? == outcome.label {
            return Ok(m);
        }
    }
    unreachable!("every labeled outcome appears in the message table");
}

/// Full record of one superdense-coding roundtrip.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseCodeTrace {
    pub scheme: SdcScheme,
    pub message: usize,
    pub encoded_label: String,
    pub decoded: usize,
    pub qubits_sent: usize,
    pub ebits_used: f64,
}

/// Encode → transmit → decode for one message, with ebit accounting across
/// the Alice|Bob cut of the shared state.
pub fn dense_code_roundtrip(
    scheme: SdcScheme,
    message: usize,
    params: Option<&WParams>,
    seed: u64,
) -> Result<DenseCodeTrace> {
    let shared = scheme.shared_state(params);
    let ebits_used = resource_accounting(&shared, scheme.alice_qubits())?;
    let encoded = sdc_encode(scheme, message, &shared)?;
    let decoded = sdc_decode(scheme, &encoded, params, seed)?;
    Ok(DenseCodeTrace {
        scheme,
        message,
        encoded_label: scheme.message_label(message)?.to_string(),
        decoded,
        qubits_sent: scheme.qubits_sent(),
        ebits_used,
    })
}

/// Report of the negative control: the prototype W state driven through the
/// W₁ measurement pairing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureDemoReport {
    pub trials: usize,
    pub seed: u64,
    pub mean_fidelity: f64,
    pub min_fidelity: f64,
    pub max_fidelity: f64,
    /// Largest total probability mass on auxiliary outcomes over all trials,
    /// computed from the exact branch decomposition. The prototype state
    /// stays inside the span of the four labeled vectors, so this mass is
    /// exactly zero; the mismatch shows up only as lost fidelity.
    pub max_aux_probability: f64,
    /// Mean fidelity of the control runs: the same inputs and seeds with the
    /// matched W₁ resource.
    pub matched_mean_fidelity: f64,
}

const FAILURE_DEMO_TRIALS: usize = 1000;
const FAILURE_DEMO_SEED: u64 = 42;

/// Runs 1000 seeded random inputs through teleportation with the prototype
/// W resource against the W₁ basis and correction table, demonstrating that
/// the prototype is not a perfect resource for this protocol: superposition
/// inputs lose fidelity. A matched-control run over the same inputs with
/// the W₁ resource reaches fidelity 1 on every trial.
pub fn prototype_w_failure_demo() -> Result<FailureDemoReport> {
    let p = WParams::new(1.0, 0.0, 0.0).expect("valid parameters");
    let basis = w_teleport_basis(&p);
    let table = CorrectionTable::w_standard();
    let prototype = make_w_prototype();
    let matched = make_w_n(&p);

    let mut seeds = SeedSequence::new(FAILURE_DEMO_SEED);
    let mut sum = 0.0;
    let mut min: f64 = f64::INFINITY;
    let mut max: f64 = f64::NEG_INFINITY;
    let mut max_aux: f64 = 0.0;
    let mut matched_sum = 0.0;

    for _ in 0..FAILURE_DEMO_TRIALS {
        let input_seed = seeds.next().expect("sequence is infinite");
        let run_seed = seeds.next().expect("sequence is infinite");
        let input = InputQubit::random(&mut protocol_rng(input_seed));

        let trace = teleport(&prototype, &basis, &table, &input, run_seed)?;
        sum += trace.fidelity;
        min = min.min(trace.fidelity);
        max = max.max(trace.fidelity);

        let joint = tensor(&input.to_state(), &prototype);
        let aux_mass: f64 = measurement_branches(&joint, &basis)?
            .iter()
            .skip(basis.labeled_count())
            .map(|o| o.probability)
            .sum();
        max_aux = max_aux.max(aux_mass);

        let control = teleport(&matched, &basis, &table, &input, run_seed)?;
        matched_sum += control.fidelity;
    }

    Ok(FailureDemoReport {
        trials: FAILURE_DEMO_TRIALS,
        seed: FAILURE_DEMO_SEED,
        mean_fidelity: sum / FAILURE_DEMO_TRIALS as f64,
        min_fidelity: min,
        max_fidelity: max,
        max_aux_probability: max_aux,
        matched_mean_fidelity: matched_sum / FAILURE_DEMO_TRIALS as f64,
    })
}
