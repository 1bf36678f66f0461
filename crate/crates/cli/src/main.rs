//! `wtangle` — run teleportation and superdense-coding protocols over
//! three-qubit entangled resources, analyze entanglement, and verify
//! measurement bases.
//!
//! Exit codes: 0 success, 1 protocol/verification failure, 2 usage or parse
//! error. With `--json` a machine-readable report goes to stdout, carrying a
//! `status` field even on failure; identical command lines with identical
//! seeds produce byte-identical JSON.

mod input;
mod report;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use wtangle::entanglement::{analyze, slocc_classify};
use wtangle::protocols::{
    dense_code_roundtrip, teleport, CorrectionTable, InputQubit, SdcScheme, TeleportTrace,
};
use wtangle::qcore::rng::{protocol_rng, SeedSequence};
use wtangle::qcore::StateVector;
use wtangle::states::{
    self, ghz_dense8_basis, ghz_teleport_basis, make_ghz, make_w_n, make_w_prototype,
    w_teleport_basis, MeasurementBasis, WParams,
};

use crate::report::{print_json, SCHEMA};

/// Fidelity threshold below which a teleport run counts as failed.
const SUCCESS_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "wtangle", version, about = "State-vector protocol engine for W- and GHZ-state teleportation and superdense coding")]
struct Cli {
    /// Emit a JSON report on stdout instead of the human summary.
    #[arg(long, global = true)]
    json: bool,

    /// Master seed; per-trial seeds derive from it deterministically.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Verification tolerance (bases: max Gram deviation, default 1e-10;
    /// analyze: classification tolerance, default 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Teleport an unknown qubit through a shared three-qubit resource.
    Teleport(TeleportArgs),
    /// Superdense-coding roundtrips: encode, transmit, decode.
    Densecode(DensecodeArgs),
    /// Entanglement measures and SLOCC class of a three-qubit state.
    Analyze(AnalyzeArgs),
    /// Orthonormality check for a measurement-basis family.
    Bases(BasesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ResourceKind {
    Ghz,
    Wn,
    W1,
    WPrototype,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisKind {
    Ghz,
    Wn,
    W1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeKind {
    Wn2,
    Ghz2,
    Ghz3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Ghz,
    Ghz8,
    Wn,
}

#[derive(Args)]
#[command(group = ArgGroup::new("input").required(true).args(["alpha", "random_input"]), allow_negative_numbers = true)]
struct TeleportArgs {
    /// Shared resource state.
    #[arg(long, value_enum, default_value_t = ResourceKind::Ghz)]
    resource: ResourceKind,

    /// W-family weight n ≥ 0 (resources/bases of kind wn).
    #[arg(long, default_value_t = 1.0)]
    n: f64,

    /// W-family phase γ in radians.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,

    /// W-family phase δ in radians.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,

    /// Measurement basis; defaults to the resource's matched basis
    /// (w-prototype has none and defaults to w1).
    #[arg(long, value_enum)]
    basis: Option<BasisKind>,

    /// Amplitude of |0⟩, as `re` or `re±imi`.
    #[arg(long, requires = "beta")]
    alpha: Option<String>,

    /// Amplitude of |1⟩, as `re` or `re±imi`.
    #[arg(long, requires = "alpha")]
    beta: Option<String>,

    /// Draw a fresh Haar-random input qubit for every trial.
    #[arg(long, conflicts_with_all = ["alpha", "beta"])]
    random_input: bool,

    /// Number of teleportation runs.
    #[arg(long, default_value_t = 100)]
    trials: usize,

    /// Include the resource state's entanglement report.
    #[arg(long)]
    analyze: bool,
}

#[derive(Args)]
#[command(group = ArgGroup::new("what").required(true).args(["message", "all"]), allow_negative_numbers = true)]
struct DensecodeArgs {
    /// Coding scheme.
    #[arg(long, value_enum)]
    scheme: SchemeKind,

    /// W-family weight n ≥ 0 (wn2 scheme).
    #[arg(long, default_value_t = 1.0)]
    n: f64,

    /// W-family phase γ in radians.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,

    /// W-family phase δ in radians.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,

    /// Single message to roundtrip.
    #[arg(long)]
    message: Option<usize>,

    /// Roundtrip every message of the scheme.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Preset (ghz | w | w1 | wn(n,gamma,delta)) or path to a JSON file
    /// ({"preset": ...} or {"amps": [[re, im] × 8]}).
    #[arg(long)]
    state: String,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct BasesArgs {
    /// Basis family to verify.
    #[arg(long, value_enum)]
    family: FamilyKind,

    /// W-family weight n ≥ 0 (wn family).
    #[arg(long, default_value_t = 1.0)]
    n: f64,

    /// W-family phase γ in radians.
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,

    /// W-family phase δ in radians.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code: u8 = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            if json {
                print_json(&report::ErrorReport {
                    schema: SCHEMA,
                    status: "error",
                    error: message.clone(),
                });
            }
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Teleport(args) => cmd_teleport(&cli, args),
        Command::Densecode(args) => cmd_densecode(&cli, args),
        Command::Analyze(args) => cmd_analyze(&cli, args),
        Command::Bases(args) => cmd_bases(&cli, args),
    }
}

fn resource_kind_name(kind: ResourceKind) -> &'static str {
    match kind {
        ResourceKind::Ghz => "ghz",
        ResourceKind::Wn => "wn",
        ResourceKind::W1 => "w1",
        ResourceKind::WPrototype => "w-prototype",
    }
}

fn basis_kind_name(kind: BasisKind) -> &'static str {
    match kind {
        BasisKind::Ghz => "ghz",
        BasisKind::Wn => "wn",
        BasisKind::W1 => "w1",
    }
}

fn parse_input_qubit(alpha_text: &str, beta_text: &str) -> Result<InputQubit, String> {
    let alpha = input::parse_complex(alpha_text)?;
    let beta = input::parse_complex(beta_text)?;
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > input::RENORM_TOL {
        return Err(format!(
            "input qubit is not normalizable: |α|²+|β|² deviates from 1 by {deviation:.3e}"
        ));
    }
    if deviation > 1e-12 {
        eprintln!("warning: renormalizing input qubit (norm² off by {deviation:.3e})");
    }
    let scale = norm_sqr.sqrt().recip();
    InputQubit::new(alpha * scale, beta * scale).map_err(|e| e.to_string())
}

fn cmd_teleport(cli: &Cli, args: &TeleportArgs) -> Result<u8, String> {
    if args.trials == 0 {
        return Err("at least one trial is required".into());
    }
    let flag_params = WParams::new(args.n, args.gamma, args.delta).map_err(|e| e.to_string())?;
    let w1_params = WParams::new(1.0, 0.0, 0.0).expect("valid");

    let (resource, resource_params, default_basis): (StateVector, Option<WParams>, BasisKind) =
        match args.resource {
            ResourceKind::Ghz => (make_ghz(), None, BasisKind::Ghz),
            ResourceKind::Wn => (make_w_n(&flag_params), Some(flag_params), BasisKind::Wn),
            ResourceKind::W1 => (make_w_n(&w1_params), Some(w1_params), BasisKind::W1),
            ResourceKind::WPrototype => (make_w_prototype(), None, BasisKind::W1),
        };
    let basis_kind = args.basis.unwrap_or(default_basis);
    let (basis, table): (MeasurementBasis, CorrectionTable) = match basis_kind {
        BasisKind::Ghz => (ghz_teleport_basis(), CorrectionTable::ghz_standard()),
        BasisKind::Wn => (w_teleport_basis(&flag_params), CorrectionTable::w_standard()),
        BasisKind::W1 => (w_teleport_basis(&w1_params), CorrectionTable::w_standard()),
    };

    let fixed_input = match (&args.alpha, &args.beta) {
        (Some(a), Some(b)) => Some(parse_input_qubit(a, b)?),
        _ => None,
    };
    let input_echo = match (&args.alpha, &args.beta) {
        (Some(a), Some(b)) => format!("--alpha {a} --beta {b}"),
        _ => "--random-input".to_string(),
    };

    let resource_name = resource_kind_name(args.resource);
    let command = format!(
        "teleport --resource {} --n {} --gamma {} --delta {} --basis {} {} --trials {} --seed {}",
        resource_name,
        args.n,
        args.gamma,
        args.delta,
        basis_kind_name(basis_kind),
        input_echo,
        args.trials,
        cli.seed
    );

    let mut seeds = SeedSequence::new(cli.seed);
    let mut traces: Vec<TeleportTrace> = Vec::with_capacity(args.trials);
    for _ in 0..args.trials {
        let input = match &fixed_input {
            Some(q) => *q,
            None => InputQubit::random(&mut protocol_rng(seeds.next().expect("infinite"))),
        };
        let run_seed = seeds.next().expect("infinite");
        let mut trace =
            teleport(&resource, &basis, &table, &input, run_seed).map_err(|e| e.to_string())?;
        trace.resource_name = resource_name.to_string();
        trace.params = resource_params;
        traces.push(trace);
    }

    let min_fidelity = traces.iter().map(|t| t.fidelity).fold(f64::INFINITY, f64::min);
    let mean_fidelity = traces.iter().map(|t| t.fidelity).sum::<f64>() / traces.len() as f64;
    let successes = traces
        .iter()
        .filter(|t| t.fidelity >= 1.0 - SUCCESS_TOL)
        .count();
    let aux_outcomes = traces.iter().filter(|t| t.classical_bits.is_none()).count();
    let mut outcome_histogram: BTreeMap<String, usize> = BTreeMap::new();
    for t in &traces {
        *outcome_histogram.entry(t.outcome_label.clone()).or_default() += 1;
    }
    let ok = min_fidelity >= 1.0 - SUCCESS_TOL;

    let entanglement = if args.analyze {
        Some(analyze(&resource).map_err(|e| e.to_string())?)
    } else {
        None
    };

    let payload = report::TeleportReport {
        schema: SCHEMA,
        command,
        seed: cli.seed,
        status: if ok { "ok" } else { "fail" },
        resource: resource_name.to_string(),
        basis: basis_kind_name(basis_kind).to_string(),
        params: resource_params,
        input: input_echo,
        trials: args.trials,
        aggregates: report::TeleportAggregates {
            min_fidelity,
            mean_fidelity,
            success_rate: successes as f64 / traces.len() as f64,
            aux_outcomes,
            outcome_histogram,
        },
        entanglement,
        traces,
    };

    if cli.json {
        print_json(&payload);
    } else {
        println!(
            "teleport: resource={} basis={} {} trials={} seed={}",
            payload.resource, payload.basis, payload.input, payload.trials, payload.seed
        );
        if let Some(p) = &payload.params {
            println!("params: n={} gamma={} delta={}", p.n, p.gamma, p.delta);
        }
        let histogram: Vec<String> = payload
            .aggregates
            .outcome_histogram
            .iter()
            .map(|(label, count)| format!("{label}={count}"))
            .collect();
        println!("outcomes: {}", histogram.join(" "));
        println!(
            "fidelity: min={:.12} mean={:.12} success_rate={:.4} aux_outcomes={}",
            payload.aggregates.min_fidelity,
            payload.aggregates.mean_fidelity,
            payload.aggregates.success_rate,
            payload.aggregates.aux_outcomes
        );
        if let Some(ent) = &payload.entanglement {
            println!(
                "resource entanglement: C1(23)={:.6} tangle={:.6} class={}",
                ent.concurrence_1_23, ent.tangle, ent.slocc_class
            );
        }
        println!("status: {}", payload.status);
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_densecode(cli: &Cli, args: &DensecodeArgs) -> Result<u8, String> {
    let params = WParams::new(args.n, args.gamma, args.delta).map_err(|e| e.to_string())?;
    let scheme = match args.scheme {
        SchemeKind::Wn2 => SdcScheme::Wn2,
        SchemeKind::Ghz2 => SdcScheme::Ghz2,
        SchemeKind::Ghz3 => SdcScheme::Ghz3,
    };
    let messages: Vec<usize> = match (args.message, args.all) {
        (Some(m), false) => {
            if m >= scheme.message_count() {
                return Err(format!(
                    "message {m} out of range for {scheme} (0..{})",
                    scheme.message_count()
                ));
            }
            vec![m]
        }
        _ => (0..scheme.message_count()).collect(),
    };

    let what = match args.message {
        Some(m) if !args.all => format!("--message {m}"),
        _ => "--all".to_string(),
    };
    let command = format!(
        "densecode --scheme {scheme} --n {} --gamma {} --delta {} {what} --seed {}",
        args.n, args.gamma, args.delta, cli.seed
    );

    let scheme_params = (scheme == SdcScheme::Wn2).then_some(params);
    let mut seeds = SeedSequence::new(cli.seed);
    let mut traces = Vec::with_capacity(messages.len());
    for &m in &messages {
        let trace = dense_code_roundtrip(scheme, m, scheme_params.as_ref(), seeds.next().expect("infinite"))
            .map_err(|e| e.to_string())?;
        traces.push(trace);
    }

    let recovered = traces.iter().filter(|t| t.decoded == t.message).count();
    let ok = recovered == traces.len();
    let payload = report::DensecodeReport {
        schema: SCHEMA,
        command,
        seed: cli.seed,
        status: if ok { "ok" } else { "fail" },
        scheme: scheme.to_string(),
        params: scheme_params,
        aggregates: report::DensecodeAggregates {
            messages: traces.len(),
            recovered,
            success_rate: recovered as f64 / traces.len() as f64,
            qubits_sent: scheme.qubits_sent(),
            ebits_used: traces.first().map_or(0.0, |t| t.ebits_used),
        },
        traces,
    };

    if cli.json {
        print_json(&payload);
    } else {
        println!(
            "densecode: scheme={} seed={}",
            payload.scheme, payload.seed
        );
        if let Some(p) = &payload.params {
            println!("params: n={} gamma={} delta={}", p.n, p.gamma, p.delta);
        }
        for t in &payload.traces {
            println!(
                "message {} -> {} -> decoded {} {}",
                t.message,
                t.encoded_label,
                t.decoded,
                if t.decoded == t.message { "ok" } else { "MISMATCH" }
            );
        }
        println!(
            "recovered {}/{}, qubits sent {}, ebits used {:.10}",
            payload.aggregates.recovered,
            payload.aggregates.messages,
            payload.aggregates.qubits_sent,
            payload.aggregates.ebits_used
        );
        println!("status: {}", payload.status);
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<u8, String> {
    let spec = input::parse_state_spec(&args.state)?;
    let (state, description) = input::load_state(&spec)?;
    if state.num_qubits() != 3 {
        return Err(format!(
            "analyze needs a three-qubit state, got {} qubits",
            state.num_qubits()
        ));
    }
    let mut ent = analyze(&state).map_err(|e| e.to_string())?;
    if let Some(tol) = cli.tol {
        ent.slocc_class = slocc_classify(&state, tol).map_err(|e| e.to_string())?;
    }

    let command = match cli.tol {
        Some(tol) => format!("analyze --state {} --tol {tol} --seed {}", args.state, cli.seed),
        None => format!("analyze --state {} --seed {}", args.state, cli.seed),
    };
    let payload = report::AnalyzeReport {
        schema: SCHEMA,
        command,
        seed: cli.seed,
        status: "ok",
        state: description,
        report: ent,
    };

    if cli.json {
        print_json(&payload);
    } else {
        println!("state: {}", payload.state);
        let entropies: Vec<String> = payload
            .report
            .entropy_bits_per_cut
            .iter()
            .map(|(cut, bits)| format!("{cut}={bits:.8}"))
            .collect();
        println!("entropy (bits): {}", entropies.join(" "));
        println!(
            "concurrence: C12={:.8} C13={:.8} C23={:.8} C1(23)={:.8}",
            payload.report.concurrence_pairs.c12,
            payload.report.concurrence_pairs.c13,
            payload.report.concurrence_pairs.c23,
            payload.report.concurrence_1_23
        );
        println!(
            "tangle: {:.8}  monogamy slack: {:.3e}",
            payload.report.tangle, payload.report.monogamy_slack
        );
        println!("class: {}", payload.report.slocc_class);
    }
    Ok(0)
}

fn cmd_bases(cli: &Cli, args: &BasesArgs) -> Result<u8, String> {
    let tol = cli.tol.unwrap_or(1e-10);
    let (basis, family, params): (MeasurementBasis, &str, Option<WParams>) = match args.family {
        FamilyKind::Ghz => (ghz_teleport_basis(), "ghz", None),
        FamilyKind::Ghz8 => (ghz_dense8_basis(), "ghz8", None),
        FamilyKind::Wn => {
            let p = WParams::new(args.n, args.gamma, args.delta).map_err(|e| e.to_string())?;
            (w_teleport_basis(&p), "wn", Some(p))
        }
    };
    let states_list: Vec<StateVector> = basis.vectors().iter().map(|v| v.state.clone()).collect();
    let check = states::check_orthonormal(&states_list, tol).map_err(|e| e.to_string())?;

    let command = format!(
        "bases --family {family} --n {} --gamma {} --delta {} --tol {tol} --seed {}",
        args.n, args.gamma, args.delta, cli.seed
    );
    let payload = report::BasesReport {
        schema: SCHEMA,
        command,
        seed: cli.seed,
        status: if check.pass { "ok" } else { "fail" },
        family: family.to_string(),
        params,
        vectors: basis.vectors().len(),
        labeled: basis.labeled_count(),
        max_deviation: check.max_deviation,
        tol,
        pass: check.pass,
    };

    if cli.json {
        print_json(&payload);
    } else {
        println!("family: {}", payload.family);
        if let Some(p) = &payload.params {
            println!("params: n={} gamma={} delta={}", p.n, p.gamma, p.delta);
        }
        println!("vectors: {} ({} labeled)", payload.vectors, payload.labeled);
        println!(
            "max Gram deviation: {:.3e} (tol {:.1e})",
            payload.max_deviation, payload.tol
        );
        println!("status: {}", payload.status);
    }
    Ok(if check.pass { 0 } else { 1 })
}
