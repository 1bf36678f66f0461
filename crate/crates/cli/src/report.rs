//! JSON report payloads. Every report carries the schema tag, the canonical
//! command echo, the seed and a status field; identical command lines with
//! identical seeds serialize to byte-identical JSON.

use std::collections::BTreeMap;

use serde::Serialize;
use wtangle::entanglement::EntanglementReport;
use wtangle::protocols::{DenseCodeTrace, TeleportTrace};
use wtangle::states::WParams;

pub const SCHEMA: &str = "wtangle/1";

#[derive(Serialize)]
pub struct TeleportReport {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub status: &'static str,
    pub resource: String,
    pub basis: String,
    pub params: Option<WParams>,
    pub input: String,
    pub trials: usize,
    pub aggregates: TeleportAggregates,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entanglement: Option<EntanglementReport>,
    pub traces: Vec<TeleportTrace>,
}

#[derive(Serialize)]
pub struct TeleportAggregates {
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
    /// Fraction of trials with fidelity ≥ 1 − 1e-9.
    pub success_rate: f64,
    pub aux_outcomes: usize,
    pub outcome_histogram: BTreeMap<String, usize>,
}

#[derive(Serialize)]
pub struct DensecodeReport {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub status: &'static str,
    pub scheme: String,
    pub params: Option<WParams>,
    pub aggregates: DensecodeAggregates,
    pub traces: Vec<DenseCodeTrace>,
}

#[derive(Serialize)]
pub struct DensecodeAggregates {
    pub messages: usize,
    pub recovered: usize,
    pub success_rate: f64,
    pub qubits_sent: usize,
    pub ebits_used: f64,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub status: &'static str,
    pub state: String,
    pub report: EntanglementReport,
}

#[derive(Serialize)]
pub struct BasesReport {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub status: &'static str,
    pub family: String,
    pub params: Option<WParams>,
    pub vectors: usize,
    pub labeled: usize,
    pub max_deviation: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub schema: &'static str,
    pub status: &'static str,
    pub error: String,
}

pub fn print_json<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("reports serialize")
    );
}
