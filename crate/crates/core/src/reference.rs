//! Published hardware results (five IBM devices, 16384 shots per circuit),
//! embedded for side-by-side comparison in reports. Simulated runs are never
//! expected to reproduce these numbers.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::circuit::SetupId;

const RAW: &str = include_str!("../data/reference.json");

/// One device row: class expectations in ascending Y order and the
/// polynomial result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub machine: String,
    pub n: usize,
    pub setup: SetupId,
    pub terms: Vec<f64>,
    pub term_error: f64,
    pub result: f64,
    pub result_error: f64,
}

/// One device row of the qubit-exchange test: ⟨XXY⟩, ⟨XYX⟩, ⟨YXX⟩.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExchangeRow {
    pub machine: String,
    pub values: Vec<f64>,
    pub term_error: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorResult {
    pub source: String,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestResult {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub label: String,
    pub lr: f64,
    pub qm: f64,
    pub earlier: Vec<PriorResult>,
    pub best: BestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub shots: u64,
    pub results: Vec<ReferenceRow>,
    pub exchange: Vec<ExchangeRow>,
    pub summary: Vec<SummaryRow>,
}

pub fn reference_data() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(RAW).expect("embedded reference table parses"))
}

/// Device rows for one qubit count and setup. Three-qubit rows are shared by
/// all setups.
pub fn rows_for(n: usize, setup: SetupId) -> Vec<ReferenceRow> {
    let setup = if n == 3 { SetupId::Mermin } else { setup };
    reference_data()
        .results
        .iter()
        .filter(|r| r.n == n && r.setup == setup)
        .cloned()
        .collect()
}
