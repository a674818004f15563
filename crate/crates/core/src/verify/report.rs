use std::collections::BTreeMap;

use serde::Serialize;

use crate::charops::Constituent;
use crate::clifford::ChainLedger;

pub const REPORT_SCHEMA: u32 = 1;

/// Everything needed to reproduce a failing record in isolation.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    /// The group in group-file format.
    pub group_file: String,
    pub chi: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<usize>,
    pub decomposition: Vec<Constituent>,
    pub detail: String,
}

/// One character (or ordered pair of characters) checked.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Record {
    pub chi: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<usize>,
    pub degree: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    /// Set when the record falls outside the hypothesis and was not checked.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ledger: Option<ChainLedger>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupResult {
    pub group: String,
    pub order: usize,
    /// The prime, or 1 for the trivial group.
    pub p: u64,
    pub records: Vec<Record>,
    /// Counts of η over the characters this check classifies (η → count).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_distribution: Option<BTreeMap<usize, usize>>,
    pub pass: bool,
}

impl GroupResult {
    pub fn new(group: String, order: usize, p: u64, records: Vec<Record>) -> Self {
        let pass = records.iter().all(|r| r.pass);
        Self {
            group,
            order,
            p,
            records,
            eta_distribution: None,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub check: String,
    pub results: Vec<GroupResult>,
    pub pass: bool,
    /// Wall-clock time, omitted (null) when timing is disabled.
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: &str, results: Vec<GroupResult>, elapsed_ms: Option<u64>) -> Self {
        let pass = results.iter().all(|r| r.pass);
        Self {
            schema: REPORT_SCHEMA,
            check: check.to_string(),
            results,
            pass,
            elapsed_ms,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = (&GroupResult, &Record)> {
        self.results
            .iter()
            .flat_map(|g| g.records.iter().map(move |r| (g, r)))
            .filter(|(_, r)| !r.pass)
    }

    pub fn record_count(&self) -> usize {
        self.results.iter().map(|g| g.records.len()).sum()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
