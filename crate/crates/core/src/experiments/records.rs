use serde::{Deserialize, Serialize};

use super::sweep::SweepPoint;

/// One line of a `trials.jsonl` file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record_type", rename_all = "snake_case")]
pub enum ExperimentRecord {
    Trial(TrialRecord),
    Point(PointRecord),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    /// `sweep`, `threshold` or `quotient`.
    pub experiment: String,
    pub n: u32,
    pub c: f64,
    pub p: f64,
    pub m: Option<u64>,
    pub seed: u64,
    pub trial_index: u64,
    pub relators: usize,
    pub status: String,
    pub decisions: u64,
    /// Wall-clock solve time; left empty unless timing was requested, since
    /// it would make otherwise identical runs differ.
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub experiment: String,
    #[serde(flatten)]
    pub point: SweepPoint,
}
