//! `summary.csv` rows and the `report` aggregation.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use trilo::experiments::{SweepPoint, TrialRecord};

use crate::output::TRIALS;

#[derive(Debug, Serialize)]
pub struct SummaryRow {
    pub n: u32,
    pub c: f64,
    pub p: f64,
    pub trials: u64,
    pub sat: u64,
    pub unsat: u64,
    pub indeterminate: u64,
    pub estimate: Option<f64>,
    pub ci_low: f64,
    pub ci_high: f64,
    pub union_bound: f64,
}

impl From<&SweepPoint> for SummaryRow {
    fn from(pt: &SweepPoint) -> Self {
        SummaryRow {
            n: pt.n,
            c: pt.c,
            p: pt.p,
            trials: pt.trials_completed,
            sat: pt.sat_count,
            unsat: pt.unsat_count,
            indeterminate: pt.indeterminate_count,
            estimate: pt.estimate,
            ci_low: pt.ci_low,
            ci_high: pt.ci_high,
            union_bound: pt.union_bound,
        }
    }
}

struct Group {
    n: u32,
    c: f64,
    p: f64,
    m: Option<u64>,
    sat: u64,
    unsat: u64,
    indeterminate: u64,
}

/// Re-tallies the trial records found under each directory into one row per
/// `(n, c, p, m)`, in order of first appearance. Quotient runs count
/// refutations as satisfiable and certificates as unsatisfiable.
pub fn aggregate(dirs: &[impl AsRef<Path>]) -> Result<Vec<SummaryRow>> {
    let mut groups: Vec<Group> = Vec::new();
    for dir in dirs {
        let path = dir.as_ref().join(TRIALS);
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        for (i, line) in text.lines().enumerate() {
            let value: serde_json::Value = serde_json::from_str(line)
                .with_context(|| format!("{}:{}: malformed JSON", path.display(), i + 1))?;
            if value.get("record_type").and_then(|v| v.as_str()) != Some("trial") {
                continue;
            }
            let t: TrialRecord = serde_json::from_value(value)
                .with_context(|| format!("{}:{}: malformed trial record", path.display(), i + 1))?;
            let idx = match groups.iter().position(|g| {
                g.n == t.n
                    && g.c.to_bits() == t.c.to_bits()
                    && g.p.to_bits() == t.p.to_bits()
                    && g.m == t.m
            }) {
                Some(idx) => idx,
                None => {
                    groups.push(Group {
                        n: t.n,
                        c: t.c,
                        p: t.p,
                        m: t.m,
                        sat: 0,
                        unsat: 0,
                        indeterminate: 0,
                    });
                    groups.len() - 1
                }
            };
            let g = &mut groups[idx];
            match t.status.as_str() {
                "satisfiable" | "refuted" => g.sat += 1,
                "unsatisfiable" | "certified" => g.unsat += 1,
                "indeterminate" | "inconclusive" => g.indeterminate += 1,
                other => bail!("{}:{}: unknown status `{other}`", path.display(), i + 1),
            }
        }
    }
    groups
        .iter()
        .map(|g| {
            let pt = SweepPoint::from_counts(g.n, g.c, g.p, g.m, g.sat, g.unsat, g.indeterminate)?;
            Ok(SummaryRow::from(&pt))
        })
        .collect()
}
