use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::sweep::{run_sweep, Model, PointParam, SweepConfig, SweepPoint, SweepRun};
use crate::error::{Error, Result};
use crate::sat::Engine;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    pub n: u32,
    pub c_lo: f64,
    pub c_hi: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub engine: Engine,
    pub budget: Option<Duration>,
    /// Bisection stops once the bracket is narrower than this.
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdEstimate {
    /// Midpoint of the final bracket.
    pub value: f64,
    pub bracket: (f64, f64),
    /// Endpoints, then every bisection midpoint, then the returned value.
    pub trace: SweepRun,
}

impl ThresholdEstimate {
    pub fn indeterminate(&self) -> u64 {
        self.trace.indeterminate()
    }
}

fn evaluate(cfg: &ThresholdConfig, c: f64, jobs: usize) -> Result<SweepRun> {
    run_sweep(
        &SweepConfig {
            n: cfg.n,
            params: vec![PointParam::C(c)],
            trials: cfg.trials,
            master_seed: cfg.master_seed,
            model: Model::Binomial,
            engine: cfg.engine,
            budget: cfg.budget,
        },
        jobs,
    )
}

fn estimate_of(point: &SweepPoint) -> Result<f64> {
    point
        .estimate
        .ok_or_else(|| Error::InvalidParameter(format!("every trial at c={} timed out", point.c)))
}

/// Bisection on `c` for the density where the empirical satisfiability
/// probability crosses 1/2. Requires the estimate to be above 1/2 at `c_lo`
/// and below 1/2 at `c_hi`.
pub fn estimate_threshold(cfg: &ThresholdConfig, jobs: usize) -> Result<ThresholdEstimate> {
    if !(cfg.c_lo > 0.0 && cfg.c_lo < cfg.c_hi) {
        return Err(Error::InvalidParameter(format!(
            "bracket ({}, {}) must satisfy 0 < c_lo < c_hi",
            cfg.c_lo, cfg.c_hi
        )));
    }
    if !(cfg.width > 0.0) {
        return Err(Error::InvalidParameter("width must be positive".into()));
    }
    let mut trace = SweepRun {
        points: Vec::new(),
        trials: Vec::new(),
    };
    let mut absorb = |run: SweepRun| -> Result<f64> {
        let e = estimate_of(&run.points[0])?;
        trace.points.extend(run.points);
        trace.trials.extend(run.trials);
        Ok(e)
    };
    let lo_est = absorb(evaluate(cfg, cfg.c_lo, jobs)?)?;
    let hi_est = absorb(evaluate(cfg, cfg.c_hi, jobs)?)?;
    if !(lo_est > 0.5 && hi_est < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "bracket does not straddle 1/2: estimate {lo_est} at c={}, {hi_est} at c={}",
            cfg.c_lo, cfg.c_hi
        )));
    }
    let (mut lo, mut hi) = (cfg.c_lo, cfg.c_hi);
    while hi - lo >= cfg.width {
        let mid = 0.5 * (lo + hi);
        if absorb(evaluate(cfg, mid, jobs)?)? >= 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    absorb(evaluate(cfg, value, jobs)?)?;
    Ok(ThresholdEstimate {
        value,
        bracket: (lo, hi),
        trace,
    })
}
