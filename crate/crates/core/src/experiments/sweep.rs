use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::bounds::{union_bound, union_bound_binomial};
use super::parallel::run_indexed;
use super::records::{ExperimentRecord, PointRecord, TrialRecord};
use super::stats::{ceil_tolerant, wilson_interval, Z_95};
use crate::encoding::encode_presentation;
use crate::error::{Error, Result};
use crate::group_words::{sample_binomial, sample_uniform_m, GeneratorSet, Presentation};
use crate::sat::{solve_with, Engine, SolveOptions, Status};
use crate::seed::mix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Each word of `W_3` independently with probability `p`.
    #[default]
    Binomial,
    /// `m = ⌈8pn³⌉` independent uniform words.
    UniformM,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binomial" => Ok(Model::Binomial),
            "uniform-m" | "uniform_m" => Ok(Model::UniformM),
            other => Err(Error::InvalidParameter(format!("unknown model `{other}`"))),
        }
    }
}

/// A sweep point given by density `c` (`p = c n⁻²`) or directly by `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointParam {
    C(f64),
    P(f64),
}

impl PointParam {
    pub fn resolve(self, n: u32) -> (f64, f64) {
        let n2 = f64::from(n) * f64::from(n);
        match self {
            PointParam::C(c) => (c, c / n2),
            PointParam::P(p) => (p * n2, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: u32,
    pub params: Vec<PointParam>,
    pub trials: u64,
    pub master_seed: u64,
    pub model: Model,
    pub engine: Engine,
    /// Per-instance solver budget.
    pub budget: Option<Duration>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::ZeroGenerators(0));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        for &param in &self.params {
            let (c, p) = param.resolve(self.n);
            if !(c >= 0.0 && c.is_finite()) {
                return Err(Error::InvalidParameter(format!("bad density c={c}")));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        Ok(())
    }
}

/// Relator count used by the uniform model for inclusion probability `p`.
pub fn uniform_m_count(n: u32, p: f64) -> u64 {
    ceil_tolerant(8.0 * p * f64::from(n).powi(3))
}

/// Samples one presentation of the chosen model.
pub fn sample_for_model(n: u32, model: Model, p: f64, seed: u64) -> Result<Presentation> {
    match model {
        Model::Binomial => sample_binomial(n, p, seed),
        Model::UniformM => {
            sample_uniform_m(n, uniform_m_count(n, p) as usize, seed)?.to_presentation(n)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial_index: u64,
    pub seed: u64,
    pub relators: usize,
    pub status: Status,
    pub decisions: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub n: u32,
    pub c: f64,
    pub p: f64,
    pub m: Option<u64>,
    pub trials_completed: u64,
    pub sat_count: u64,
    pub unsat_count: u64,
    pub indeterminate_count: u64,
    /// `sat / (sat + unsat)`; empty when every trial timed out.
    pub estimate: Option<f64>,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Rigorous upper bound on `P(Φ_R satisfiable)` for this model.
    pub union_bound: f64,
}

impl SweepPoint {
    pub fn from_counts(
        n: u32,
        c: f64,
        p: f64,
        m: Option<u64>,
        sat: u64,
        unsat: u64,
        indeterminate: u64,
    ) -> Result<Self> {
        let decided = sat + unsat;
        let (ci_low, ci_high) = wilson_interval(sat, decided, Z_95);
        let union_bound = match m {
            Some(m) => union_bound(n, m)?,
            None => union_bound_binomial(n, p)?,
        };
        Ok(SweepPoint {
            n,
            c,
            p,
            m,
            trials_completed: decided + indeterminate,
            sat_count: sat,
            unsat_count: unsat,
            indeterminate_count: indeterminate,
            estimate: (decided > 0).then(|| sat as f64 / decided as f64),
            ci_low,
            ci_high,
            union_bound,
        })
    }

    fn from_trials(
        n: u32,
        c: f64,
        p: f64,
        m: Option<u64>,
        trials: &[TrialOutcome],
    ) -> Result<Self> {
        let count = |s: Status| trials.iter().filter(|t| t.status == s).count() as u64;
        SweepPoint::from_counts(
            n,
            c,
            p,
            m,
            count(Status::Satisfiable),
            count(Status::Unsatisfiable),
            count(Status::Indeterminate),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRun {
    pub points: Vec<SweepPoint>,
    /// Per-point trial outcomes, in trial-index order.
    pub trials: Vec<Vec<TrialOutcome>>,
}

impl SweepRun {
    pub fn indeterminate(&self) -> u64 {
        self.points.iter().map(|p| p.indeterminate_count).sum()
    }

    /// Trial records of each point followed by its summary record.
    pub fn records(&self, experiment: &str, record_timing: bool) -> Vec<ExperimentRecord> {
        let mut out = Vec::new();
        for (point, trials) in self.points.iter().zip(&self.trials) {
            for t in trials {
                out.push(ExperimentRecord::Trial(TrialRecord {
                    experiment: experiment.to_string(),
                    n: point.n,
                    c: point.c,
                    p: point.p,
                    m: point.m,
                    seed: t.seed,
                    trial_index: t.trial_index,
                    relators: t.relators,
                    status: t.status.to_string(),
                    decisions: t.decisions,
                    elapsed_ms: record_timing.then(|| t.elapsed.as_secs_f64() * 1e3),
                }));
            }
            out.push(ExperimentRecord::Point(PointRecord {
                experiment: experiment.to_string(),
                point: point.clone(),
            }));
        }
        out
    }
}

fn run_trial(
    n: u32,
    model: Model,
    p: f64,
    seed: u64,
    index: u64,
    opts: SolveOptions,
) -> Result<TrialOutcome> {
    let pres = sample_for_model(n, model, p, seed)?;
    let formula = encode_presentation(&pres, &GeneratorSet::all(n))?;
    let verdict = solve_with(&formula, opts);
    Ok(TrialOutcome {
        trial_index: index,
        seed,
        relators: pres.len(),
        status: verdict.status,
        decisions: verdict.stats.decisions,
        elapsed: verdict.stats.elapsed,
    })
}

/// Runs every point of the sweep. Trial `t` at every point uses seed
/// `mix(master_seed, t)`; points therefore share their random streams.
pub fn run_sweep(cfg: &SweepConfig, jobs: usize) -> Result<SweepRun> {
    cfg.validate()?;
    let trials = cfg.trials as usize;
    let opts = SolveOptions {
        engine: cfg.engine,
        budget: cfg.budget,
    };
    let resolved: Vec<(f64, f64)> = cfg.params.iter().map(|p| p.resolve(cfg.n)).collect();
    let outcomes = run_indexed(jobs, resolved.len() * trials, |k| {
        let (_, p) = resolved[k / trials];
        let t = (k % trials) as u64;
        run_trial(cfg.n, cfg.model, p, mix(cfg.master_seed, t), t, opts)
    });
    let mut outcomes = outcomes.into_iter();
    let mut run = SweepRun {
        points: Vec::with_capacity(resolved.len()),
        trials: Vec::with_capacity(resolved.len()),
    };
    for &(c, p) in &resolved {
        let chunk: Vec<TrialOutcome> = outcomes.by_ref().take(trials).collect::<Result<_>>()?;
        let m = (cfg.model == Model::UniformM).then(|| uniform_m_count(cfg.n, p));
        run.points
            .push(SweepPoint::from_trials(cfg.n, c, p, m, &chunk)?);
        run.trials.push(chunk);
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u32, params: Vec<PointParam>, trials: u64) -> SweepConfig {
        SweepConfig {
            n,
            params,
            trials,
            master_seed: 11,
            model: Model::Binomial,
            engine: Engine::Cdcl,
            budget: None,
        }
    }

    #[test]
    fn zero_probability_is_always_satisfiable() {
        for n in [1, 5, 40] {
            let run = run_sweep(&cfg(n, vec![PointParam::P(0.0)], 10), 2).unwrap();
            assert_eq!(run.points[0].estimate, Some(1.0));
            assert_eq!(run.points[0].sat_count, 10);
        }
    }

    #[test]
    fn point_invariants() {
        let run = run_sweep(
            &cfg(
                30,
                vec![PointParam::C(0.1), PointParam::C(0.3), PointParam::C(0.6)],
                20,
            ),
            0,
        )
        .unwrap();
        for pt in &run.points {
            assert_eq!(
                pt.sat_count + pt.unsat_count + pt.indeterminate_count,
                pt.trials_completed
            );
            let e = pt.estimate.unwrap();
            assert!(pt.ci_low <= e && e <= pt.ci_high);
            assert!((0.0..=1.0).contains(&e));
        }
        assert_eq!(run.records("sweep", false).len(), 3 * 21);
    }

    #[test]
    fn uniform_model_counts() {
        assert_eq!(uniform_m_count(150, 0.4 / 22500.0), 480);
        assert_eq!(uniform_m_count(150, 0.6 / 22500.0), 720);
        let mut c = cfg(20, vec![PointParam::C(0.4)], 5);
        c.model = Model::UniformM;
        let run = run_sweep(&c, 1).unwrap();
        assert_eq!(run.points[0].m, Some(64));
        assert!(run.trials[0].iter().all(|t| t.relators <= 64));
    }

    #[test]
    fn results_do_not_depend_on_jobs() {
        let c = cfg(25, vec![PointParam::C(0.2), PointParam::C(0.35)], 12);
        let a = run_sweep(&c, 1).unwrap();
        let b = run_sweep(&c, 4).unwrap();
        assert_eq!(a.points, b.points);
        assert_eq!(a.records("sweep", false), b.records("sweep", false));
    }

    #[test]
    fn invalid_configs() {
        assert!(run_sweep(&cfg(10, vec![PointParam::C(0.1)], 0), 1).is_err());
        assert!(run_sweep(&cfg(10, vec![PointParam::P(1.5)], 3), 1).is_err());
        assert!(run_sweep(&cfg(10, vec![PointParam::C(-1.0)], 3), 1).is_err());
        assert!(run_sweep(&cfg(0, vec![PointParam::C(0.1)], 3), 1).is_err());
    }
}
