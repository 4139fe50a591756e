//! Quotient certificates: unsatisfiability of `Φ_{R,A}` for every large
//! enough generator subset `A`, so no left-orderable quotient keeps that
//! many generators non-trivial.

use std::time::Duration;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::parallel::run_indexed;
use super::records::TrialRecord;
use super::stats::{ceil_tolerant, wilson_interval, Z_95};
use crate::encoding::{activity_var, encode_presentation, encode_survivor_query};
use crate::error::{Error, Result};
use crate::group_words::{sample_binomial, GeneratorSet, Presentation, Sign};
use crate::sat::{solve_with, Assignment, Engine, SolveOptions, Status};
use crate::seed::{mix, rng_from_seed};

/// Largest `n` the exhaustive strategy will enumerate subsets for.
pub const EXHAUSTIVE_MAX_N: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// One solve of `Φ_{R,A}` per subset with `|A| ≥ k`.
    Exhaustive,
    /// A single solve of the survivor query.
    SurvivorQuery,
    /// Random subsets of size exactly `k`; can only refute.
    SampledSubsets { samples: u32, seed: u64 },
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "survivor" | "survivor_query" | "survivor-query" => Ok(Strategy::SurvivorQuery),
            "sampled" | "sampled_subsets" => Ok(Strategy::SampledSubsets {
                samples: 1000,
                seed: 0,
            }),
            other => Err(Error::InvalidParameter(format!(
                "unknown strategy `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `Φ_{R,A}` is unsatisfiable for every `|A| ≥ k`.
    Certified,
    /// `Φ_{R,A}` is satisfied by `model` (over `x_1..x_n`).
    Refuted {
        subset: GeneratorSet,
        model: Assignment,
    },
    /// Sampling found no witness; nothing is claimed.
    Inconclusive,
    /// A solve ran out of budget.
    Indeterminate,
}

impl Certificate {
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::Certified => "certified",
            Certificate::Refuted { .. } => "refuted",
            Certificate::Inconclusive => "inconclusive",
            Certificate::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateOutcome {
    pub certificate: Certificate,
    /// Required survivor count `⌈(1 − α)n⌉`.
    pub k: u32,
    pub solves: u64,
    pub decisions: u64,
}

/// `⌈(1 − α)n⌉`.
pub fn survivors_required(n: u32, alpha: f64) -> Result<u32> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha={alpha} outside (0, 1)"
        )));
    }
    Ok(ceil_tolerant((1.0 - alpha) * f64::from(n)) as u32)
}

pub fn quotient_certificate(
    pres: &Presentation,
    alpha: f64,
    strategy: Strategy,
    opts: SolveOptions,
) -> Result<CertificateOutcome> {
    let n = pres.n();
    let k = survivors_required(n, alpha)?;
    let mut solves = 0u64;
    let mut decisions = 0u64;
    let mut check = |subset: GeneratorSet| -> Result<Option<Certificate>> {
        let verdict = solve_with(&encode_presentation(pres, &subset)?, opts);
        solves += 1;
        decisions += verdict.stats.decisions;
        Ok(match verdict.status {
            Status::Satisfiable => Some(Certificate::Refuted {
                subset,
                model: verdict.model.expect("satisfiable verdict carries a model"),
            }),
            Status::Indeterminate => Some(Certificate::Indeterminate),
            Status::Unsatisfiable => None,
        })
    };

    let certificate = match strategy {
        Strategy::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N {
                return Err(Error::InvalidParameter(format!(
                    "exhaustive strategy needs n <= {EXHAUSTIVE_MAX_N}, got {n}"
                )));
            }
            let mut found = None;
            for mask in 0u64..1 << n {
                if mask.count_ones() < k {
                    continue;
                }
                if let Some(c) = check(GeneratorSet::from_mask(n, mask))? {
                    found = Some(c);
                    break;
                }
            }
            found.unwrap_or(Certificate::Certified)
        }
        Strategy::SurvivorQuery => {
            let verdict = solve_with(&encode_survivor_query(pres, k)?, opts);
            solves += 1;
            decisions += verdict.stats.decisions;
            match verdict.status {
                Status::Unsatisfiable => Certificate::Certified,
                Status::Indeterminate => Certificate::Indeterminate,
                Status::Satisfiable => {
                    let full = verdict.model.expect("satisfiable verdict carries a model");
                    let subset = GeneratorSet::from_indices(
                        n,
                        (1..=n).filter(|&i| full.value(activity_var(n, i))),
                    )?;
                    let model = Assignment::from_fn(n, |v| full.value(v));
                    Certificate::Refuted { subset, model }
                }
            }
        }
        Strategy::SampledSubsets { samples, seed } => {
            let mut rng = rng_from_seed(seed);
            let mut found = None;
            for _ in 0..samples {
                let chosen = sample(&mut rng, n as usize, k as usize);
                let subset = GeneratorSet::from_indices(n, chosen.iter().map(|i| i as u32 + 1))?;
                if let Some(c) = check(subset)? {
                    found = Some(c);
                    break;
                }
            }
            found.unwrap_or(Certificate::Inconclusive)
        }
    };
    Ok(CertificateOutcome {
        certificate,
        k,
        solves,
        decisions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaReport {
    /// No relator is a positive word `a b c` with `a, b ∈ A`, `c ∉ A`.
    pub empty: bool,
    /// `|P_A| = |A|²(n − |A|)`.
    pub size: u64,
}

/// Whether `R` misses `P_A = {abc : a, b ∈ A, c ∈ S ∖ A}`; a quotient
/// killing exactly `A` needs this.
pub fn pa_emptiness(pres: &Presentation, subset: &GeneratorSet) -> Result<PaReport> {
    if subset.universe() != pres.n() {
        return Err(Error::InvalidParameter(
            "subset universe does not match n".into(),
        ));
    }
    if subset.is_empty() || subset.is_full() {
        return Err(Error::InvalidParameter(
            "P_A needs a proper non-empty subset".into(),
        ));
    }
    let in_pa = |r: &&crate::group_words::Word3| {
        let [a, b, c] = *r.letters();
        [a, b, c].iter().all(|l| l.sign == Sign::Plus)
            && subset.contains(a.index)
            && subset.contains(b.index)
            && !subset.contains(c.index)
    };
    let size_a = subset.len() as u64;
    Ok(PaReport {
        empty: !pres.relators().iter().any(|r| in_pa(&r)),
        size: size_a * size_a * (u64::from(pres.n()) - size_a),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientConfig {
    pub n: u32,
    pub p: f64,
    pub alpha: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub strategy: Strategy,
    pub engine: Engine,
    pub budget: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientSummary {
    pub n: u32,
    pub p: f64,
    pub alpha: f64,
    pub k: u32,
    pub trials: u64,
    pub certified: u64,
    pub refuted: u64,
    pub inconclusive: u64,
    pub indeterminate: u64,
    /// `certified / (trials − indeterminate)`.
    pub certified_fraction: Option<f64>,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRun {
    pub summary: QuotientSummary,
    pub trials: Vec<TrialRecord>,
}

/// Samples `trials` presentations from the binomial model (trial `t` uses
/// seed `mix(master_seed, t)`) and certifies each.
pub fn run_quotient_trials(
    cfg: &QuotientConfig,
    jobs: usize,
    record_timing: bool,
) -> Result<QuotientRun> {
    let k = survivors_required(cfg.n, cfg.alpha)?;
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let opts = SolveOptions {
        engine: cfg.engine,
        budget: cfg.budget,
    };
    let nn = f64::from(cfg.n) * f64::from(cfg.n);
    let results = run_indexed(jobs, cfg.trials as usize, |t| -> Result<TrialRecord> {
        let seed = mix(cfg.master_seed, t as u64);
        let pres = sample_binomial(cfg.n, cfg.p, seed)?;
        let start = std::time::Instant::now();
        let outcome = quotient_certificate(&pres, cfg.alpha, cfg.strategy, opts)?;
        Ok(TrialRecord {
            experiment: "quotient".into(),
            n: cfg.n,
            c: cfg.p * nn,
            p: cfg.p,
            m: None,
            seed,
            trial_index: t as u64,
            relators: pres.len(),
            status: outcome.certificate.label().into(),
            decisions: outcome.decisions,
            elapsed_ms: record_timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        })
    });
    let trials: Vec<TrialRecord> = results.into_iter().collect::<Result<_>>()?;
    let count = |label: &str| trials.iter().filter(|t| t.status == label).count() as u64;
    let certified = count("certified");
    let indeterminate = count("indeterminate");
    let decided = cfg.trials - indeterminate;
    let (ci_low, ci_high) = wilson_interval(certified, decided, Z_95);
    Ok(QuotientRun {
        summary: QuotientSummary {
            n: cfg.n,
            p: cfg.p,
            alpha: cfg.alpha,
            k,
            trials: cfg.trials,
            certified,
            refuted: count("refuted"),
            inconclusive: count("inconclusive"),
            indeterminate,
            certified_fraction: (decided > 0).then(|| certified as f64 / decided as f64),
            ci_low,
            ci_high,
        },
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_words::Word3;
    use crate::sat::evaluate;

    fn pres(n: u32, rs: &[[i32; 3]]) -> Presentation {
        Presentation::new(
            n,
            rs.iter().map(|&l| Word3::from_signed(l).unwrap()).collect(),
        )
        .unwrap()
    }

    const ALL: [Strategy; 3] = [
        Strategy::Exhaustive,
        Strategy::SurvivorQuery,
        Strategy::SampledSubsets {
            samples: 20,
            seed: 1,
        },
    ];

    #[test]
    fn empty_presentation_is_refuted() {
        for n in [1, 4, 9] {
            for s in ALL {
                let out =
                    quotient_certificate(&pres(n, &[]), 0.5, s, SolveOptions::default()).unwrap();
                let Certificate::Refuted { subset, model } = out.certificate else {
                    panic!("expected refutation for {s:?}");
                };
                assert!(subset.len() as u32 >= out.k);
                assert_eq!(model.len(), n as usize);
            }
        }
    }

    #[test]
    fn single_cube_is_certified() {
        let p = pres(1, &[[1, 1, 1]]);
        for s in [Strategy::Exhaustive, Strategy::SurvivorQuery] {
            let out = quotient_certificate(&p, 0.5, s, SolveOptions::default()).unwrap();
            assert_eq!(out.certificate, Certificate::Certified);
            assert_eq!(out.k, 1);
        }
        let out = quotient_certificate(
            &p,
            0.5,
            Strategy::SampledSubsets {
                samples: 5,
                seed: 0,
            },
            SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(out.certificate, Certificate::Inconclusive);
    }

    #[test]
    fn refutation_witness_is_valid() {
        let p = sample_binomial(8, 0.01, 3).unwrap();
        for s in ALL {
            let out = quotient_certificate(&p, 0.3, s, SolveOptions::default()).unwrap();
            if let Certificate::Refuted { subset, model } = out.certificate {
                let f = encode_presentation(&p, &subset).unwrap();
                assert!(evaluate(&f, &model).unwrap());
                assert!(subset.len() as u32 >= out.k);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let p = pres(3, &[]);
        for a in [0.0, 1.0, -0.2, 1.3] {
            assert!(
                quotient_certificate(&p, a, Strategy::SurvivorQuery, SolveOptions::default())
                    .is_err()
            );
        }
        let big = pres(21, &[]);
        assert!(
            quotient_certificate(&big, 0.5, Strategy::Exhaustive, SolveOptions::default()).is_err()
        );
    }

    #[test]
    fn pa_examples() {
        let a = GeneratorSet::from_indices(3, [1, 2]).unwrap();
        assert!(pa_emptiness(&pres(3, &[]), &a).unwrap().empty);
        assert!(!pa_emptiness(&pres(3, &[[1, 2, 3]]), &a).unwrap().empty);
        assert!(pa_emptiness(&pres(3, &[[1, 2, -3]]), &a).unwrap().empty);
        assert!(pa_emptiness(&pres(3, &[[3, 1, 2]]), &a).unwrap().empty);
        let six = GeneratorSet::from_indices(10, 1..=6).unwrap();
        assert_eq!(pa_emptiness(&pres(10, &[]), &six).unwrap().size, 6 * 6 * 4);
        assert!(pa_emptiness(&pres(3, &[]), &GeneratorSet::empty(3)).is_err());
        assert!(pa_emptiness(&pres(3, &[]), &GeneratorSet::all(3)).is_err());
    }

    #[test]
    fn required_survivors() {
        assert_eq!(survivors_required(150, 0.1).unwrap(), 135);
        assert_eq!(survivors_required(1, 0.5).unwrap(), 1);
        assert_eq!(survivors_required(10, 0.25).unwrap(), 8);
    }

    #[test]
    fn trial_runs_are_reproducible() {
        let cfg = QuotientConfig {
            n: 12,
            p: 0.02,
            alpha: 0.3,
            trials: 8,
            master_seed: 4,
            strategy: Strategy::SurvivorQuery,
            engine: Engine::Cdcl,
            budget: None,
        };
        let a = run_quotient_trials(&cfg, 1, false).unwrap();
        let b = run_quotient_trials(&cfg, 3, false).unwrap();
        assert_eq!(a, b);
        let s = &a.summary;
        assert_eq!(
            s.certified + s.refuted + s.inconclusive + s.indeterminate,
            8
        );
    }
}
