use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, ensure, Context, Result};
use serde::Serialize;
use trilo::experiments::{
    bound_report, estimate_threshold, quotient_certificate, run_quotient_trials, run_sweep,
    sample_for_model, uniform_m_count, Certificate, ExperimentRecord, Model, PointParam,
    QuotientConfig, QuotientSummary, RelatorLaw, Strategy, SweepConfig, SweepRun, ThresholdConfig,
};
use trilo::{
    encode_nae, encode_presentation, encode_survivor_query, from_dimacs, sample_uniform_m,
    to_dimacs, CnfFormula, Engine, GeneratorSet, Presentation, SolveOptions, Status,
};

use crate::output::{csv_bytes, write_file, Header, OutputDir};
use crate::report::{aggregate, SummaryRow};
use crate::{
    BoundsArgs, Command, EncodeArgs, Format, ModelArg, QuotientArgs, ReportArgs, RunArgs,
    SampleArgs, SolveArgs, SolverArgs, StrategyArg, SweepArgs, ThresholdArgs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Complete,
    Indeterminate(u64),
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Sample(a) => sample(a),
        Command::Encode(a) => encode(a),
        Command::Solve(a) => solve(a),
        Command::Sweep(a) => sweep(a),
        Command::Threshold(a) => threshold(a),
        Command::Quotient(a) => quotient(a),
        Command::Bounds(a) => bounds(a),
        Command::Report(a) => report(a),
    }
}

impl SolverArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            engine: self.engine.into(),
            budget: self.budget(),
        }
    }

    fn budget(&self) -> Option<Duration> {
        self.budget_ms.map(Duration::from_millis)
    }
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Binomial => Model::Binomial,
            ModelArg::UniformM => Model::UniformM,
        }
    }
}

/// Maps a finished run onto the exit policy for indeterminate trials.
fn finish(indeterminate: u64, run: &RunArgs) -> Outcome {
    if indeterminate == 0 {
        Outcome::Complete
    } else if run.allow_timeouts {
        eprintln!("warning: {indeterminate} indeterminate trial(s) excluded from the estimates");
        Outcome::Complete
    } else {
        Outcome::Indeterminate(indeterminate)
    }
}

fn invocation() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_presentation(path: &Path) -> Result<Presentation> {
    Presentation::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_dimacs(path: &Path) -> Result<CnfFormula> {
    from_dimacs(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn density(n: u32, p: Option<f64>, c: Option<f64>) -> Result<f64> {
    ensure!(n >= 1, "--n must be at least 1");
    match (p, c) {
        (Some(p), None) => Ok(p),
        (None, Some(c)) => Ok(c / (f64::from(n) * f64::from(n))),
        _ => bail!("give exactly one of --p and --c"),
    }
}

fn sample(a: SampleArgs) -> Result<Outcome> {
    let model = Model::from(a.model);
    ensure!(
        a.m.is_none() || model == Model::UniformM,
        "--m applies to --model uniform-m only"
    );
    let mut text = format!("# {}\n", invocation());
    let pres = match (model, a.m) {
        (Model::UniformM, Some(m)) => {
            ensure!(
                a.p.is_none() && a.c.is_none(),
                "give --m or a density, not both"
            );
            let drawn = sample_uniform_m(a.n, m as usize, a.seed)?;
            text += &format!(
                "# model=uniform-m n={} m={m} seed={} all_distinct={}\n",
                a.n, a.seed, drawn.all_distinct
            );
            drawn.to_presentation(a.n)?
        }
        _ => {
            let p = density(a.n, a.p, a.c)?;
            let pres = sample_for_model(a.n, model, p, a.seed)?;
            match model {
                Model::Binomial => {
                    text += &format!("# model=binomial n={} p={p} seed={}\n", a.n, a.seed)
                }
                Model::UniformM => {
                    text += &format!(
                        "# model=uniform-m n={} m={} seed={}\n",
                        a.n,
                        uniform_m_count(a.n, p),
                        a.seed
                    )
                }
            }
            pres
        }
    };
    text += &pres.to_string();
    write_file(&a.out, &text)?;
    println!(
        "wrote {} relators on {} generators to {}",
        pres.len(),
        pres.n(),
        a.out.display()
    );
    Ok(Outcome::Complete)
}

fn encode(a: EncodeArgs) -> Result<Outcome> {
    let pres = read_presentation(&a.input)?;
    let n = pres.n();
    let text = if a.nae {
        format!(
            "c not-all-equal form: each clause is followed by its complement\n{}",
            to_dimacs(&encode_nae(&pres).to_cnf())
        )
    } else if let Some(k) = a.survivors {
        to_dimacs(&encode_survivor_query(&pres, k)?)
    } else {
        let subset = GeneratorSet::parse(n, &a.subset)?;
        to_dimacs(&encode_presentation(&pres, &subset)?)
    };
    write_file(&a.out, &text)?;
    Ok(Outcome::Complete)
}

fn solve(a: SolveArgs) -> Result<Outcome> {
    let formula = match (&a.input, &a.dimacs) {
        (Some(p), None) => {
            let pres = read_presentation(p)?;
            encode_presentation(&pres, &GeneratorSet::all(pres.n()))?
        }
        (None, Some(d)) => read_dimacs(d)?,
        _ => bail!("give exactly one of --in and --dimacs"),
    };
    let v = trilo::solve_with(&formula, a.solver.options());
    println!("status: {}", v.status);
    if let Some(model) = &v.model {
        let lits: Vec<String> = (1..=model.len() as u32)
            .map(|var| {
                if model.value(var) {
                    var.to_string()
                } else {
                    format!("-{var}")
                }
            })
            .collect();
        println!("model: {} 0", lits.join(" "));
    }
    println!("engine: {}", Engine::from(a.solver.engine));
    println!("decisions: {}", v.stats.decisions);
    println!("propagations: {}", v.stats.propagations);
    println!("conflicts: {}", v.stats.conflicts);
    println!("elapsed_ms: {:.3}", v.stats.elapsed.as_secs_f64() * 1e3);
    Ok(match v.status {
        Status::Indeterminate => Outcome::Indeterminate(1),
        _ => Outcome::Complete,
    })
}

#[derive(Serialize)]
struct SweepParams {
    n: u32,
    c_values: Vec<f64>,
    trials: u64,
    master_seed: u64,
    model: Model,
    engine: Engine,
    budget_ms: Option<u64>,
}

/// `c_min, c_min + step, …` up to `c_max`, rounded to 12 decimals so that
/// `0.1 + 2·0.05` prints as `0.2`.
fn grid(c_min: f64, c_max: f64, step: f64) -> Result<Vec<f64>> {
    ensure!(step > 0.0 && step.is_finite(), "--c-step must be positive");
    ensure!(c_min > 0.0 && c_min <= c_max, "need 0 < --c-min <= --c-max");
    let count = ((c_max - c_min) / step + 1e-9).floor() as usize + 1;
    ensure!(count <= 100_000, "grid has {count} points");
    Ok((0..count)
        .map(|i| ((c_min + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

fn write_sweep_dir<P: Serialize>(
    out: &Path,
    header: &Header<P>,
    run_args: &RunArgs,
    run: &SweepRun,
    experiment: &str,
) -> Result<()> {
    let mut dir = OutputDir::create(out)?;
    dir.config(header, run_args.jobs, run_args.record_timing)?;
    dir.records(header, &run.records(experiment, run_args.record_timing))?;
    let rows: Vec<SummaryRow> = run.points.iter().map(SummaryRow::from).collect();
    dir.summary(&rows)?;
    dir.commit()
}

fn sweep(a: SweepArgs) -> Result<Outcome> {
    let c_values = grid(a.c_min, a.c_max, a.c_step)?;
    let cfg = SweepConfig {
        n: a.n,
        params: c_values.iter().map(|&c| PointParam::C(c)).collect(),
        trials: a.trials,
        master_seed: a.seed,
        model: a.model.into(),
        engine: a.run.solver.engine.into(),
        budget: a.run.solver.budget(),
    };
    let run = run_sweep(&cfg, a.run.jobs)?;
    let header = Header::new(
        "sweep",
        SweepParams {
            n: a.n,
            c_values,
            trials: a.trials,
            master_seed: a.seed,
            model: cfg.model,
            engine: cfg.engine,
            budget_ms: a.run.solver.budget_ms,
        },
    );
    write_sweep_dir(&a.out, &header, &a.run, &run, "sweep")?;
    for pt in &run.points {
        println!(
            "c={} sat={} unsat={} indeterminate={} estimate={} ci=[{:.4}, {:.4}]",
            pt.c,
            pt.sat_count,
            pt.unsat_count,
            pt.indeterminate_count,
            pt.estimate.map_or("-".into(), |e| format!("{e:.4}")),
            pt.ci_low,
            pt.ci_high
        );
    }
    Ok(finish(run.indeterminate(), &a.run))
}

#[derive(Serialize)]
struct ThresholdParams {
    n: u32,
    c_lo: f64,
    c_hi: f64,
    width: f64,
    trials: u64,
    master_seed: u64,
    engine: Engine,
    budget_ms: Option<u64>,
}

fn threshold(a: ThresholdArgs) -> Result<Outcome> {
    let cfg = ThresholdConfig {
        n: a.n,
        c_lo: a.c_lo,
        c_hi: a.c_hi,
        trials: a.trials,
        master_seed: a.seed,
        engine: a.run.solver.engine.into(),
        budget: a.run.solver.budget(),
        width: a.width,
    };
    let est = estimate_threshold(&cfg, a.run.jobs)?;
    println!("estimate: {}", est.value);
    println!("bracket: {} {}", est.bracket.0, est.bracket.1);
    for pt in &est.trace.points {
        println!(
            "trace: c={} estimate={} sat={} unsat={} indeterminate={}",
            pt.c,
            pt.estimate.map_or("-".into(), |e| format!("{e:.4}")),
            pt.sat_count,
            pt.unsat_count,
            pt.indeterminate_count
        );
    }
    if let Some(out) = &a.out {
        let header = Header::new(
            "threshold",
            ThresholdParams {
                n: a.n,
                c_lo: a.c_lo,
                c_hi: a.c_hi,
                width: a.width,
                trials: a.trials,
                master_seed: a.seed,
                engine: cfg.engine,
                budget_ms: a.run.solver.budget_ms,
            },
        );
        write_sweep_dir(out, &header, &a.run, &est.trace, "threshold")?;
    }
    Ok(finish(est.indeterminate(), &a.run))
}

fn strategy(a: &QuotientArgs) -> Result<Strategy> {
    Ok(match a.strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::Survivor => Strategy::SurvivorQuery,
        StrategyArg::Sampled => Strategy::SampledSubsets {
            samples: a.samples,
            seed: a.seed.context("--strategy sampled needs --seed")?,
        },
    })
}

#[derive(Serialize)]
struct QuotientParams {
    n: u32,
    p: f64,
    alpha: f64,
    strategy: Strategy,
    trials: u64,
    master_seed: u64,
    engine: Engine,
    budget_ms: Option<u64>,
}

/// A `trials.jsonl` line of a quotient batch.
#[derive(Serialize)]
#[serde(untagged)]
enum QuotientLine<'a> {
    Trial(ExperimentRecord),
    Summary(SummaryRecord<'a>),
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    record_type: &'static str,
    experiment: &'static str,
    #[serde(flatten)]
    summary: &'a QuotientSummary,
}

fn quotient(a: QuotientArgs) -> Result<Outcome> {
    let strategy = strategy(&a)?;
    let opts = a.run.solver.options();
    if let Some(input) = &a.input {
        let pres = read_presentation(input)?;
        let out = quotient_certificate(&pres, a.alpha, strategy, opts)?;
        println!("verdict: {}", out.certificate.label());
        println!("required_survivors: {}", out.k);
        println!("solves: {}", out.solves);
        println!("decisions: {}", out.decisions);
        if let Certificate::Refuted { subset, model } = &out.certificate {
            let ids: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
            println!("subset: {}", ids.join(","));
            let lits: Vec<String> = (1..=model.len() as u32)
                .map(|v| {
                    if model.value(v) {
                        v.to_string()
                    } else {
                        format!("-{v}")
                    }
                })
                .collect();
            println!("model: {} 0", lits.join(" "));
        }
        let indeterminate = u64::from(out.certificate == Certificate::Indeterminate);
        return Ok(finish(indeterminate, &a.run));
    }

    let (Some(n), Some(trials), Some(seed), Some(out)) = (a.n, a.trials, a.seed, &a.out) else {
        bail!("give --in, or --n with --p/--c, --trials, --seed and --out");
    };
    let p = density(n, a.p, a.c)?;
    let cfg = QuotientConfig {
        n,
        p,
        alpha: a.alpha,
        trials,
        master_seed: seed,
        strategy,
        engine: opts.engine,
        budget: opts.budget,
    };
    let run = run_quotient_trials(&cfg, a.run.jobs, a.run.record_timing)?;
    let header = Header::new(
        "quotient",
        QuotientParams {
            n,
            p,
            alpha: a.alpha,
            strategy,
            trials,
            master_seed: seed,
            engine: cfg.engine,
            budget_ms: a.run.solver.budget_ms,
        },
    );
    let mut records: Vec<QuotientLine> = run
        .trials
        .iter()
        .map(|t| QuotientLine::Trial(ExperimentRecord::Trial(t.clone())))
        .collect();
    records.push(QuotientLine::Summary(SummaryRecord {
        record_type: "quotient_summary",
        experiment: "quotient",
        summary: &run.summary,
    }));
    let mut dir = OutputDir::create(out)?;
    dir.config(&header, a.run.jobs, a.run.record_timing)?;
    dir.records(&header, &records)?;
    dir.summary(std::slice::from_ref(&run.summary))?;
    dir.commit()?;
    let s = &run.summary;
    println!(
        "certified={} refuted={} inconclusive={} indeterminate={} of {} (k={})",
        s.certified, s.refuted, s.inconclusive, s.indeterminate, s.trials, s.k
    );
    println!(
        "certified_fraction={} ci=[{:.4}, {:.4}]",
        s.certified_fraction
            .map_or("-".into(), |f| format!("{f:.4}")),
        s.ci_low,
        s.ci_high
    );
    Ok(finish(s.indeterminate, &a.run))
}

fn bounds(a: BoundsArgs) -> Result<Outcome> {
    let law = match (a.m, a.p) {
        (Some(m), None) => RelatorLaw::Count(m),
        (None, Some(p)) => RelatorLaw::Probability(p),
        _ => bail!("give exactly one of --m and --p"),
    };
    let r = bound_report(a.n, law, a.alpha)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&r)?);
        return Ok(Outcome::Complete);
    }
    println!("n: {}", r.n);
    if let Some(m) = r.m {
        println!("m: {m}");
    }
    if let Some(p) = r.p {
        println!("p: {p}");
    }
    println!("words: {}", r.words);
    println!("c_zero: {}", r.c_zero);
    println!("q: {}/{} = {}", r.q_numerator, r.q_denominator, r.q);
    println!("union_bound: {}", r.union_bound);
    println!("delta: {}", r.delta);
    println!("distinctness_lower: {}", r.distinctness_lower);
    if let Some(c) = r.distinctness_correction {
        println!("distinctness_correction: {c}");
    }
    if let Some(alpha) = r.alpha {
        println!("alpha: {alpha}");
    }
    if let Some(q) = r.quotient {
        println!("kill_bound: {}", q.kill_bound);
        println!("survivor_bound: {}", q.survivor_bound);
    }
    Ok(Outcome::Complete)
}

fn report(a: ReportArgs) -> Result<Outcome> {
    let rows = aggregate(&a.inputs)?;
    let delimiter = match a.format {
        Format::Csv => b',',
        Format::Tsv => b'\t',
    };
    let bytes = csv_bytes(&rows, delimiter)?;
    print!(
        "{}",
        String::from_utf8(bytes).context("report is not UTF-8")?
    );
    Ok(Outcome::Complete)
}
