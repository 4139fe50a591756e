//! Satisfiability and NAE-satisfiability of the encoded formulas.
//!
//! [`solve`] runs the reference DPLL search: lowest-index unassigned variable,
//! true branch first, unit propagation over watched literals and pure-literal
//! elimination on the branching variable. [`Engine::Cdcl`] is an opt-in
//! clause-learning engine for large instances; it is complete, so it returns
//! the same status, though possibly a different model. Every model is checked
//! against the input formula before it is returned.

mod brute;
mod cdcl;
mod dpll;
mod elim;
mod prepared;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use brute::{brute_force, count_models, BRUTE_FORCE_MAX_VARS};

use crate::encoding::{CnfFormula, Literal, NaeFormula};
use crate::error::{Error, Result};
use prepared::Prepared;

/// A total truth assignment; variable `v` lives at position `v − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn all(num_variables: u32, value: bool) -> Self {
        Assignment(vec![value; num_variables as usize])
    }

    pub fn from_fn(num_variables: u32, f: impl Fn(u32) -> bool) -> Self {
        Assignment((1..=num_variables).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    pub fn literal(&self, lit: Literal) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    /// Number of variables set true among `1..=upto`.
    pub fn count_true(&self, upto: u32) -> usize {
        self.0.iter().take(upto as usize).filter(|&&b| b).count()
    }
}

/// Signed-literal line, e.g. `1 -2 3`.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if !v {
                f.write_str("-")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

fn check_size(expected: u32, eta: &Assignment) -> Result<()> {
    if eta.len() != expected as usize {
        return Err(Error::AssignmentSize {
            expected: expected as usize,
            got: eta.len(),
        });
    }
    Ok(())
}

pub fn evaluate(f: &CnfFormula, eta: &Assignment) -> Result<bool> {
    check_size(f.num_variables(), eta)?;
    Ok(f.clauses()
        .iter()
        .all(|c| c.literals().iter().any(|&l| eta.literal(l))))
}

/// Every clause has at least one true and at least one false literal.
pub fn evaluate_nae(f: &NaeFormula, eta: &Assignment) -> Result<bool> {
    check_size(f.num_variables(), eta)?;
    Ok(f.clauses().iter().all(|c| {
        let t = c.iter().filter(|&&l| eta.literal(l)).count();
        t > 0 && t < 3
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Satisfiable,
    Unsatisfiable,
    /// The resource budget ran out before a verdict was reached.
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Satisfiable => "satisfiable",
            Status::Unsatisfiable => "unsatisfiable",
            Status::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub pure_literals: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// Present iff `status` is satisfiable.
    pub model: Option<Assignment>,
    pub stats: SolverStats,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Satisfiable
    }

    pub fn is_unsat(&self) -> bool {
        self.status == Status::Unsatisfiable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Chronological DPLL with the fixed branching rule.
    #[default]
    Dpll,
    /// Conflict-driven clause learning with activity-based branching.
    Cdcl,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dpll" => Ok(Engine::Dpll),
            "cdcl" => Ok(Engine::Cdcl),
            other => Err(Error::InvalidParameter(format!("unknown engine `{other}`"))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Dpll => "dpll",
            Engine::Cdcl => "cdcl",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub engine: Engine,
    /// Wall-clock budget; exceeding it yields [`Status::Indeterminate`].
    pub budget: Option<Duration>,
}

impl SolveOptions {
    pub fn with_engine(engine: Engine) -> Self {
        SolveOptions {
            engine,
            budget: None,
        }
    }
}

/// Deadline shared by both engines; polled every few hundred steps.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Deadline {
    end: Option<Instant>,
}

impl Deadline {
    pub(crate) fn new(start: Instant, budget: Option<Duration>) -> Self {
        Deadline {
            end: budget.map(|b| start + b),
        }
    }

    pub(crate) fn expired(&self) -> bool {
        self.end.is_some_and(|e| Instant::now() >= e)
    }
}

pub(crate) enum SearchResult {
    Sat(Vec<bool>),
    Unsat,
    Timeout,
}

/// Reference DPLL with no budget.
pub fn solve(f: &CnfFormula) -> Verdict {
    solve_with(f, SolveOptions::default())
}

pub fn solve_with(f: &CnfFormula, opts: SolveOptions) -> Verdict {
    let start = Instant::now();
    let deadline = Deadline::new(start, opts.budget);
    let mut stats = SolverStats::default();
    let prepared = Prepared::new(f);
    let result = if prepared.has_empty_clause {
        SearchResult::Unsat
    } else {
        match opts.engine {
            Engine::Dpll => dpll::search(&prepared, deadline, &mut stats),
            Engine::Cdcl => cdcl::search(&prepared, deadline, &mut stats),
        }
    };
    stats.elapsed = start.elapsed();
    match result {
        SearchResult::Sat(values) => {
            let model = Assignment::new(values);
            assert!(
                evaluate(f, &model).expect("model sized to formula"),
                "solver produced a non-model"
            );
            Verdict {
                status: Status::Satisfiable,
                model: Some(model),
                stats,
            }
        }
        SearchResult::Unsat => Verdict {
            status: Status::Unsatisfiable,
            model: None,
            stats,
        },
        SearchResult::Timeout => Verdict {
            status: Status::Indeterminate,
            model: None,
            stats,
        },
    }
}

/// Decides NAE-satisfiability through the complement-pair CNF.
pub fn solve_nae(f: &NaeFormula, opts: SolveOptions) -> Verdict {
    let verdict = solve_with(&f.to_cnf(), opts);
    if let Some(model) = &verdict.model {
        assert!(evaluate_nae(f, model).expect("model sized to formula"));
    }
    verdict
}
