use super::{Assignment, SolverStats, Status, Verdict};
use crate::encoding::CnfFormula;
use crate::error::{Error, Result};

pub const BRUTE_FORCE_MAX_VARS: u32 = 26;

/// Clauses as bit masks over the assignment word.
fn masks(f: &CnfFormula) -> Result<Vec<(u32, u32)>> {
    if f.num_variables() > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooManyVariables {
            max: BRUTE_FORCE_MAX_VARS,
            got: f.num_variables(),
        });
    }
    Ok(f.clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0u32, 0u32), |(pos, neg), l| {
                let bit = 1u32 << (l.var() - 1);
                if l.is_positive() {
                    (pos | bit, neg)
                } else {
                    (pos, neg | bit)
                }
            })
        })
        .collect())
}

fn satisfies(masks: &[(u32, u32)], bits: u32) -> bool {
    masks
        .iter()
        .all(|&(pos, neg)| bits & pos != 0 || !bits & neg != 0)
}

/// Exhaustive scan of all assignments, in increasing order of the word whose
/// bit `v − 1` is the value of variable `v`. Returns the first model found.
pub fn brute_force(f: &CnfFormula) -> Result<Verdict> {
    let masks = masks(f)?;
    let n = f.num_variables();
    let model = (0u32..1 << n)
        .find(|&bits| satisfies(&masks, bits))
        .map(|bits| Assignment::from_fn(n, |v| bits >> (v - 1) & 1 == 1));
    Ok(Verdict {
        status: if model.is_some() {
            Status::Satisfiable
        } else {
            Status::Unsatisfiable
        },
        model,
        stats: SolverStats::default(),
    })
}

/// Exact number of satisfying assignments.
pub fn count_models(f: &CnfFormula) -> Result<u64> {
    let masks = masks(f)?;
    Ok((0u32..1 << f.num_variables())
        .filter(|&bits| satisfies(&masks, bits))
        .count() as u64)
}
