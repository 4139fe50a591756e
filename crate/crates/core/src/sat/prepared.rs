use crate::encoding::{CnfFormula, Literal};

/// Solver-side copy of a formula: repeated literals merged, tautologies
/// dropped, unit clauses split out.
pub(crate) struct Prepared {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
    pub units: Vec<Literal>,
    pub has_empty_clause: bool,
}

impl Prepared {
    pub fn new(f: &CnfFormula) -> Self {
        let mut clauses = Vec::with_capacity(f.num_clauses());
        let mut units = Vec::new();
        let mut has_empty_clause = false;
        for clause in f.clauses() {
            let mut lits = clause.literals().to_vec();
            lits.sort_unstable_by_key(|l| (l.var(), !l.is_positive()));
            lits.dedup();
            if lits.windows(2).any(|p| p[0].var() == p[1].var()) {
                continue;
            }
            match lits.len() {
                0 => has_empty_clause = true,
                1 => units.push(lits[0]),
                _ => clauses.push(lits),
            }
        }
        Prepared {
            num_vars: f.num_variables() as usize,
            clauses,
            units,
            has_empty_clause,
        }
    }
}
