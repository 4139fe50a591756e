use std::fmt;

use crate::error::{Error, Result};

/// A variable with a polarity, stored DIMACS-style as a non-zero `i32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(i32);

impl Literal {
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(
            var >= 1 && var <= i32::MAX as u32,
            "variable id {var} out of range"
        );
        let v = var as i32;
        Literal(if positive { v } else { -v })
    }

    pub fn positive(var: u32) -> Self {
        Literal::new(var, true)
    }

    pub fn negative(var: u32) -> Self {
        Literal::new(var, false)
    }

    pub fn from_dimacs(code: i32) -> Option<Self> {
        (code != 0 && code != i32::MIN).then_some(Literal(code))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Dense index: `2(var − 1)` for the positive literal, `+1` for the negative.
    pub fn index(self) -> usize {
        2 * (self.var() as usize - 1) + usize::from(self.0 < 0)
    }

    pub fn from_index(index: usize) -> Self {
        Literal::new(index as u32 / 2 + 1, index % 2 == 0)
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal(-self.0)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A non-empty disjunction. Repeated literals are kept as written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::InvalidParameter("empty clause".into()));
        }
        Ok(Clause(literals))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> u32 {
        self.0.iter().map(|l| l.var()).max().unwrap_or(0)
    }

    /// Sorted literal multiset, for order-insensitive comparison.
    pub fn sorted_literals(&self) -> Vec<Literal> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

impl From<[Literal; 3]> for Clause {
    fn from(lits: [Literal; 3]) -> Self {
        Clause(lits.to_vec())
    }
}

/// What a variable stands for in an encoded formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarRole {
    /// `x_i`: the sign of generator `s_i` under an order.
    GeneratorSign,
    /// `a_i`: generator `s_i` survives in the quotient.
    Activity,
    /// Auxiliary of the cardinality counter.
    CounterAux,
}

impl VarRole {
    pub fn tag(self) -> &'static str {
        match self {
            VarRole::GeneratorSign => "generator-sign",
            VarRole::Activity => "activity",
            VarRole::CounterAux => "counter-aux",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "generator-sign" => Some(VarRole::GeneratorSign),
            "activity" => Some(VarRole::Activity),
            "counter-aux" => Some(VarRole::CounterAux),
            _ => None,
        }
    }
}

/// A contiguous block of variables sharing a role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoleSpan {
    pub first: u32,
    pub last: u32,
    pub role: VarRole,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfFormula {
    num_variables: u32,
    clauses: Vec<Clause>,
    roles: Vec<RoleSpan>,
}

impl CnfFormula {
    /// The true formula over `num_variables` variables.
    pub fn new(num_variables: u32) -> Self {
        CnfFormula {
            num_variables,
            clauses: Vec::new(),
            roles: Vec::new(),
        }
    }

    pub fn from_clauses(num_variables: u32, clauses: Vec<Clause>) -> Result<Self> {
        let mut f = CnfFormula::new(num_variables);
        for c in clauses {
            f.add_clause(c)?;
        }
        Ok(f)
    }

    pub fn add_clause(&mut self, clause: Clause) -> Result<()> {
        let max = clause.max_var();
        if max > self.num_variables {
            return Err(Error::InvalidParameter(format!(
                "literal on variable {max} exceeds num_variables={}",
                self.num_variables
            )));
        }
        self.clauses.push(clause);
        Ok(())
    }

    /// Pushes a clause the encoder built from in-range variables.
    pub(crate) fn push_clause(&mut self, literals: Vec<Literal>) {
        debug_assert!(!literals.is_empty());
        debug_assert!(literals.iter().all(|l| l.var() <= self.num_variables));
        self.clauses.push(Clause(literals));
    }

    pub fn set_role(&mut self, first: u32, last: u32, role: VarRole) {
        if first <= last {
            self.roles.push(RoleSpan { first, last, role });
        }
    }

    pub fn num_variables(&self) -> u32 {
        self.num_variables
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn roles(&self) -> &[RoleSpan] {
        &self.roles
    }

    pub fn role(&self, var: u32) -> Option<VarRole> {
        self.roles
            .iter()
            .find(|s| s.first <= var && var <= s.last)
            .map(|s| s.role)
    }

    pub fn is_trivially_true(&self) -> bool {
        self.clauses.is_empty()
    }
}

/// Three-literal clauses read with not-all-equal semantics.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NaeFormula {
    num_variables: u32,
    clauses: Vec<[Literal; 3]>,
}

impl NaeFormula {
    pub fn new(num_variables: u32) -> Self {
        NaeFormula {
            num_variables,
            clauses: Vec::new(),
        }
    }

    pub fn add_clause(&mut self, clause: [Literal; 3]) -> Result<()> {
        if let Some(l) = clause.iter().find(|l| l.var() > self.num_variables) {
            return Err(Error::InvalidParameter(format!(
                "literal {l} exceeds num_variables={}",
                self.num_variables
            )));
        }
        self.clauses.push(clause);
        Ok(())
    }

    pub fn num_variables(&self) -> u32 {
        self.num_variables
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// The CNF that holds exactly when this formula is NAE-satisfied: each
    /// clause together with its complement.
    pub fn to_cnf(&self) -> CnfFormula {
        let mut f = CnfFormula::new(self.num_variables);
        f.set_role(1, self.num_variables, VarRole::GeneratorSign);
        for c in &self.clauses {
            f.push_clause(c.to_vec());
            f.push_clause(c.iter().map(|&l| !l).collect());
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_basics() {
        let l = Literal::negative(4);
        assert_eq!(l.var(), 4);
        assert!(!l.is_positive());
        assert_eq!(!l, Literal::positive(4));
        assert_eq!(l.to_dimacs(), -4);
        assert_eq!(Literal::from_index(l.index()), l);
        assert_eq!(Literal::positive(1).index(), 0);
        assert_eq!(Literal::negative(1).index(), 1);
        assert!(Literal::from_dimacs(0).is_none());
    }

    #[test]
    fn clause_and_formula_invariants() {
        assert!(Clause::new(vec![]).is_err());
        let mut f = CnfFormula::new(2);
        assert!(f.is_trivially_true());
        assert!(f
            .add_clause(Clause::new(vec![Literal::positive(3)]).unwrap())
            .is_err());
        f.add_clause(Clause::new(vec![Literal::positive(2)]).unwrap())
            .unwrap();
        assert_eq!(f.num_clauses(), 1);
    }

    #[test]
    fn role_lookup() {
        let mut f = CnfFormula::new(7);
        f.set_role(1, 3, VarRole::GeneratorSign);
        f.set_role(4, 6, VarRole::Activity);
        f.set_role(7, 6, VarRole::CounterAux);
        assert_eq!(f.role(2), Some(VarRole::GeneratorSign));
        assert_eq!(f.role(6), Some(VarRole::Activity));
        assert_eq!(f.role(7), None);
        assert_eq!(f.roles().len(), 2);
    }
}
