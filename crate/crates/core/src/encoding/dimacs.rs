use std::fmt::Write as _;

use crate::encoding::cnf::{Clause, CnfFormula, Literal, VarRole};
use crate::error::{Error, Result};

/// DIMACS CNF text. Variable roles, when recorded, go first as
/// `c role <tag> <first> <last>` comment lines. Clauses are written one per
/// line exactly as stored, repeated literals included.
pub fn to_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    for span in f.roles() {
        let _ = writeln!(
            out,
            "c role {} {} {}",
            span.role.tag(),
            span.first,
            span.last
        );
    }
    let _ = writeln!(out, "p cnf {} {}", f.num_variables(), f.num_clauses());
    for clause in f.clauses() {
        for lit in clause.literals() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF. Clauses may span lines; every clause must be closed by
/// `0`; the clause count must match the header. `c role` comments restore
/// variable roles, other comments are skipped.
pub fn from_dimacs(text: &str) -> Result<CnfFormula> {
    let mut formula: Option<CnfFormula> = None;
    let mut declared_clauses = 0usize;
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0;
    let mut roles = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('c') {
            if comment.is_empty() || comment.starts_with(char::is_whitespace) {
                let toks: Vec<&str> = comment.split_whitespace().collect();
                if let ["role", tag, first, last] = toks[..] {
                    let role = VarRole::from_tag(tag)
                        .ok_or_else(|| Error::parse(line_no, format!("unknown role `{tag}`")))?;
                    let first: u32 = first
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad role range"))?;
                    let last: u32 = last
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad role range"))?;
                    roles.push((first, last, role));
                }
                continue;
            }
        }
        if line.starts_with('p') {
            if formula.is_some() {
                return Err(Error::parse(line_no, "duplicate problem line"));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let ["p", "cnf", vars, clauses] = toks[..] else {
                return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
            };
            let vars: u32 = vars
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad variable count `{vars}`")))?;
            if vars > i32::MAX as u32 {
                return Err(Error::parse(line_no, "variable count too large"));
            }
            declared_clauses = clauses
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad clause count `{clauses}`")))?;
            formula = Some(CnfFormula::new(vars));
            continue;
        }
        let Some(f) = formula.as_mut() else {
            return Err(Error::parse(line_no, "clause before problem line"));
        };
        for tok in line.split_whitespace() {
            let code: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{tok}`")))?;
            if code == 0 {
                if pending.is_empty() {
                    return Err(Error::parse(line_no, "empty clause"));
                }
                f.add_clause(Clause::new(std::mem::take(&mut pending))?)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                continue;
            }
            if code.unsigned_abs() > u64::from(f.num_variables()) {
                return Err(Error::parse(
                    line_no,
                    format!("literal {code} exceeds {} variables", f.num_variables()),
                ));
            }
            if pending.is_empty() {
                pending_line = line_no;
            }
            pending.push(Literal::from_dimacs(code as i32).expect("non-zero literal"));
        }
    }

    let mut f = formula.ok_or_else(|| Error::parse(1, "missing problem line"))?;
    if !pending.is_empty() {
        return Err(Error::parse(pending_line, "clause not terminated by 0"));
    }
    if f.num_clauses() != declared_clauses {
        return Err(Error::parse(
            1,
            format!(
                "header declares {declared_clauses} clauses, found {}",
                f.num_clauses()
            ),
        ));
    }
    for (first, last, role) in roles {
        f.set_role(first, last, role);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(v: &[i32]) -> Clause {
        Clause::new(
            v.iter()
                .map(|&c| Literal::from_dimacs(c).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn writes_standard_format() {
        let f = CnfFormula::from_clauses(2, vec![clause(&[1, -2])]).unwrap();
        assert_eq!(to_dimacs(&f), "p cnf 2 1\n1 -2 0\n");
        assert_eq!(to_dimacs(&CnfFormula::new(3)), "p cnf 3 0\n");
        let dup = CnfFormula::from_clauses(2, vec![clause(&[1, 2, 1])]).unwrap();
        assert_eq!(to_dimacs(&dup), "p cnf 2 1\n1 2 1 0\n");
    }

    #[test]
    fn round_trip_with_roles() {
        let mut f = CnfFormula::from_clauses(4, vec![clause(&[1, -3, 1]), clause(&[-4])]).unwrap();
        f.set_role(1, 2, VarRole::GeneratorSign);
        f.set_role(3, 4, VarRole::Activity);
        let text = to_dimacs(&f);
        assert!(text.starts_with("c role generator-sign 1 2\nc role activity 3 4\np cnf 4 2\n"));
        assert_eq!(from_dimacs(&text).unwrap(), f);
    }

    #[test]
    fn accepts_split_clauses_and_comments() {
        let f = from_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0 -1\n0\n").unwrap();
        assert_eq!(f.clauses(), &[clause(&[1, -2, 3]), clause(&[-1])]);
        let f = from_dimacs("p  cnf  3  1\n1 2 0\n").unwrap();
        assert_eq!(f.num_variables(), 3);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "1 2 0\n",
            "p cnf x 1\n1 0\n",
            "p dnf 2 1\n1 0\n",
            "p cnf 2\n1 0\n",
            "p cnf 2 1\n1 3 0\n",
            "p cnf 2 1\n1 -2\n",
            "p cnf 2 2\n1 0\n",
            "p cnf 2 1\n0\n",
            "p cnf 2 1\n1 a 0\n",
            "p cnf 2 1\np cnf 2 1\n1 0\n",
            "c role nonsense 1 2\np cnf 2 0\n",
        ] {
            assert!(from_dimacs(bad).is_err(), "{bad:?}");
        }
    }
}
