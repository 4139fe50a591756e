use crate::encoding::cnf::{Clause, CnfFormula, Literal, NaeFormula, VarRole};
use crate::error::{Error, Result};
use crate::group_words::{GeneratorSet, Presentation, Sign, SignedGenerator, Word3};

/// `x_i` for `s_i`, `¬x_i` for `s_i⁻¹`.
pub fn letter_literal(letter: SignedGenerator) -> Literal {
    Literal::new(letter.index, letter.sign == Sign::Plus)
}

/// Variable id of the activity variable `a_i` in a survivor query on `n`
/// generators.
pub fn activity_var(n: u32, index: u32) -> u32 {
    n + index
}

fn word_literals(r: &Word3) -> [Literal; 3] {
    r.letters().map(letter_literal)
}

/// `φ_r`: the clause of the letters' literals and the clause of their
/// negations. Both are falsified exactly when the three literals agree.
pub fn encode_relator(r: &Word3) -> (Clause, Clause) {
    let lits = word_literals(r);
    (Clause::from(lits), Clause::from(lits.map(|l| !l)))
}

/// `Φ_{R,A}`: the conjunction of `φ_r` over the relators supported on
/// `subset`, in relator order, over variables `x_1..x_n`.
pub fn encode_presentation(pres: &Presentation, subset: &GeneratorSet) -> Result<CnfFormula> {
    let n = pres.n();
    let mut f = CnfFormula::new(n);
    f.set_role(1, n, VarRole::GeneratorSign);
    for r in pres.restrict(subset)? {
        let lits = word_literals(&r);
        f.push_clause(lits.to_vec());
        f.push_clause(lits.iter().map(|&l| !l).collect());
    }
    Ok(f)
}

/// `Φ'_R`: one clause per relator, read with not-all-equal semantics.
pub fn encode_nae(pres: &Presentation) -> NaeFormula {
    let mut f = NaeFormula::new(pres.n());
    for r in pres.relators() {
        f.add_clause(word_literals(r))
            .expect("relator indices are within n");
    }
    f
}

/// Satisfiable iff some `A` with `|A| ≥ k` has `Φ_{R,A}` satisfiable.
///
/// Variables: `x_i = i`, `a_i = n + i`, counter auxiliaries from `2n + 1`.
/// Each relator on generators `i, j, l` contributes its two `φ` clauses
/// guarded by `¬a_i ∨ ¬a_j ∨ ¬a_l`. The bound `Σ a_i ≥ k` is written as
/// "at most `n − k` of the `¬a_i` hold" with a sequential counter, which
/// needs `(n − 1)(n − k)` auxiliaries.
pub fn encode_survivor_query(pres: &Presentation, k: u32) -> Result<CnfFormula> {
    let n = pres.n();
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "survivor count k={k} outside [0, {n}]"
        )));
    }
    let slack = n - k;
    let aux_count = if slack == 0 || slack >= n {
        0
    } else {
        (n - 1) * slack
    };
    let mut f = CnfFormula::new(2 * n + aux_count);
    f.set_role(1, n, VarRole::GeneratorSign);
    f.set_role(n + 1, 2 * n, VarRole::Activity);
    f.set_role(2 * n + 1, 2 * n + aux_count, VarRole::CounterAux);

    for r in pres.relators() {
        let guard = r.indices().map(|i| Literal::negative(activity_var(n, i)));
        let lits = word_literals(r);
        let mut first = guard.to_vec();
        first.extend_from_slice(&lits);
        let mut second = guard.to_vec();
        second.extend(lits.iter().map(|&l| !l));
        f.push_clause(first);
        f.push_clause(second);
    }

    let dead: Vec<Literal> = (1..=n)
        .map(|i| Literal::negative(activity_var(n, i)))
        .collect();
    encode_at_most(&mut f, &dead, slack, 2 * n + 1);
    Ok(f)
}

/// Sequential counter for `Σ lits ≤ bound`. Register `s(i, j)` (for the
/// first `i + 1` inputs, `j + 1` of them true) lives at
/// `base + i·bound + j`.
fn encode_at_most(f: &mut CnfFormula, lits: &[Literal], bound: u32, base: u32) {
    let m = lits.len();
    let bound = bound as usize;
    if bound >= m {
        return;
    }
    if bound == 0 {
        for &l in lits {
            f.push_clause(vec![!l]);
        }
        return;
    }
    let reg = |i: usize, j: usize| Literal::positive(base + (i * bound + j) as u32);

    f.push_clause(vec![!lits[0], reg(0, 0)]);
    for j in 1..bound {
        f.push_clause(vec![!reg(0, j)]);
    }
    for i in 1..m - 1 {
        f.push_clause(vec![!lits[i], reg(i, 0)]);
        f.push_clause(vec![!reg(i - 1, 0), reg(i, 0)]);
        for j in 1..bound {
            f.push_clause(vec![!lits[i], !reg(i - 1, j - 1), reg(i, j)]);
            f.push_clause(vec![!reg(i - 1, j), reg(i, j)]);
        }
        f.push_clause(vec![!lits[i], !reg(i - 1, bound - 1)]);
    }
    f.push_clause(vec![!lits[m - 1], !reg(m - 2, bound - 1)]);
}
