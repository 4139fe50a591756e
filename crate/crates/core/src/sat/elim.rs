//! Bounded variable elimination for the clause-learning engine.
//!
//! A variable is eliminated when the non-tautological resolvents of its
//! occurrences are no more numerous than the clauses they replace. Removed
//! clauses with the variable in negative phase are kept for extending a model
//! of the reduced formula back to the eliminated variables.

/// Skip variables whose occurrence product exceeds this.
const MAX_PRODUCT: usize = 400;
const MAX_RESOLVENT: usize = 100;
const MAX_ROUNDS: usize = 8;

pub(crate) struct Elimination {
    /// Eliminated variables in elimination order, each with its negative
    /// clauses at the time of elimination.
    pub stack: Vec<(u32, Vec<Vec<u32>>)>,
}

impl Elimination {
    /// Assigns every eliminated variable so that the removed clauses hold,
    /// given values for everything eliminated later.
    pub fn extend(&self, values: &mut [bool]) {
        let holds = |l: u32, values: &[bool]| values[(l >> 1) as usize] == (l & 1 == 0);
        for (var, clauses) in self.stack.iter().rev() {
            let v = *var as usize;
            values[v] = true;
            let blocked = clauses
                .iter()
                .any(|c| c.iter().all(|&l| l >> 1 == *var || !holds(l, values)));
            values[v] = !blocked;
        }
    }
}

/// Literals within each clause must be sorted and free of duplicates or
/// complementary pairs. Variables marked in `frozen` are kept.
pub(crate) fn eliminate(
    num_vars: usize,
    clauses: Vec<Vec<u32>>,
    frozen: &[bool],
) -> (Vec<Vec<u32>>, Elimination) {
    let mut clauses: Vec<Option<Vec<u32>>> = clauses.into_iter().map(Some).collect();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); 2 * num_vars];
    for (i, c) in clauses.iter().enumerate() {
        for &l in c.as_ref().expect("fresh clause") {
            occ[l as usize].push(i);
        }
    }
    let mut eliminated = vec![false; num_vars];
    let mut stack = Vec::new();
    let mut resolvents: Vec<Vec<u32>> = Vec::new();

    for _ in 0..MAX_ROUNDS {
        let mut candidates: Vec<(usize, u32)> = (0..num_vars as u32)
            .filter(|&v| !frozen[v as usize] && !eliminated[v as usize])
            .map(|v| (occ[2 * v as usize].len() * occ[2 * v as usize + 1].len(), v))
            .filter(|&(cost, _)| cost <= MAX_PRODUCT)
            .collect();
        candidates.sort_unstable();
        let mut changed = false;
        for (_, v) in candidates {
            let (pos, neg) = (2 * v as usize, 2 * v as usize + 1);
            let budget = occ[pos].len() + occ[neg].len();
            if occ[pos].len() * occ[neg].len() > MAX_PRODUCT {
                continue;
            }
            resolvents.clear();
            let mut ok = true;
            'outer: for &a in &occ[pos] {
                for &b in &occ[neg] {
                    let ca = clauses[a].as_ref().expect("live clause");
                    let cb = clauses[b].as_ref().expect("live clause");
                    if let Some(r) = resolve(ca, cb, v) {
                        if r.len() > MAX_RESOLVENT || resolvents.len() == budget {
                            ok = false;
                            break 'outer;
                        }
                        resolvents.push(r);
                    }
                }
            }
            if !ok {
                continue;
            }
            resolvents.sort_unstable();
            resolvents.dedup();
            let removed: Vec<usize> = occ[pos].iter().chain(&occ[neg]).copied().collect();
            let mut saved = Vec::with_capacity(occ[neg].len());
            for &i in &removed {
                let c = clauses[i].take().expect("live clause");
                for &l in &c {
                    if l >> 1 != v {
                        occ[l as usize].retain(|&j| j != i);
                    }
                }
                if c.contains(&(neg as u32)) {
                    saved.push(c);
                }
            }
            occ[pos].clear();
            occ[neg].clear();
            for r in resolvents.drain(..) {
                let i = clauses.len();
                for &l in &r {
                    occ[l as usize].push(i);
                }
                clauses.push(Some(r));
            }
            eliminated[v as usize] = true;
            stack.push((v, saved));
            changed = true;
        }
        if !changed {
            break;
        }
    }
    (
        clauses.into_iter().flatten().collect(),
        Elimination { stack },
    )
}

/// Resolvent of two sorted clauses on `var`; `None` when tautological.
fn resolve(a: &[u32], b: &[u32], var: u32) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(a.len() + b.len() - 2);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if next >> 1 == var {
            continue;
        }
        if out.last().is_some_and(|&l: &u32| l == next ^ 1) {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolvent_drops_pivot_and_detects_tautology() {
        // (x0 ∨ x1) ⊗ (¬x0 ∨ x2) = (x1 ∨ x2)
        assert_eq!(resolve(&[0, 2], &[1, 4], 0), Some(vec![2, 4]));
        // (x0 ∨ x1) ⊗ (¬x0 ∨ ¬x1) is tautological
        assert_eq!(resolve(&[0, 2], &[1, 3], 0), None);
    }

    #[test]
    fn extension_satisfies_removed_clauses() {
        // (¬x0 ∨ x2), (¬x1 ∨ ¬x2), (x0 ∨ ¬x2), (x1 ∨ x2): x2 is eliminable
        let clauses = vec![vec![1, 4], vec![3, 5], vec![0, 5], vec![2, 4]];
        let (rest, elim) = eliminate(3, clauses.clone(), &[true, true, false]);
        assert!(!elim.stack.is_empty());
        for bits in 0..4u32 {
            let mut values = vec![bits & 1 != 0, bits & 2 != 0, false];
            let sat = |c: &Vec<u32>, vals: &[bool]| {
                c.iter().any(|&l| vals[(l >> 1) as usize] == (l & 1 == 0))
            };
            if rest.iter().all(|c| sat(c, &values)) {
                elim.extend(&mut values);
                assert!(clauses.iter().all(|c| sat(c, &values)));
            }
        }
    }
}
