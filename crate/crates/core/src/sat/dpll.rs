//! Chronological backtracking DPLL over two-watched-literal clauses.

use super::prepared::Prepared;
use super::{Deadline, SearchResult, SolverStats};
use crate::encoding::Literal;

const UNASSIGNED: i8 = 0;

struct Frame {
    trail_start: usize,
    decision: Literal,
    flipped: bool,
}

struct Dpll<'a> {
    clauses: Vec<Vec<Literal>>,
    units: &'a [Literal],
    /// Clause ids watching each literal index; the watched literals are
    /// positions 0 and 1 of the clause.
    watches: Vec<Vec<usize>>,
    /// Clause ids containing each literal index, for the pure-literal test.
    occurrences: Vec<Vec<usize>>,
    values: Vec<i8>,
    trail: Vec<Literal>,
    qhead: usize,
    frames: Vec<Frame>,
    next_var: usize,
}

impl<'a> Dpll<'a> {
    fn new(p: &'a Prepared) -> Self {
        let lits = 2 * p.num_vars;
        let mut watches = vec![Vec::new(); lits];
        let mut occurrences = vec![Vec::new(); lits];
        for (id, c) in p.clauses.iter().enumerate() {
            watches[c[0].index()].push(id);
            watches[c[1].index()].push(id);
            for l in c {
                occurrences[l.index()].push(id);
            }
        }
        Dpll {
            clauses: p.clauses.clone(),
            units: &p.units,
            watches,
            occurrences,
            values: vec![UNASSIGNED; p.num_vars + 1],
            trail: Vec::with_capacity(p.num_vars),
            qhead: 0,
            frames: Vec::new(),
            next_var: 1,
        }
    }

    fn value(&self, l: Literal) -> i8 {
        let v = self.values[l.var() as usize];
        if l.is_positive() {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: Literal) {
        self.values[l.var() as usize] = if l.is_positive() { 1 } else { -1 };
        self.trail.push(l);
    }

    /// Returns false on conflict.
    fn propagate(&mut self, stats: &mut SolverStats) -> bool {
        while self.qhead < self.trail.len() {
            let falsified = !self.trail[self.qhead];
            self.qhead += 1;
            let mut watchers = std::mem::take(&mut self.watches[falsified.index()]);
            let mut i = 0;
            let mut conflict = false;
            while i < watchers.len() {
                let cid = watchers[i];
                let clause = &mut self.clauses[cid];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_value = {
                    let v = self.values[other.var() as usize];
                    if other.is_positive() {
                        v
                    } else {
                        -v
                    }
                };
                if other_value > 0 {
                    i += 1;
                    continue;
                }
                let replacement = (2..clause.len()).find(|&k| {
                    let l = clause[k];
                    let v = self.values[l.var() as usize];
                    (if l.is_positive() { v } else { -v }) >= 0
                });
                if let Some(k) = replacement {
                    clause.swap(1, k);
                    let new_watch = clause[1];
                    self.watches[new_watch.index()].push(cid);
                    watchers.swap_remove(i);
                    continue;
                }
                if other_value < 0 {
                    conflict = true;
                    break;
                }
                stats.propagations += 1;
                self.assign(other);
                i += 1;
            }
            self.watches[falsified.index()] = watchers;
            if conflict {
                return false;
            }
        }
        true
    }

    fn clause_satisfied(&self, cid: usize) -> bool {
        self.clauses[cid].iter().any(|&l| self.value(l) > 0)
    }

    fn needed(&self, l: Literal) -> bool {
        self.occurrences[l.index()]
            .iter()
            .any(|&c| !self.clause_satisfied(c))
    }

    fn undo_to(&mut self, trail_len: usize) {
        for l in self.trail.drain(trail_len..) {
            let var = l.var() as usize;
            self.values[var] = UNASSIGNED;
            self.next_var = self.next_var.min(var);
        }
        self.qhead = trail_len;
    }

    /// Pops frames until one whose false branch is still open, and takes it.
    fn backtrack(&mut self, stats: &mut SolverStats) -> bool {
        while let Some(frame) = self.frames.pop() {
            self.undo_to(frame.trail_start);
            if !frame.flipped {
                stats.decisions += 1;
                let flipped = !frame.decision;
                self.frames.push(Frame {
                    trail_start: self.trail.len(),
                    decision: flipped,
                    flipped: true,
                });
                self.assign(flipped);
                return true;
            }
        }
        false
    }

    fn run(&mut self, deadline: Deadline, stats: &mut SolverStats) -> SearchResult {
        for &u in self.units {
            match self.value(u) {
                v if v < 0 => return SearchResult::Unsat,
                0 => self.assign(u),
                _ => {}
            }
        }
        let num_vars = self.values.len() - 1;
        let mut steps: u64 = 0;
        loop {
            steps += 1;
            if steps % 256 == 0 && deadline.expired() {
                return SearchResult::Timeout;
            }
            if !self.propagate(stats) {
                stats.conflicts += 1;
                if !self.backtrack(stats) {
                    return SearchResult::Unsat;
                }
                continue;
            }
            while self.next_var <= num_vars && self.values[self.next_var] != UNASSIGNED {
                self.next_var += 1;
            }
            if self.next_var > num_vars {
                return SearchResult::Sat(self.values[1..].iter().map(|&v| v > 0).collect());
            }
            let var = self.next_var as u32;
            let pos = Literal::positive(var);
            let pos_needed = self.needed(pos);
            let neg_needed = self.needed(!pos);
            if pos_needed && neg_needed {
                stats.decisions += 1;
                self.frames.push(Frame {
                    trail_start: self.trail.len(),
                    decision: pos,
                    flipped: false,
                });
                self.assign(pos);
            } else {
                // Pure (or absent) variable: fixed without a branch point.
                stats.pure_literals += 1;
                self.assign(if pos_needed || !neg_needed { pos } else { !pos });
            }
        }
    }
}

pub(crate) fn search(p: &Prepared, deadline: Deadline, stats: &mut SolverStats) -> SearchResult {
    Dpll::new(p).run(deadline, stats)
}
