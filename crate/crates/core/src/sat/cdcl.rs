//! Conflict-driven clause learning.
//!
//! Bounded variable elimination up front, then first-UIP learning with
//! recursive minimization, move-to-front branching over the variables met in
//! conflict analysis (and in the reasons of the learnt clause), saved phases
//! (initially true) and restarts whenever the short-term LBD average exceeds
//! the long-term one. Learnt clauses live in three tiers by LBD; the
//! low-LBD ones are vivified at each reduction. All tie-breaks go by variable
//! or clause index, so runs are reproducible.
//!
//! Literals are dense indices (`Literal::index`): variable `v` (0-based) maps
//! to `2v` (positive) and `2v + 1` (negative), so negation is `^ 1`.

use super::elim;
use super::prepared::Prepared;
use super::{Deadline, SearchResult, SolverStats};

const NONE: u32 = u32::MAX;
/// Watcher flag: the clause is binary and `blocker` is its other literal.
const BINARY: u32 = 1 << 31;

// Arena layout per clause: [size, flags | lbd << LBD_SHIFT, activity bits, lits..]
const HEADER: usize = 3;
const LEARNT: u32 = 1;
const DELETED: u32 = 2;
const USED: u32 = 4;
const VIVIFIED: u32 = 8;
const LBD_SHIFT: u32 = 4;

const CORE_LBD: u32 = 2;
const TIER2_LBD: u32 = 6;
const BUMP_REASON_LIMIT: usize = 10;
const FIRST_REDUCE: u64 = 2000;
const REDUCE_INCREMENT: u64 = 300;
const CLAUSE_DECAY: f32 = 0.999;
const FAST_ALPHA: f64 = 0.03;
const SLOW_ALPHA: f64 = 1e-5;
const RESTART_MARGIN: f64 = 1.05;
const MIN_RESTART_GAP: u64 = 2;
/// Vivification may spend this fraction of the search propagations.
const VIVIFY_EFFORT: f64 = 0.1;

#[derive(Clone, Copy)]
struct Watch {
    blocker: u32,
    cref: u32,
}

/// Variable move-to-front queue: bumping moves a variable to the back, and
/// decisions take the unassigned variable nearest the back.
struct Vmtf {
    prev: Vec<u32>,
    next: Vec<u32>,
    stamp: Vec<u64>,
    last: u32,
    search: u32,
    clock: u64,
}

impl Vmtf {
    /// Initial order puts variable 0 at the back, so it is decided first.
    fn new(num_vars: usize) -> Self {
        let mut q = Vmtf {
            prev: vec![NONE; num_vars],
            next: vec![NONE; num_vars],
            stamp: vec![0; num_vars],
            last: NONE,
            search: NONE,
            clock: 0,
        };
        for v in (0..num_vars as u32).rev() {
            q.push_back(v);
        }
        q.search = q.last;
        q
    }

    fn push_back(&mut self, v: u32) {
        self.prev[v as usize] = self.last;
        self.next[v as usize] = NONE;
        if self.last != NONE {
            self.next[self.last as usize] = v;
        }
        self.last = v;
        self.clock += 1;
        self.stamp[v as usize] = self.clock;
    }

    fn unlink(&mut self, v: u32) {
        let (p, n) = (self.prev[v as usize], self.next[v as usize]);
        if p != NONE {
            self.next[p as usize] = n;
        }
        if n != NONE {
            self.prev[n as usize] = p;
        } else {
            self.last = p;
        }
    }

    fn bump(&mut self, v: u32, assigned: bool) {
        if self.last != v {
            self.unlink(v);
            self.push_back(v);
        }
        if !assigned {
            self.search = v;
        }
    }

    fn unassigned(&mut self, v: u32) {
        if self.search == NONE || self.stamp[v as usize] > self.stamp[self.search as usize] {
            self.search = v;
        }
    }
}

/// Exponential moving average with bias correction for the early samples.
struct Ema {
    biased: f64,
    exp: f64,
    alpha: f64,
}

impl Ema {
    fn new(alpha: f64) -> Self {
        Ema {
            biased: 0.0,
            exp: 1.0,
            alpha,
        }
    }

    fn push(&mut self, y: f64) {
        self.biased += self.alpha * (y - self.biased);
        self.exp *= 1.0 - self.alpha;
    }

    fn value(&self) -> f64 {
        if self.exp >= 1.0 {
            0.0
        } else {
            self.biased / (1.0 - self.exp)
        }
    }
}

struct Cdcl {
    num_vars: usize,
    arena: Vec<u32>,
    originals: Vec<u32>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watch>>,
    /// Per-literal value: 1 true, −1 false, 0 unassigned.
    vals: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    vmtf: Vmtf,
    analyzed: Vec<u32>,
    saved: Vec<bool>,
    seen: Vec<bool>,
    to_clear: Vec<u32>,
    stack: Vec<u32>,
    level_stamp: Vec<u64>,
    stamp: u64,
    cla_inc: f32,
    lbd_fast: Ema,
    lbd_slow: Ema,
    ignored: u32,
}

impl Cdcl {
    fn new(num_vars: usize) -> Self {
        Cdcl {
            num_vars,
            arena: Vec::new(),
            originals: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            vals: vec![0; 2 * num_vars],
            level: vec![0; num_vars],
            reason: vec![NONE; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            vmtf: Vmtf::new(num_vars),
            analyzed: Vec::new(),
            saved: vec![true; num_vars],
            seen: vec![false; num_vars],
            to_clear: Vec::new(),
            stack: Vec::new(),
            level_stamp: vec![0; num_vars + 1],
            stamp: 0,
            cla_inc: 1.0,
            lbd_fast: Ema::new(FAST_ALPHA),
            lbd_slow: Ema::new(SLOW_ALPHA),
            ignored: NONE,
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn size(&self, c: u32) -> usize {
        self.arena[c as usize] as usize
    }

    fn flags(&self, c: u32) -> u32 {
        self.arena[c as usize + 1]
    }

    fn lbd_of(&self, c: u32) -> u32 {
        self.flags(c) >> LBD_SHIFT
    }

    fn set_lbd(&mut self, c: u32, lbd: u32) {
        let f = &mut self.arena[c as usize + 1];
        *f = (*f & ((1 << LBD_SHIFT) - 1)) | (lbd << LBD_SHIFT);
    }

    fn activity_of(&self, c: u32) -> f32 {
        f32::from_bits(self.arena[c as usize + 2])
    }

    fn lits(&self, c: u32) -> &[u32] {
        let base = c as usize + HEADER;
        &self.arena[base..base + self.size(c)]
    }

    fn enqueue(&mut self, lit: u32, reason: u32) {
        let v = (lit >> 1) as usize;
        self.vals[lit as usize] = 1;
        self.vals[(lit ^ 1) as usize] = -1;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    fn alloc(&mut self, lits: &[u32], learnt: bool, lbd: u32) -> u32 {
        let cref = self.arena.len() as u32;
        assert!(cref < BINARY, "clause arena overflow");
        self.arena.push(lits.len() as u32);
        self.arena
            .push(u32::from(learnt) * LEARNT | (lbd << LBD_SHIFT));
        self.arena.push(0f32.to_bits());
        self.arena.extend_from_slice(lits);
        if learnt {
            self.learnts.push(cref);
        } else {
            self.originals.push(cref);
        }
        self.attach(cref);
        cref
    }

    fn attach(&mut self, cref: u32) {
        let base = cref as usize + HEADER;
        let (l0, l1) = (self.arena[base], self.arena[base + 1]);
        let tag = if self.size(cref) == 2 { BINARY } else { 0 };
        self.watches[(l0 ^ 1) as usize].push(Watch {
            blocker: l1,
            cref: cref | tag,
        });
        self.watches[(l1 ^ 1) as usize].push(Watch {
            blocker: l0,
            cref: cref | tag,
        });
    }

    /// Watch lists are indexed by the negation of the watched literal, so
    /// `watches[p]` holds the clauses to visit when `p` becomes true. The
    /// clause in `ignored` (if any) is skipped.
    fn propagate(&mut self, stats: &mut SolverStats) -> u32 {
        let mut conflict = NONE;
        while self.qhead < self.trail.len() && conflict == NONE {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[p as usize]);
            let len = ws.len();
            let (mut i, mut j) = (0, 0);
            // SAFETY: `i, j < len`; every literal code is below `vals.len()`
            // and every watched cref is the offset of a clause in `arena`
            // with at least two literals (the arena is only rebuilt together
            // with the watch lists).
            unsafe {
                while i < len {
                    let w = *ws.get_unchecked(i);
                    i += 1;
                    let bv = *self.vals.get_unchecked(w.blocker as usize);
                    if bv > 0 {
                        *ws.get_unchecked_mut(j) = w;
                        j += 1;
                        continue;
                    }
                    if w.cref & BINARY != 0 {
                        *ws.get_unchecked_mut(j) = w;
                        j += 1;
                        if bv < 0 {
                            conflict = w.cref & !BINARY;
                            break;
                        }
                        stats.propagations += 1;
                        self.enqueue(w.blocker, w.cref & !BINARY);
                        continue;
                    }
                    if w.cref == self.ignored {
                        *ws.get_unchecked_mut(j) = w;
                        j += 1;
                        continue;
                    }
                    let c = w.cref as usize;
                    let base = c + HEADER;
                    let arena = self.arena.as_mut_ptr();
                    if *arena.add(base) == false_lit {
                        *arena.add(base) = *arena.add(base + 1);
                        *arena.add(base + 1) = false_lit;
                    }
                    let first = *arena.add(base);
                    let kept = Watch {
                        blocker: first,
                        cref: w.cref,
                    };
                    let first_value = *self.vals.get_unchecked(first as usize);
                    if first != w.blocker && first_value > 0 {
                        *ws.get_unchecked_mut(j) = kept;
                        j += 1;
                        continue;
                    }
                    let size = *arena.add(c) as usize;
                    let mut moved = false;
                    for k in 2..size {
                        let l = *arena.add(base + k);
                        if *self.vals.get_unchecked(l as usize) >= 0 {
                            *arena.add(base + k) = false_lit;
                            *arena.add(base + 1) = l;
                            self.watches.get_unchecked_mut((l ^ 1) as usize).push(kept);
                            moved = true;
                            break;
                        }
                    }
                    if moved {
                        continue;
                    }
                    *ws.get_unchecked_mut(j) = kept;
                    j += 1;
                    if first_value < 0 {
                        conflict = w.cref;
                        break;
                    }
                    stats.propagations += 1;
                    self.enqueue(first, w.cref);
                }
            }
            while i < len {
                ws[j] = ws[i];
                j += 1;
                i += 1;
            }
            ws.truncate(j);
            self.watches[p as usize] = ws;
        }
        conflict
    }

    fn compute_lbd(&mut self, c: u32) -> u32 {
        self.stamp += 1;
        let mut count = 0;
        let base = c as usize + HEADER;
        for k in 0..self.size(c) {
            let lv = self.level[(self.arena[base + k] >> 1) as usize] as usize;
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                count += 1;
            }
        }
        count
    }

    fn touch_clause(&mut self, c: u32) {
        if self.flags(c) & LEARNT == 0 {
            return;
        }
        let act = self.activity_of(c) + self.cla_inc;
        self.arena[c as usize + 2] = act.to_bits();
        if act > 1e20 {
            for i in 0..self.learnts.len() {
                let l = self.learnts[i] as usize;
                let a = f32::from_bits(self.arena[l + 2]) * 1e-20;
                self.arena[l + 2] = a.to_bits();
            }
            self.cla_inc *= 1e-20;
        }
        self.arena[c as usize + 1] |= USED;
        let old = self.lbd_of(c);
        if old > CORE_LBD {
            let lbd = self.compute_lbd(c);
            if lbd < old {
                self.set_lbd(c, lbd);
            }
        }
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    /// First-UIP clause (asserting literal first), backjump level and LBD.
    fn analyze(&mut self, mut confl: u32) -> (Vec<u32>, u32, u32) {
        let current = self.decision_level();
        let mut learnt = vec![0u32];
        let mut path = 0usize;
        let mut p = NONE;
        let mut idx = self.trail.len();
        loop {
            self.touch_clause(confl);
            let base = confl as usize + HEADER;
            for k in 0..self.size(confl) {
                let q = self.arena[base + k];
                if q == p {
                    continue;
                }
                let v = (q >> 1) as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.analyzed.push(v as u32);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[(self.trail[idx] >> 1) as usize] {
                    break;
                }
            }
            p = self.trail[idx];
            let v = (p >> 1) as usize;
            self.seen[v] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[v];
        }
        learnt[0] = p ^ 1;

        self.to_clear.clear();
        self.to_clear.extend_from_slice(&learnt[1..]);
        let abs = learnt[1..]
            .iter()
            .fold(0, |a, &l| a | self.abstract_level((l >> 1) as usize));
        let mut j = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            if self.reason[(l >> 1) as usize] == NONE || !self.redundant(l, abs) {
                learnt[j] = l;
                j += 1;
            }
        }
        learnt.truncate(j);
        for i in 0..self.to_clear.len() {
            self.seen[(self.to_clear[i] >> 1) as usize] = false;
        }

        let backjump = if learnt.len() == 1 {
            0
        } else {
            let mut best = 1;
            for i in 2..learnt.len() {
                if self.level[(learnt[i] >> 1) as usize] > self.level[(learnt[best] >> 1) as usize]
                {
                    best = i;
                }
            }
            learnt.swap(1, best);
            self.level[(learnt[1] >> 1) as usize]
        };

        if learnt.len() <= BUMP_REASON_LIMIT {
            self.bump_reason_literals(&learnt);
        }

        self.stamp += 1;
        let mut lbd = 0;
        for &l in &learnt {
            let lv = self.level[(l >> 1) as usize] as usize;
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                lbd += 1;
            }
        }
        (learnt, backjump, lbd)
    }

    /// Also bumps the variables in the reasons of the learnt clause's literals.
    fn bump_reason_literals(&mut self, learnt: &[u32]) {
        let start = self.analyzed.len();
        for i in 0..self.analyzed.len() {
            self.seen[self.analyzed[i] as usize] = true;
        }
        for &l in learnt {
            let r = self.reason[(l >> 1) as usize];
            if r == NONE {
                continue;
            }
            let base = r as usize + HEADER;
            for k in 0..self.size(r) {
                let v = (self.arena[base + k] >> 1) as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.analyzed.push(v as u32);
                }
            }
        }
        let _ = start;
        for i in 0..self.analyzed.len() {
            self.seen[self.analyzed[i] as usize] = false;
        }
    }

    /// Whether `lit` is implied by the other literals of the clause being
    /// learnt (recursively through reasons).
    fn redundant(&mut self, lit: u32, abs: u32) -> bool {
        self.stack.clear();
        self.stack.push(lit);
        let top = self.to_clear.len();
        while let Some(q) = self.stack.pop() {
            let qv = q >> 1;
            let c = self.reason[qv as usize];
            let base = c as usize + HEADER;
            for k in 0..self.size(c) {
                let l = self.arena[base + k];
                let v = (l >> 1) as usize;
                if v as u32 == qv || self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                if self.reason[v] != NONE && self.abstract_level(v) & abs != 0 {
                    self.seen[v] = true;
                    self.stack.push(l);
                    self.to_clear.push(l);
                } else {
                    for i in top..self.to_clear.len() {
                        self.seen[(self.to_clear[i] >> 1) as usize] = false;
                    }
                    self.to_clear.truncate(top);
                    return false;
                }
            }
        }
        true
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level as usize];
        for i in (start..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = (l >> 1) as usize;
            self.saved[v] = l & 1 == 0;
            self.vals[l as usize] = 0;
            self.vals[(l ^ 1) as usize] = 0;
            self.reason[v] = NONE;
            self.vmtf.unassigned(v as u32);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level as usize);
        self.qhead = start;
    }

    /// Unassigned variable nearest the back of the queue, in its saved phase.
    fn pick_branch(&mut self) -> Option<u32> {
        let mut v = self.vmtf.search;
        while v != NONE && self.vals[2 * v as usize] != 0 {
            v = self.vmtf.prev[v as usize];
        }
        if v == NONE {
            return None;
        }
        self.vmtf.search = v;
        Some(2 * v + u32::from(!self.saved[v as usize]))
    }

    /// Moves the variables met during the last analysis to the back of the
    /// queue, keeping their relative order.
    fn bump_analyzed(&mut self) {
        let mut analyzed = std::mem::take(&mut self.analyzed);
        analyzed.sort_unstable_by_key(|&v| self.vmtf.stamp[v as usize]);
        for &v in &analyzed {
            let assigned = self.vals[2 * v as usize] != 0;
            self.vmtf.bump(v, assigned);
        }
        analyzed.clear();
        self.analyzed = analyzed;
    }

    fn learn(&mut self, learnt: &[u32], lbd: u32) {
        if learnt.len() == 1 {
            self.enqueue(learnt[0], NONE);
        } else {
            let cref = self.alloc(learnt, true, lbd);
            self.arena[cref as usize + 1] |= USED;
            self.arena[cref as usize + 2] = self.cla_inc.to_bits();
            self.enqueue(learnt[0], cref);
        }
    }

    /// Drops half of the learnt clauses outside the core tier that were not
    /// used since the previous reduction, worst LBD (then activity) first.
    fn reduce(&mut self) {
        let mut candidates = Vec::new();
        for i in 0..self.learnts.len() {
            let c = self.learnts[i];
            let flags = self.flags(c);
            if flags & DELETED != 0 || self.size(c) == 2 {
                continue;
            }
            self.arena[c as usize + 1] &= !USED;
            let lbd = flags >> LBD_SHIFT;
            if lbd <= CORE_LBD || (lbd <= TIER2_LBD && flags & USED != 0) {
                continue;
            }
            candidates.push(c);
        }
        candidates.sort_by(|&a, &b| {
            self.lbd_of(b)
                .cmp(&self.lbd_of(a))
                .then(self.activity_of(a).total_cmp(&self.activity_of(b)))
                .then(a.cmp(&b))
        });
        for &c in candidates.iter().take(candidates.len() / 2) {
            self.arena[c as usize + 1] |= DELETED;
        }
    }

    /// Strengthens low-LBD learnt clauses by propagating the negation of
    /// their literals one at a time. Runs at level 0; returns false on a
    /// level-0 conflict.
    fn vivify(&mut self, budget: u64, stats: &mut SolverStats) -> bool {
        let mut candidates: Vec<u32> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| {
                let f = self.flags(c);
                f & (DELETED | VIVIFIED) == 0 && self.size(c) > 2 && f >> LBD_SHIFT <= TIER2_LBD
            })
            .collect();
        candidates.sort_by(|&a, &b| {
            self.lbd_of(a)
                .cmp(&self.lbd_of(b))
                .then(self.activity_of(b).total_cmp(&self.activity_of(a)))
                .then(a.cmp(&b))
        });
        let limit = stats.propagations + budget;
        let mut lits = Vec::new();
        let mut kept = Vec::new();
        for c in candidates {
            if stats.propagations > limit {
                break;
            }
            if self.flags(c) & DELETED != 0 {
                continue;
            }
            lits.clear();
            lits.extend_from_slice(self.lits(c));
            if lits.iter().any(|&l| self.vals[l as usize] > 0) {
                self.arena[c as usize + 1] |= DELETED;
                continue;
            }
            self.arena[c as usize + 1] |= VIVIFIED;
            self.ignored = c;
            kept.clear();
            for &l in &lits {
                match self.vals[l as usize] {
                    1 => {
                        kept.push(l);
                        break;
                    }
                    -1 => {}
                    _ => {
                        kept.push(l);
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l ^ 1, NONE);
                        if self.propagate(stats) != NONE {
                            break;
                        }
                    }
                }
            }
            self.cancel_until(0);
            self.ignored = NONE;
            if kept.len() == lits.len() {
                continue;
            }
            self.arena[c as usize + 1] |= DELETED;
            match kept.len() {
                0 => return false,
                1 => {
                    self.enqueue(kept[0], NONE);
                    if self.propagate(stats) != NONE {
                        return false;
                    }
                }
                len => {
                    let lbd = self.lbd_of(c).min(len as u32 - 1);
                    let fresh = self.alloc(&kept, true, lbd);
                    self.arena[fresh as usize + 1] |= VIVIFIED;
                }
            }
        }
        true
    }

    /// Compacts the arena at level 0: drops deleted and satisfied clauses,
    /// strips false literals, rebuilds every watch list.
    fn collect(&mut self) {
        debug_assert_eq!(self.decision_level(), 0);
        let old = std::mem::take(&mut self.arena);
        let originals = std::mem::take(&mut self.originals);
        let learnts = std::mem::take(&mut self.learnts);
        for w in self.watches.iter_mut() {
            w.clear();
        }
        let mut buf = Vec::new();
        for (list, learnt) in [(originals, false), (learnts, true)] {
            for c in list {
                let c = c as usize;
                let (size, flags, act) = (old[c] as usize, old[c + 1], old[c + 2]);
                if flags & DELETED != 0 {
                    continue;
                }
                let lits = &old[c + HEADER..c + HEADER + size];
                if lits.iter().any(|&l| self.vals[l as usize] > 0) {
                    continue;
                }
                buf.clear();
                buf.extend(lits.iter().copied().filter(|&l| self.vals[l as usize] == 0));
                debug_assert!(buf.len() >= 2);
                let cref = self.alloc(&buf, learnt, flags >> LBD_SHIFT);
                self.arena[cref as usize + 1] = flags;
                self.arena[cref as usize + 2] = act;
            }
        }
        for &l in &self.trail {
            self.reason[(l >> 1) as usize] = NONE;
        }
    }

    fn run(&mut self, p: &Prepared, deadline: Deadline, stats: &mut SolverStats) -> SearchResult {
        for &u in &p.units {
            let l = u.index() as u32;
            match self.vals[l as usize] {
                -1 => return SearchResult::Unsat,
                0 => self.enqueue(l, NONE),
                _ => {}
            }
        }
        let mut frozen = vec![false; self.num_vars];
        for &l in &self.trail {
            frozen[(l >> 1) as usize] = true;
        }
        let clauses = p
            .clauses
            .iter()
            .map(|c| c.iter().map(|l| l.index() as u32).collect())
            .collect();
        let (clauses, elimination) = elim::eliminate(self.num_vars, clauses, &frozen);
        for &(v, _) in &elimination.stack {
            self.enqueue(2 * v + 1, NONE);
        }
        for c in &clauses {
            if c.is_empty() {
                return SearchResult::Unsat;
            }
            if c.len() == 1 {
                match self.vals[c[0] as usize] {
                    -1 => return SearchResult::Unsat,
                    0 => self.enqueue(c[0], NONE),
                    _ => {}
                }
            } else {
                self.alloc(c, false, 0);
            }
        }
        if self.propagate(stats) != NONE {
            return SearchResult::Unsat;
        }

        let mut since_restart = 0u64;
        let mut next_reduce = FIRST_REDUCE;
        let mut reductions = 0u64;
        let mut props_at_vivify = 0u64;
        let mut steps = 0u64;
        loop {
            steps += 1;
            if steps % 256 == 0 && deadline.expired() {
                return SearchResult::Timeout;
            }
            let confl = self.propagate(stats);
            if confl != NONE {
                stats.conflicts += 1;
                since_restart += 1;
                if self.decision_level() == 0 {
                    return SearchResult::Unsat;
                }
                let (learnt, backjump, lbd) = self.analyze(confl);
                self.cancel_until(backjump);
                self.learn(&learnt, lbd);
                self.lbd_fast.push(f64::from(lbd));
                self.lbd_slow.push(f64::from(lbd));
                self.bump_analyzed();
                self.cla_inc /= CLAUSE_DECAY;
                continue;
            }

            if since_restart >= MIN_RESTART_GAP
                && self.lbd_fast.value() > RESTART_MARGIN * self.lbd_slow.value()
            {
                since_restart = 0;
                self.cancel_until(0);
            }

            if stats.conflicts >= next_reduce {
                reductions += 1;
                next_reduce = stats.conflicts + FIRST_REDUCE + reductions * REDUCE_INCREMENT;
                self.cancel_until(0);
                self.reduce();
                let budget = ((stats.propagations - props_at_vivify) as f64 * VIVIFY_EFFORT) as u64;
                if !self.vivify(budget, stats) {
                    return SearchResult::Unsat;
                }
                props_at_vivify = stats.propagations;
                self.collect();
                continue;
            }

            match self.pick_branch() {
                None => {
                    let mut values: Vec<bool> =
                        (0..self.num_vars).map(|v| self.vals[2 * v] > 0).collect();
                    elimination.extend(&mut values);
                    return SearchResult::Sat(values);
                }
                Some(lit) => {
                    stats.decisions += 1;
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(lit, NONE);
                }
            }
        }
    }
}

pub(crate) fn search(p: &Prepared, deadline: Deadline, stats: &mut SolverStats) -> SearchResult {
    Cdcl::new(p.num_vars).run(p, deadline, stats)
}
