//! Propositional satisfiability: truth tables for small alphabets, Tseitin
//! clausification plus conflict-driven clause learning otherwise.

use std::collections::{BTreeMap, BinaryHeap};

use crate::boolean::Bool;

/// Alphabets up to this size are decided by exhaustive truth tables.
pub const TRUTH_TABLE_LIMIT: usize = 20;

/// A literal: `+v` / `-v` for variable `v ≥ 1`.
pub type Lit = i32;
pub type Clause = Vec<Lit>;

/// Exhaustive search over the atoms of `expr`; returns a satisfying valuation
/// as a map from atom to value.
pub fn truth_table_sat<T: Ord + Clone>(exprs: &[&Bool<T>]) -> Option<BTreeMap<T, bool>> {
    let atoms: Vec<T> = {
        let mut all: Vec<T> = exprs.iter().flat_map(|e| e.atoms()).cloned().collect();
        all.sort();
        all.dedup();
        all
    };
    assert!(atoms.len() < 64, "truth table over {} atoms", atoms.len());
    for mask in 0u64..(1u64 << atoms.len()) {
        let value = |t: &T| {
            let i = atoms.binary_search(t).expect("atom collected above");
            mask >> i & 1 == 1
        };
        if exprs.iter().all(|e| e.eval(&mut |t| value(t))) {
            return Some(atoms.iter().map(|t| (t.clone(), value(t))).collect());
        }
    }
    None
}

/// Decides the conjunction of `exprs`, using a truth table for small
/// alphabets and clause learning beyond [`TRUTH_TABLE_LIMIT`] atoms.
pub fn sat<T: Ord + Clone>(exprs: &[&Bool<T>]) -> Option<BTreeMap<T, bool>> {
    let mut atoms: Vec<T> = exprs.iter().flat_map(|e| e.atoms()).cloned().collect();
    atoms.sort();
    atoms.dedup();
    if atoms.len() <= TRUTH_TABLE_LIMIT {
        return truth_table_sat(exprs);
    }
    let index = |t: &T| atoms.binary_search(t).expect("atom collected above");
    let mut cnf = Cnf::new(atoms.len());
    for e in exprs {
        let mapped = e.map(&mut |t| index(t));
        cnf.assert(&mapped);
    }
    let model = cnf.solve()?;
    Some(atoms.iter().enumerate().map(|(i, t)| (t.clone(), model[i])).collect())
}

/// Clause database over atoms `0..atoms` plus Tseitin auxiliaries.
#[derive(Clone, Debug)]
pub struct Cnf {
    atoms: usize,
    vars: usize,
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(atoms: usize) -> Self {
        Self { atoms, vars: atoms, clauses: Vec::new() }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    fn fresh(&mut self) -> Lit {
        self.vars += 1;
        self.vars as Lit
    }

    pub fn add_clause(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    /// Adds `expr` (atoms are indices below `atoms`) as a constraint.
    pub fn assert(&mut self, expr: &Bool<usize>) {
        match expr {
            Bool::And(l, r) => {
                self.assert(l);
                self.assert(r);
            }
            _ => {
                let lit = self.encode(expr);
                self.clauses.push(vec![lit]);
            }
        }
    }

    fn encode(&mut self, expr: &Bool<usize>) -> Lit {
        match expr {
            Bool::Atom(i) => {
                assert!(*i < self.atoms, "atom {i} out of range");
                *i as Lit + 1
            }
            Bool::Not(x) => -self.encode(x),
            Bool::And(l, r) | Bool::Or(l, r) => {
                let (a, b) = (self.encode(l), self.encode(r));
                let g = self.fresh();
                if matches!(expr, Bool::And(..)) {
                    self.clauses.push(vec![-g, a]);
                    self.clauses.push(vec![-g, b]);
                    self.clauses.push(vec![g, -a, -b]);
                } else {
                    self.clauses.push(vec![-g, a, b]);
                    self.clauses.push(vec![g, -a]);
                    self.clauses.push(vec![g, -b]);
                }
                g
            }
        }
    }

    /// Conflict-driven search. Returns values for the original atoms.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut solver = Cdcl::new(self.vars);
        for c in &self.clauses {
            if !solver.add_clause(c) {
                return None;
            }
        }
        let values = solver.search()?;
        Some(values[..self.atoms].to_vec())
    }
}

/// Internal literal: `2·var + negated`.
type L = u32;

fn lit(l: Lit) -> L {
    (l.unsigned_abs() - 1) * 2 + u32::from(l < 0)
}

fn var(l: L) -> usize {
    (l >> 1) as usize
}

struct Cdcl {
    clauses: Vec<Vec<L>>,
    watches: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<L>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: BinaryHeap<(u64, usize)>,
    phase: Vec<bool>,
    seen: Vec<bool>,
}

impl Cdcl {
    fn new(vars: usize) -> Self {
        Self {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * vars],
            assign: vec![None; vars],
            level: vec![0; vars],
            reason: vec![None; vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; vars],
            var_inc: 1.0,
            heap: (0..vars).map(|v| (0, v)).collect(),
            phase: vec![false; vars],
            seen: vec![false; vars],
        }
    }

    fn value(&self, l: L) -> Option<bool> {
        self.assign[var(l)].map(|b| b != (l & 1 == 1))
    }

    fn enqueue(&mut self, l: L, reason: Option<usize>) {
        let v = var(l);
        self.assign[v] = Some(l & 1 == 0);
        self.level[v] = self.trail_lim.len();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Adds an input clause at level 0, simplified by the current level-0
    /// assignment; `false` if the database became unsatisfiable.
    fn add_clause(&mut self, clause: &[Lit]) -> bool {
        let mut c: Vec<L> = clause.iter().map(|&l| lit(l)).collect();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) || c.iter().any(|&l| self.value(l) == Some(true)) {
            return true;
        }
        c.retain(|&l| self.value(l).is_none());
        match c.len() {
            0 => false,
            1 => {
                self.enqueue(c[0], None);
                self.propagate().is_none()
            }
            _ => {
                self.attach(c);
                true
            }
        }
    }

    fn attach(&mut self, c: Vec<L>) -> usize {
        let id = self.clauses.len();
        self.watches[c[0] as usize].push(id);
        self.watches[c[1] as usize].push(id);
        self.clauses.push(c);
        id
    }

    /// Unit propagation over two watched literals; the conflicting clause on
    /// failure.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let falsified = self.trail[self.qhead] ^ 1;
            self.qhead += 1;
            let ws = std::mem::take(&mut self.watches[falsified as usize]);
            let mut kept = Vec::with_capacity(ws.len());
            let mut conflict = None;
            for (i, &id) in ws.iter().enumerate() {
                if conflict.is_some() {
                    kept.extend_from_slice(&ws[i..]);
                    break;
                }
                let c = &mut self.clauses[id];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self.assign[var(first)].map(|b| b != (first & 1 == 1)) == Some(true) {
                    kept.push(id);
                    continue;
                }
                let replacement = (2..c.len()).find(|&k| {
                    let l = c[k];
                    self.assign[var(l)].map(|b| b != (l & 1 == 1)) != Some(false)
                });
                if let Some(k) = replacement {
                    c.swap(1, k);
                    let w = c[1];
                    self.watches[w as usize].push(id);
                    continue;
                }
                kept.push(id);
                match self.value(first) {
                    Some(false) => conflict = Some(id),
                    _ => self.enqueue(first, Some(id)),
                }
            }
            self.watches[falsified as usize] = kept;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
            self.heap = (0..self.assign.len()).map(|u| (self.activity[u].to_bits(), u)).collect();
        } else {
            self.heap.push((self.activity[v].to_bits(), v));
        }
    }

    /// First-UIP learnt clause (asserting literal first) and the level to
    /// jump back to.
    fn analyze(&mut self, mut confl: usize) -> (Vec<L>, usize) {
        let current = self.trail_lim.len();
        let mut learnt: Vec<L> = vec![0];
        let mut pending = 0;
        let mut p: Option<L> = None;
        let mut idx = self.trail.len();
        loop {
            let skip = usize::from(p.is_some());
            for j in skip..self.clauses[confl].len() {
                let q = self.clauses[confl][j];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.level[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] {
                    break;
                }
            }
            let l = self.trail[idx];
            self.seen[var(l)] = false;
            pending -= 1;
            p = Some(l);
            if pending == 0 {
                break;
            }
            confl = self.reason[var(l)].expect("implied literal has a reason");
        }
        learnt[0] = p.expect("conflict above level 0") ^ 1;
        for l in &learnt[1..] {
            self.seen[var(*l)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let (i, lvl) = (1..learnt.len()).map(|i| (i, self.level[var(learnt[i])])).max_by_key(|x| x.1).unwrap();
            learnt.swap(1, i);
            back = lvl;
        }
        self.var_inc *= 1.0 / 0.95;
        (learnt, back)
    }

    fn backtrack(&mut self, level: usize) {
        if self.trail_lim.len() <= level {
            return;
        }
        let start = self.trail_lim[level];
        for l in self.trail.drain(start..) {
            let v = var(l);
            self.phase[v] = l & 1 == 0;
            self.assign[v] = None;
            self.reason[v] = None;
            self.heap.push((self.activity[v].to_bits(), v));
        }
        self.trail_lim.truncate(level);
        self.qhead = self.trail.len();
    }

    fn decide(&mut self) -> Option<L> {
        while let Some((_, v)) = self.heap.pop() {
            if self.assign[v].is_none() {
                return Some(2 * v as L + u32::from(!self.phase[v]));
            }
        }
        None
    }

    fn search(&mut self) -> Option<Vec<bool>> {
        if self.propagate().is_some() {
            return None;
        }
        let mut conflicts = 0u64;
        let mut restart = 1u32;
        let mut budget = luby(restart) * 100;
        loop {
            if let Some(confl) = self.propagate() {
                if self.trail_lim.is_empty() {
                    return None;
                }
                conflicts += 1;
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let asserting = learnt[0];
                    let id = self.attach(learnt);
                    self.enqueue(asserting, Some(id));
                }
                continue;
            }
            if conflicts >= budget {
                conflicts = 0;
                restart += 1;
                budget = luby(restart) * 100;
                self.backtrack(0);
                continue;
            }
            match self.decide() {
                Some(l) => {
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(l, None);
                }
                None => return Some(self.assign.iter().map(|b| b.unwrap_or(false)).collect()),
            }
        }
    }
}

/// The Luby restart sequence 1, 1, 2, 1, 1, 2, 4, … (1-based).
fn luby(i: u32) -> u64 {
    let mut k = 1;
    while (1u64 << k) - 1 < u64::from(i) {
        k += 1;
    }
    if (1u64 << k) - 1 == u64::from(i) {
        1 << (k - 1)
    } else {
        luby(i - ((1 << (k - 1)) - 1) as u32)
    }
}
