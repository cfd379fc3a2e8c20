//! Felsch-style coset enumeration over the trivial subgroup.
//!
//! Column `2(k-1)` holds generator `k`, column `2(k-1)+1` its inverse.
//! Every table entry is set together with its inverse entry, and each new
//! entry is pushed as a deduction whose consequences are found by scanning
//! the cyclic conjugates of the relators that start with that letter.
//! Coincidences are merged by union-find into the smaller coset.

use std::collections::VecDeque;

use super::{Presentation, Word};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Default cap on simultaneously live cosets.
pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationState {
    Closed,
    LimitExceeded,
}

/// Result of an enumeration. When closed, cosets are renumbered in
/// breadth-first order from coset 0 (the trivial subgroup).
#[derive(Clone, Debug)]
pub struct CosetTable {
    state: EnumerationState,
    cols: usize,
    table: Vec<u32>,
    coset_count: usize,
    high_water: usize,
    total_defined: u64,
    limit: usize,
}

pub fn column(letter: i32) -> usize {
    2 * (letter.unsigned_abs() as usize - 1) + usize::from(letter < 0)
}

impl CosetTable {
    pub fn state(&self) -> EnumerationState {
        self.state
    }

    pub fn is_closed(&self) -> bool {
        self.state == EnumerationState::Closed
    }

    /// Number of cosets of a closed table; live cosets at abort otherwise.
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    /// Largest number of simultaneously live cosets.
    pub fn high_water(&self) -> usize {
        self.high_water
    }

    pub fn total_defined(&self) -> u64 {
        self.total_defined
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn columns(&self) -> usize {
        self.cols
    }

    /// Image of coset `c` under the signed generator `letter`.
    pub fn act(&self, c: u32, letter: i32) -> u32 {
        self.table[c as usize * self.cols + column(letter)]
    }

    pub fn trace_from(&self, start: u32, w: &Word) -> Result<u32> {
        if !self.is_closed() {
            return Err(Error::TableNotClosed);
        }
        Ok(w.letters().iter().fold(start, |c, &l| self.act(c, l)))
    }

    /// Image of coset 0 under `w`; `w` is trivial in the group iff this is 0.
    pub fn trace(&self, w: &Word) -> Result<u32> {
        self.trace_from(0, w)
    }

    /// Shortest-prefix words reaching each coset (breadth-first spanning tree).
    pub fn representatives(&self) -> Result<Vec<Word>> {
        if !self.is_closed() {
            return Err(Error::TableNotClosed);
        }
        let mut reps: Vec<Option<Word>> = vec![None; self.coset_count];
        reps[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0u32]);
        while let Some(c) = queue.pop_front() {
            for col in 0..self.cols {
                let d = self.table[c as usize * self.cols + col];
                if reps[d as usize].is_none() {
                    let letter = (col / 2 + 1) as i32 * if col % 2 == 1 { -1 } else { 1 };
                    let w = reps[c as usize].as_ref().unwrap().concat(&Word(vec![letter]));
                    reps[d as usize] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        Ok(reps
            .into_iter()
            .map(|w| w.expect("closed tables are connected"))
            .collect())
    }

    /// Every relator returns every coset to itself.
    pub fn relators_hold(&self, p: &Presentation) -> bool {
        self.is_closed()
            && (0..self.coset_count as u32).all(|c| {
                p.relators
                    .iter()
                    .all(|r| self.trace_from(c, r).map(|d| d == c).unwrap_or(false))
            })
    }
}

struct Enumerator<'a> {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    limit: usize,
    relators: &'a [Vec<u32>],
    /// Cyclic conjugates of relators and their inverses, by first column.
    conjugates: &'a [Vec<Vec<u32>>],
    deductions: Vec<(u32, u32)>,
    queue: Vec<u32>,
    /// No live coset below this one has an undefined entry.
    cursor: usize,
    high_water: usize,
    total_defined: u64,
}

impl Enumerator<'_> {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.cols + col as usize]
    }

    fn set(&mut self, c: u32, col: u32, d: u32) {
        self.table[c as usize * self.cols + col as usize] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols as u32 {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let xi = x ^ 1;
                self.set(d, xi, NONE);
                self.cursor = self.cursor.min(d as usize);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let forward = self.get(mu, x);
                if forward != NONE {
                    self.merge(nu, forward);
                    continue;
                }
                let back = self.get(nu, xi);
                if back != NONE {
                    self.merge(mu, back);
                    continue;
                }
                self.set(mu, x, nu);
                self.set(nu, xi, mu);
                self.deductions.push((mu, x));
            }
        }
        self.queue.clear();
    }

    /// Scans `w` at `alpha` without defining cosets: deduces a single missing
    /// entry, or records a coincidence when the scan completes inconsistently.
    fn scan(&mut self, alpha: u32, w: &[u32]) {
        let n = w.len();
        let mut f = alpha;
        let mut i = 0;
        while i < n {
            let t = self.get(f, w[i]);
            if t == NONE {
                break;
            }
            f = t;
            i += 1;
        }
        if i == n {
            if f != alpha {
                self.coincidence(f, alpha);
            }
            return;
        }
        let mut b = alpha;
        let mut j = n - 1;
        loop {
            let t = self.get(b, w[j] ^ 1);
            if t == NONE {
                break;
            }
            b = t;
            if j == i {
                // Backward scan met the forward scan.
                self.coincidence(f, b);
                return;
            }
            j -= 1;
        }
        if j == i {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.deductions.push((f, w[i]));
        }
    }

    fn process_deductions(&mut self) {
        let conjugates = self.conjugates;
        while let Some((a, x)) = self.deductions.pop() {
            if !self.is_live(a) {
                continue;
            }
            for w in &conjugates[x as usize] {
                self.scan(a, w);
                if !self.is_live(a) {
                    break;
                }
            }
            if !self.is_live(a) {
                continue;
            }
            let b = self.get(a, x);
            if b == NONE {
                continue;
            }
            for w in &conjugates[(x ^ 1) as usize] {
                self.scan(b, w);
                if !self.is_live(b) {
                    break;
                }
            }
        }
    }

    fn first_undefined(&mut self) -> Option<(u32, u32)> {
        while self.cursor < self.rows() {
            let c = self.cursor as u32;
            if self.is_live(c) {
                if let Some(x) = (0..self.cols as u32).find(|&x| self.get(c, x) == NONE) {
                    return Some((c, x));
                }
            }
            self.cursor += 1;
        }
        None
    }

    /// Renumbers live cosets consecutively, reclaiming dead rows.
    #[allow(clippy::needless_range_loop)]
    fn compact(&mut self) {
        let rows = self.rows();
        let mut new_id = vec![NONE; rows];
        let mut next = 0u32;
        for c in 0..rows {
            if self.parent[c] == c as u32 {
                new_id[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..rows {
            if new_id[c] == NONE {
                continue;
            }
            for x in 0..self.cols {
                let d = self.table[c * self.cols + x];
                table.push(if d == NONE { NONE } else { new_id[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions = self
            .deductions
            .iter()
            .filter(|(c, _)| new_id[*c as usize] != NONE)
            .map(|&(c, x)| (new_id[c as usize], x))
            .collect();
        self.cursor = new_id[..self.cursor.min(rows)].iter().filter(|&&n| n != NONE).count();
    }

    fn new_coset(&mut self) -> Option<u32> {
        if self.live >= self.limit {
            return None;
        }
        if self.rows() >= self.limit {
            self.compact();
        }
        let c = self.rows() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.total_defined += 1;
        self.high_water = self.high_water.max(self.live);
        Some(c)
    }

    /// Scans every relator at every live coset of a complete table.
    /// Returns false if anything collapsed.
    fn verify_complete(&mut self) -> bool {
        let relators = self.relators;
        for c in 0..self.rows() as u32 {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                let before = self.live;
                self.scan(c, r);
                if self.live != before || !self.deductions.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) -> EnumerationState {
        loop {
            self.process_deductions();
            match self.first_undefined() {
                Some((c, x)) => match self.new_coset() {
                    Some(d) => {
                        self.set(c, x, d);
                        self.set(d, x ^ 1, c);
                        self.deductions.push((c, x));
                    }
                    None => return EnumerationState::LimitExceeded,
                },
                None => {
                    if self.verify_complete() {
                        return EnumerationState::Closed;
                    }
                }
            }
        }
    }

    /// Breadth-first renumbering of the live cosets from coset 0.
    fn standardized(&self) -> Vec<u32> {
        let mut new_id = vec![NONE; self.rows()];
        let mut order = vec![0u32];
        new_id[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..self.cols as u32 {
                let d = self.get(c, x);
                if new_id[d as usize] == NONE {
                    new_id[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * self.cols);
        for &c in &order {
            for x in 0..self.cols as u32 {
                table.push(new_id[self.get(c, x) as usize]);
            }
        }
        table
    }
}

fn cyclic_conjugates(relators: &[Vec<u32>], cols: usize) -> Vec<Vec<Vec<u32>>> {
    let mut by_first: Vec<Vec<Vec<u32>>> = vec![Vec::new(); cols];
    let mut seen = std::collections::HashSet::new();
    for r in relators {
        let inv: Vec<u32> = r.iter().rev().map(|&x| x ^ 1).collect();
        for w in [r, &inv] {
            for s in 0..w.len() {
                let rotated: Vec<u32> = w[s..].iter().chain(&w[..s]).copied().collect();
                if seen.insert(rotated.clone()) {
                    by_first[rotated[0] as usize].push(rotated);
                }
            }
        }
    }
    by_first
}

/// Enumerates the cosets of the trivial subgroup, keeping at most `limit` live cosets.
pub fn todd_coxeter(p: &Presentation, limit: usize) -> Result<CosetTable> {
    if limit == 0 {
        return Err(Error::InvalidParameter("coset limit must be at least 1".into()));
    }
    let cols = 2 * p.generator_count();
    let relators: Vec<Vec<u32>> = p
        .relators
        .iter()
        .map(|r| r.reduced())
        .filter(|r| !r.is_empty())
        .map(|r| r.letters().iter().map(|&l| column(l) as u32).collect())
        .collect();
    let conjugates = cyclic_conjugates(&relators, cols);
    let mut e = Enumerator {
        cols,
        table: vec![NONE; cols],
        parent: vec![0],
        live: 1,
        limit,
        relators: &relators,
        conjugates: &conjugates,
        deductions: Vec::new(),
        queue: Vec::new(),
        cursor: 0,
        high_water: 1,
        total_defined: 1,
    };
    let state = e.run();
    let (table, coset_count) = match state {
        EnumerationState::Closed => (e.standardized(), e.live),
        EnumerationState::LimitExceeded => (Vec::new(), e.live),
    };
    Ok(CosetTable {
        state,
        cols,
        table,
        coset_count,
        high_water: e.high_water,
        total_defined: e.total_defined,
        limit,
    })
}
