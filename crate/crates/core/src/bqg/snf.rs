//! Smith normal form over the integers.
//!
//! Entries equal to ±1 are eliminated first on a sparse representation,
//! which keeps bar-complex boundaries small; whatever is left is reduced
//! densely with arbitrary-precision entries, pivoting on the smallest
//! nonzero absolute value.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An integer matrix given by its nonzero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)`, at most one per position, no zeros.
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Adds `v` at `(i, j)`, merging with an existing entry.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (i, j, v) in triplets {
            *acc.entry((i, j)).or_default() += v;
        }
        SparseMatrix {
            rows,
            cols,
            entries: acc
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|((i, j), v)| (i, j, v))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols]; self.rows];
        for &(i, j, v) in &self.entries {
            d[i][j] = v;
        }
        d
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(i, j, v) in &other.entries {
            by_row[i].push((j, v));
        }
        let mut out = Vec::new();
        for &(i, k, v) in &self.entries {
            for &(j, w) in &by_row[k] {
                out.push((i, j, v * w));
            }
        }
        SparseMatrix::from_triplets(self.rows, other.cols, out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Text dump: `rows cols`, then the rows, entries separated by spaces.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for row in self.to_dense() {
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Rank and elementary divisors greater than one, in a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for SnfResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        write!(f, "rank {} torsion [{}]", self.rank, parts.join(", "))
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> SnfResult {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for &(i, j, v) in &m.entries {
        if v != 0 {
            rows[i].insert(j, BigInt::from(v));
            cols[j].insert(i);
        }
    }
    let mut rank = 0;
    // Sparse elimination of unit pivots.
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (&j, v) in row {
                if v.abs().is_one() {
                    let cost = (row.len() - 1) * (cols[j].len() - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((i, j, cost));
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        for &j in pivot_row.keys() {
            cols[j].remove(&pi);
        }
        let unit = pivot_row[&pj].clone();
        let others: Vec<usize> = cols[pj].iter().copied().collect();
        for k in others {
            let factor = &rows[k][&pj] * &unit;
            for (&j, v) in &pivot_row {
                let entry = rows[k].entry(j).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[k].remove(&j);
                    cols[j].remove(&k);
                } else {
                    cols[j].insert(k);
                }
            }
        }
        debug_assert!(cols[pj].is_empty());
        rank += 1;
    }
    // Dense reduction of what remains.
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| !cols[j].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
    let mut dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&i| {
            let mut r = vec![BigInt::zero(); live_cols.len()];
            for (j, v) in &rows[i] {
                r[col_pos[j]] = v.clone();
            }
            r
        })
        .collect();
    let diagonal = dense_snf(&mut dense);
    rank += diagonal.len();
    let torsion = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    SnfResult { rank, torsion }
}

/// Diagonalizes in place; returns the nonzero invariant factors (positive, divisibility chain).
#[allow(clippy::needless_range_loop)]
fn dense_snf(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        // Smallest nonzero entry of the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && pivot.is_none_or(|(pi, pj)| v.abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..nc {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            let p = a[t][t].clone();
            let offender = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    for j in t..nc {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}
