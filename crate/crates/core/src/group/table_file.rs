//! Multiplication-table files.
//!
//! Line 1 holds the order `n`; the next `n` lines hold `n` whitespace-separated
//! 0-based ids each, row `g` column `h` being the id of `g·h`. Id 0 must be the
//! identity. Associativity is verified for `n ≤ 512`.

use std::path::Path;

use super::{FiniteGroup, TableData};
use crate::error::{Error, Result};

const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

pub fn load_table_file(path: impl AsRef<Path>) -> Result<FiniteGroup> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text)
}

pub fn parse_table(text: &str) -> Result<FiniteGroup> {
    let bad = |msg: String| Error::InvalidTable(msg);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| bad("empty file".into()))?
        .trim()
        .parse()
        .map_err(|_| bad("first line must be the group order".into()))?;
    if n == 0 {
        return Err(bad("order must be positive".into()));
    }
    if n > super::ORDER_CEILING {
        return Err(Error::SizeCeiling {
            ceiling: super::ORDER_CEILING,
        });
    }
    let mut mul = Vec::with_capacity(n * n);
    for row in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| bad(format!("expected {n} rows, found {row}")))?;
        let before = mul.len();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| bad(format!("row {row}: {tok:?} is not an id")))?;
            if v >= n {
                return Err(bad(format!("row {row}: id {v} out of range")));
            }
            mul.push(v as u32);
        }
        if mul.len() - before != n {
            return Err(bad(format!(
                "row {row} has {} entries, expected {n}",
                mul.len() - before
            )));
        }
    }
    if lines.next().is_some() {
        return Err(bad("trailing rows after the table".into()));
    }
    for g in 0..n {
        if mul[g] as usize != g || mul[g * n] as usize != g {
            return Err(bad(format!("id 0 is not a two-sided identity (fails at {g})")));
        }
    }
    // Latin square: every row and column is a permutation, so inverses exist.
    for g in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for h in 0..n {
            let r = mul[g * n + h] as usize;
            let c = mul[h * n + g] as usize;
            if row_seen[r] || col_seen[c] {
                return Err(bad(format!("row or column {g} repeats an entry")));
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    if n <= ASSOCIATIVITY_CHECK_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = mul[b * n + c] as usize;
                    if mul[ab * n + c] != mul[a * n + bc] {
                        return Err(bad(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
    }
    Ok(FiniteGroup::from_table(TableData::new(n, mul, None)))
}
