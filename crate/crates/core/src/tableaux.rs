//! Standard, semistandard and flagged semistandard tableaux.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{not_contained, Cell, Diagram, Partition, SkewContext};

/// A filling of a skew diagram `λ/μ` with positive integers.
///
/// `rows[i - 1]` holds the entries of row `i` in columns `μ_i + 1 ..= λ_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    outer: Partition,
    inner: Partition,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(outer: Partition, inner: Partition, rows: Vec<Vec<u32>>) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(not_contained(&outer, &inner));
        }
        let shape_ok = rows.len() == outer.len()
            && rows
                .iter()
                .enumerate()
                .all(|(idx, r)| r.len() == outer.part(idx + 1) - inner.part(idx + 1));
        if !shape_ok || rows.iter().flatten().any(|&v| v == 0) {
            return Err(Error::NotAPartition(format!(
                "rows {rows:?} do not fill {outer}/{inner} with positive integers"
            )));
        }
        Ok(Tableau { outer, inner, rows })
    }

    /// A tableau of straight shape read off from its rows.
    pub fn straight(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Tableau::new(shape, Partition::empty(), rows)
    }

    pub fn empty() -> Self {
        Tableau {
            outer: Partition::empty(),
            inner: Partition::empty(),
            rows: Vec::new(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Diagram {
        self.cells().map(|(c, _)| c).collect()
    }

    /// Boxes with their entries in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (Cell, u32)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(idx, row)| {
            let offset = self.inner.part(idx + 1);
            row.iter().enumerate().map(move |(k, &v)| {
                (Cell::new(idx as i64 + 1, (offset + k + 1) as i64), v)
            })
        })
    }

    pub fn get(&self, c: Cell) -> Option<u32> {
        if c.row < 1 || c.col < 1 {
            return None;
        }
        let idx = c.row as usize - 1;
        let offset = self.inner.part(idx + 1);
        let col = c.col as usize;
        if col <= offset {
            return None;
        }
        self.rows.get(idx)?.get(col - offset - 1).copied()
    }

    fn rows_weak_cols_strict(&self) -> bool {
        self.cells().all(|(c, v)| {
            self.get(c.east()).is_none_or(|e| v <= e) && self.get(c.south()).is_none_or(|s| v < s)
        })
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        self.rows_weak_cols_strict()
    }

    /// Entries are exactly `1..=n` and increase along rows and columns.
    pub fn is_standard(&self) -> bool {
        let mut seen: Vec<u32> = self.rows.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
            && self.cells().all(|(c, v)| self.get(c.east()).is_none_or(|e| v < e))
            && self.rows_weak_cols_strict()
    }

    /// Every entry in row `i` is at most `b_i`.
    pub fn is_flagged(&self, b: &Flagging) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(idx, row)| row.iter().all(|&v| v as usize <= b.get(idx + 1)))
    }

    /// `(c_T(1), …, c_T(n))`: the content of the box holding each entry.
    pub fn content_word(&self) -> Result<Vec<i64>> {
        if !self.is_standard() {
            return Err(Error::NotStandard);
        }
        let mut word = vec![0; self.size()];
        for (c, v) in self.cells() {
            word[v as usize - 1] = c.content();
        }
        Ok(word)
    }

    /// Removes the entry `1` and decrements the rest, giving a tableau of
    /// shape `λ/ν` with `μ ⋖ ν`.
    pub fn delete_first(&self) -> Result<Tableau> {
        if !self.is_standard() || self.size() == 0 {
            return Err(Error::NotStandard);
        }
        let (cell, _) = self.cells().find(|&(_, v)| v == 1).expect("standard tableau holds 1");
        let row = cell.row as usize;
        let inner = self.inner.add_cell(row)?;
        let mut rows = self.rows.clone();
        rows[row - 1].remove(0);
        for v in rows.iter_mut().flatten() {
            *v -= 1;
        }
        Tableau::new(self.outer.clone(), inner, rows)
    }
}

impl Serialize for Tableau {
    /// Row arrays; boxes of the inner shape are `null`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Option<u32>>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(idx, row)| {
                std::iter::repeat_n(None, self.inner.part(idx + 1))
                    .chain(row.iter().map(|&v| Some(v)))
                    .collect()
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, row) in self.rows.iter().enumerate() {
            let pad = ". ".repeat(self.inner.part(idx + 1));
            let body: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{pad}{}", body.join(" "))?;
        }
        Ok(())
    }
}

/// How a flagging continues past its explicit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagTail {
    /// `b_i = i`.
    Identity,
    /// `b_i = c`.
    Constant(usize),
}

/// A sequence of row bounds `b_1, b_2, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flagging {
    prefix: Vec<usize>,
    tail: FlagTail,
}

impl Flagging {
    pub fn new(prefix: Vec<usize>, tail: FlagTail) -> Self {
        Flagging { prefix, tail }
    }

    /// The same bound `cap` on every row.
    pub fn uniform(cap: usize) -> Self {
        Flagging::new(Vec::new(), FlagTail::Constant(cap))
    }

    /// Explicit prefix, extended by repeating its last entry.
    pub fn extended(prefix: Vec<usize>) -> Self {
        let last = prefix.last().copied().unwrap_or(0);
        Flagging::new(prefix, FlagTail::Constant(last))
    }

    /// The flagging induced by `λ/μ`.
    pub fn induced(lambda: &Partition, mu: &Partition) -> Self {
        let ctx = SkewContext::minimal(lambda, mu);
        Flagging::new(ctx.b, FlagTail::Identity)
    }

    pub fn get(&self, i: usize) -> usize {
        match self.prefix.get(i - 1) {
            Some(&b) => b,
            None => match self.tail {
                FlagTail::Identity => i,
                FlagTail::Constant(c) => c,
            },
        }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn is_weakly_increasing(&self) -> bool {
        let last = self.prefix.len();
        let tail_ok = match self.tail {
            FlagTail::Identity => self.prefix.last().is_none_or(|&b| b <= last + 1),
            FlagTail::Constant(c) => self.prefix.last().is_none_or(|&b| b <= c),
        };
        tail_ok && self.prefix.windows(2).all(|w| w[0] <= w[1])
    }
}

/// All standard tableaux of shape `λ/μ`, sorted by reading word.
/// Empty when `μ ⊄ λ`.
pub fn enumerate_syt(lambda: &Partition, mu: &Partition) -> Vec<Tableau> {
    if !lambda.contains(mu) {
        return Vec::new();
    }
    let rows: Vec<Vec<u32>> = (1..=lambda.len())
        .map(|i| vec![0; lambda.part(i) - mu.part(i)])
        .collect();
    let mut state = SytState {
        outer: lambda.clone(),
        inner: mu.clone(),
        current: lambda.parts().to_vec(),
        rows,
        out: Vec::new(),
    };
    state.fill(lambda.size() - mu.size());
    state.out.sort();
    state.out
}

struct SytState {
    outer: Partition,
    inner: Partition,
    current: Vec<usize>,
    rows: Vec<Vec<u32>>,
    out: Vec<Tableau>,
}

impl SytState {
    /// Places `remaining` (the current maximum) at each removable corner.
    fn fill(&mut self, remaining: usize) {
        if remaining == 0 {
            self.out.push(Tableau {
                outer: self.outer.clone(),
                inner: self.inner.clone(),
                rows: self.rows.clone(),
            });
            return;
        }
        for idx in 0..self.current.len() {
            let len = self.current[idx];
            let below = self.current.get(idx + 1).copied().unwrap_or(0);
            let floor = self.inner.part(idx + 1);
            if len > below && len > floor {
                self.rows[idx][len - floor - 1] = remaining as u32;
                self.current[idx] -= 1;
                self.fill(remaining - 1);
                self.current[idx] += 1;
            }
        }
    }
}

/// All semistandard tableaux of shape `μ` with entries at most `cap`.
pub fn enumerate_ssyt(mu: &Partition, cap: usize) -> Vec<Tableau> {
    enumerate_fssyt(mu, &Flagging::uniform(cap))
}

/// `FSSYT(μ, b)`: semistandard tableaux of shape `μ` whose row `i` entries
/// are at most `b_i`, sorted by reading word.
pub fn enumerate_fssyt(mu: &Partition, b: &Flagging) -> Vec<Tableau> {
    let mut rows: Vec<Vec<u32>> = mu.parts().iter().map(|&p| vec![0; p]).collect();
    let mut out = Vec::new();
    fssyt_rec(mu, b, 0, 0, &mut rows, &mut out);
    out.sort();
    out
}

fn fssyt_rec(
    mu: &Partition,
    b: &Flagging,
    row: usize,
    col: usize,
    rows: &mut Vec<Vec<u32>>,
    out: &mut Vec<Tableau>,
) {
    if row == rows.len() {
        out.push(Tableau {
            outer: mu.clone(),
            inner: Partition::empty(),
            rows: rows.clone(),
        });
        return;
    }
    if col == rows[row].len() {
        fssyt_rec(mu, b, row + 1, 0, rows, out);
        return;
    }
    let left = if col > 0 { rows[row][col - 1] } else { 1 };
    let above = if row > 0 { rows[row - 1][col] + 1 } else { 1 };
    let cap = b.get(row + 1) as u32;
    for v in left.max(above)..=cap {
        rows[row][col] = v;
        fssyt_rec(mu, b, row, col + 1, rows, out);
    }
    rows[row][col] = 0;
}
