//! Partitions, Young diagrams, hooks, Δ-sets and the flagging induced by a
//! pair of partitions.
//!
//! Rows and columns are 1-indexed throughout, matching the usual English
//! convention: box `(i, j)` sits in row `i`, column `j`, and its content
//! (diagonal index) is `j - i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest partition accepted by the parsers.
pub const MAX_PARTS: usize = 64;

/// A box `(row, col)` of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
}

impl Cell {
    pub const fn new(row: i64, col: i64) -> Self {
        Cell { row, col }
    }

    /// The diagonal index `col - row`.
    pub fn content(self) -> i64 {
        self.col - self.row
    }

    pub fn south(self) -> Cell {
        Cell::new(self.row + 1, self.col)
    }

    pub fn east(self) -> Cell {
        Cell::new(self.row, self.col + 1)
    }

    pub fn southeast(self) -> Cell {
        Cell::new(self.row + 1, self.col + 1)
    }
}

impl From<(i64, i64)> for Cell {
    fn from((row, col): (i64, i64)) -> Self {
        Cell::new(row, col)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.row, self.col).serialize(serializer)
    }
}

/// A finite set of boxes. Iteration order is row-major.
pub type Diagram = BTreeSet<Cell>;

/// Builds a diagram from `(row, col)` pairs.
pub fn diagram<I: IntoIterator<Item = (i64, i64)>>(cells: I) -> Diagram {
    cells.into_iter().map(Cell::from).collect()
}

/// An integer partition, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates and normalizes (trailing zeros are dropped).
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The `i`-th part (1-indexed); zero past the end.
    pub fn part(&self, i: usize) -> usize {
        debug_assert!(i >= 1, "parts are 1-indexed");
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `λ_i - i`.
    pub fn shifted(&self, i: usize) -> i64 {
        self.part(i) as i64 - i as i64
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.first())
            .map(|k| self.parts.iter().take_while(|&&p| p >= k).count())
            .collect();
        Partition { parts }
    }

    /// `true` iff `mu ⊆ self`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.col as usize <= self.part(c.row as usize)
    }

    /// The Young diagram `Y(λ)`.
    pub fn diagram(&self) -> Diagram {
        self.rows_cells(|_| 0)
    }

    fn rows_cells(&self, start: impl Fn(usize) -> usize) -> Diagram {
        let mut out = Diagram::new();
        for (idx, &p) in self.parts.iter().enumerate() {
            let i = idx + 1;
            for j in start(i) + 1..=p {
                out.insert(Cell::new(i as i64, j as i64));
            }
        }
        out
    }

    /// Hook of `c`: the box itself plus everything due east or due south.
    pub fn hook_cells(&self, c: Cell) -> Result<Diagram> {
        if !self.contains_cell(c) {
            return Err(Error::BoxOutsideShape(c));
        }
        let mut out = Diagram::new();
        let mut e = c;
        while self.contains_cell(e) {
            out.insert(e);
            e = e.east();
        }
        let mut s = c;
        while self.contains_cell(s) {
            out.insert(s);
            s = s.south();
        }
        Ok(out)
    }

    /// `λ_i - j + λᵗ_j - i + 1`.
    pub fn hook_length(&self, c: Cell) -> Result<usize> {
        if !self.contains_cell(c) {
            return Err(Error::BoxOutsideShape(c));
        }
        let (i, j) = (c.row as usize, c.col as usize);
        let col_len = self.parts.iter().take_while(|&&p| p >= j).count();
        Ok(self.part(i) - j + col_len - i + 1)
    }

    /// Membership in `Δ(λ) = {λ_i - i | i ≥ 1}`.
    pub fn delta_contains(&self, d: i64) -> bool {
        // λ_i - i = -i once i > len, so no index beyond max(len, -d) can hit d.
        let bound = self.len().max(d.saturating_neg().max(0) as usize);
        (1..=bound).any(|i| self.shifted(i) == d)
    }

    /// Extensible rows: `k = 1` or `μ_k ≠ μ_{k-1}`. Always ends with `len + 1`.
    pub fn er_set(&self) -> Vec<usize> {
        (1..=self.len() + 1)
            .filter(|&k| k == 1 || self.part(k) != self.part(k - 1))
            .collect()
    }

    /// `μ^{+k}`: the partition with one more box in row `k`.
    pub fn add_cell(&self, k: usize) -> Result<Partition> {
        if k == 0 || !(k == 1 || self.part(k) != self.part(k - 1)) {
            return Err(Error::NotExtensible {
                mu: self.to_string(),
                k,
            });
        }
        let mut parts = self.parts.clone();
        if k > parts.len() {
            parts.resize(k, 0);
        }
        parts[k - 1] += 1;
        Ok(Partition { parts })
    }

    /// All `ν` with `self ⋖ ν ⊆ lambda`, ordered by the row that grew.
    pub fn cover_extensions(&self, lambda: &Partition) -> Result<Vec<Partition>> {
        if !lambda.contains(self) {
            return Err(not_contained(lambda, self));
        }
        Ok(self
            .er_set()
            .into_iter()
            .filter(|&k| self.part(k) < lambda.part(k))
            .map(|k| self.add_cell(k).expect("k comes from the ER set"))
            .collect())
    }

    /// Outer corners: rows `i` whose last box can be removed.
    pub fn corners(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    /// All partitions fitting in a `rows × cols` box, in lexicographic order.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(rows, cols, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions of size at most `n`.
    pub fn up_to_size(n: usize) -> Vec<Partition> {
        let mut out: Vec<Partition> = Partition::in_box(n, n)
            .into_iter()
            .filter(|p| p.size() <= n)
            .collect();
        out.sort();
        out
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        Partition::in_box(self.len(), self.first())
            .into_iter()
            .filter(|mu| self.contains(mu))
            .collect()
    }
}

pub(crate) fn not_contained(lambda: &Partition, mu: &Partition) -> Error {
    Error::NotContained {
        lambda: lambda.to_string(),
        mu: mu.to_string(),
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

/// Parses `"5,2,2,1"`, `"(5,2,2,1)"`, `"[5,2,2,1]"`, `""` or `"∅"`.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .or_else(|| trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
        .unwrap_or(trimmed)
        .trim();
    if inner.is_empty() || inner == "∅" {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for token in inner.split(',') {
        let token = token.trim();
        let value: i64 = token.parse().map_err(|_| Error::Parse {
            input: text.to_string(),
            token: token.to_string(),
        })?;
        if value <= 0 {
            return Err(Error::NotAPartition(text.to_string()));
        }
        parts.push(value as usize);
    }
    if parts.len() > MAX_PARTS {
        return Err(Error::TooLong {
            len: parts.len(),
            cap: MAX_PARTS,
        });
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotAPartition(text.to_string()));
    }
    Partition::new(parts)
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

/// `Y(λ/μ) = Y(λ) \ Y(μ)`.
pub fn skew_cells(lambda: &Partition, mu: &Partition) -> Result<Diagram> {
    if !lambda.contains(mu) {
        return Err(not_contained(lambda, mu));
    }
    Ok(lambda.rows_cells(|i| mu.part(i)))
}

/// A skew shape `λ/μ` with `μ ⊆ λ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewShape {
    pub lambda: Partition,
    pub mu: Partition,
}

impl SkewShape {
    pub fn new(lambda: Partition, mu: Partition) -> Result<Self> {
        if !lambda.contains(&mu) {
            return Err(not_contained(&lambda, &mu));
        }
        Ok(SkewShape { lambda, mu })
    }

    pub fn size(&self) -> usize {
        self.lambda.size() - self.mu.size()
    }

    pub fn cells(&self) -> Diagram {
        skew_cells(&self.lambda, &self.mu).expect("containment checked at construction")
    }

    /// Every skew shape whose outer partition fits in a `rows × cols` box.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<SkewShape> {
        Self::all_over(Partition::in_box(rows, cols))
    }

    /// Every skew shape with `|λ| ≤ n`.
    pub fn all_up_to_size(n: usize) -> Vec<SkewShape> {
        Self::all_over(Partition::up_to_size(n))
    }

    fn all_over(lambdas: Vec<Partition>) -> Vec<SkewShape> {
        lambdas
            .into_iter()
            .flat_map(|lambda| {
                lambda
                    .subpartitions()
                    .into_iter()
                    .map(move |mu| SkewShape { lambda: lambda.clone(), mu })
            })
            .collect()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_empty() {
            write!(f, "{}", self.lambda)
        } else {
            write!(f, "{}/{}", self.lambda, self.mu)
        }
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    /// `"5,4,3,3,1/2,1,1"`; a missing `/μ` means `μ = ∅`.
    fn from_str(s: &str) -> Result<Self> {
        let (l, m) = match s.split_once('/') {
            Some((l, m)) => (l, m),
            None => (s, ""),
        };
        SkewShape::new(parse_partition(l)?, parse_partition(m)?)
    }
}

/// `λ_k - k` with the convention `λ_0 = +∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Finite(i64),
    Top,
}

fn level(lambda: &Partition, k: usize) -> Level {
    if k == 0 {
        Level::Top
    } else {
        Level::Finite(lambda.shifted(k))
    }
}

/// `b_i = max{k ≥ 0 | λ_k - k ≥ μ_i - i}`, the `i`-th entry of the flagging
/// induced by `λ/μ`. Defined for any pair of partitions.
pub fn induced_flag(lambda: &Partition, mu: &Partition, i: usize) -> usize {
    let target = Level::Finite(mu.shifted(i));
    // λ_k - k strictly decreases in k, so the admissible k form an initial segment.
    let mut k = 0;
    while level(lambda, k + 1) >= target {
        k += 1;
    }
    k
}

/// Profile of a pair `(λ, μ)` up to a cutoff `n` with `λ_n = μ_n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewContext {
    pub lambda: Partition,
    pub mu: Partition,
    pub n: usize,
    /// `ℓ_i = λ_i - i` for `i ∈ [n]`, stored at index `i - 1`; likewise below.
    pub ell: Vec<i64>,
    pub m: Vec<i64>,
    pub ell_t: Vec<i64>,
    pub m_t: Vec<i64>,
    pub b: Vec<usize>,
}

impl SkewContext {
    pub fn new(lambda: &Partition, mu: &Partition, n: usize) -> Result<Self> {
        if n == 0 || lambda.part(n) != 0 || mu.part(n) != 0 {
            return Err(Error::CutoffTooSmall { n });
        }
        let (lt, mt) = (lambda.conjugate(), mu.conjugate());
        let seq = |p: &Partition| (1..=n).map(|i| p.shifted(i)).collect::<Vec<_>>();
        Ok(SkewContext {
            ell: seq(lambda),
            m: seq(mu),
            ell_t: seq(&lt),
            m_t: seq(&mt),
            b: (1..=n).map(|i| induced_flag(lambda, mu, i)).collect(),
            lambda: lambda.clone(),
            mu: mu.clone(),
            n,
        })
    }

    /// Smallest admissible cutoff: `max(len λ, len μ) + 1`.
    pub fn minimal(lambda: &Partition, mu: &Partition) -> Self {
        let n = lambda.len().max(mu.len()) + 1;
        Self::new(lambda, mu, n).expect("cutoff is admissible by construction")
    }

    /// `b_i`, valid for every `i ≥ 1` (identity tail past the cutoff).
    pub fn flag(&self, i: usize) -> usize {
        if i <= self.n {
            self.b[i - 1]
        } else {
            i
        }
    }

    pub fn ell(&self, i: usize) -> i64 {
        self.ell[i - 1]
    }

    pub fn m(&self, i: usize) -> i64 {
        self.m[i - 1]
    }
}

/// Checks the structural facts about `Δ`-sets, conjugates and the induced
/// flagging `b` for one pair of partitions (containment not required), on
/// every index up to a bound past which all sequences are trivial:
///
/// - `λ_i - i`, `μ_i - i` and their conjugate versions strictly decrease;
/// - `λᵗ_i ≥ j ⟺ λ_j ≥ i`;
/// - `p ∈ Δ(λ) ⟺ -1 - p ∉ Δ(λᵗ)`;
/// - for `μ_{j-1} = μ_j`, `b_j = b_{j-1}` or `b_{j-1} + 1` according as
///   `m_j ∉ Δ(λ)` or `m_j ∈ Δ(λ)`;
/// - adding a box to row `k ∈ ER(μ)` changes `b` at most in position `k`,
///   lowering it by one exactly when `m_k ∈ Δ(λ)`;
/// - `m_i ∉ Δ(λ)` implies `m_i + 1 + b_i ≥ 1` and `ℓᵗ_{m_i+1+b_i} = -1 - m_i`;
/// - `i ↦ m_i + 1 + b_i` is a bijection from `{i | m_i ∉ Δ(λ)}` onto
///   `{p | ℓᵗ_p ∉ Δ(μᵗ)}`.
///
/// Returns the number of facts checked.
pub fn check_delta_lemmas(lambda: &Partition, mu: &Partition) -> Result<usize> {
    let instance = format!("lambda={lambda} mu={mu}");
    let fail = |what: &str, witness: String| Err(Error::violated(what, instance.clone(), witness));
    let bound = lambda.len() + mu.len() + lambda.first() + mu.first() + 2;
    let (lt, mt) = (lambda.conjugate(), mu.conjugate());
    let b = |i: usize| induced_flag(lambda, mu, i);
    let mut checks = 0;

    for (name, p) in [("lambda", lambda), ("mu", mu), ("lambda^t", &lt), ("mu^t", &mt)] {
        if let Some(i) = (1..bound).find(|&i| p.shifted(i) <= p.shifted(i + 1)) {
            return fail("shifted-parts-decrease", format!("{name} at i={i}"));
        }
        checks += 1;
    }
    for p in [lambda, mu] {
        let pt = p.conjugate();
        for i in 1..=bound {
            for j in 1..=bound {
                if (pt.part(i) >= j) != (p.part(j) >= i) {
                    return fail("conjugate-criterion", format!("{p} i={i} j={j}"));
                }
                checks += 1;
            }
        }
    }
    for p in [lambda, mu] {
        let pt = p.conjugate();
        let reach = bound as i64 + 2;
        for d in -reach..=reach {
            if p.delta_contains(d) == pt.delta_contains(-1 - d) {
                return fail("delta-complement", format!("{p} p={d}"));
            }
            checks += 1;
        }
    }
    for j in 2..=bound {
        if mu.part(j - 1) == mu.part(j) {
            let expected = b(j - 1) + usize::from(lambda.delta_contains(mu.shifted(j)));
            if b(j) != expected {
                return fail("flag-equal-rows", format!("j={j} b_j={} b_(j-1)={}", b(j), b(j - 1)));
            }
            checks += 1;
        }
    }
    for k in mu.er_set() {
        let grown = mu.add_cell(k)?;
        let drop = lambda.delta_contains(mu.shifted(k));
        for i in 1..=bound {
            let expected = b(i) - usize::from(drop && i == k);
            let actual = induced_flag(lambda, &grown, i);
            if actual != expected {
                return fail("flag-after-adding-box", format!("k={k} i={i} b*={actual} b={}", b(i)));
            }
            checks += 1;
        }
    }
    let mut image = BTreeSet::new();
    for i in (1..=bound).filter(|&i| !lambda.delta_contains(mu.shifted(i))) {
        let p = mu.shifted(i) + 1 + b(i) as i64;
        if p < 1 || lt.shifted(p as usize) != -1 - mu.shifted(i) {
            return fail("flag-conjugate-profile", format!("i={i} m_i+1+b_i={p}"));
        }
        if !image.insert(p as usize) {
            return fail("flag-bijection", format!("i={i} repeats image {p}"));
        }
        checks += 1;
    }
    let target: BTreeSet<usize> = (1..=bound).filter(|&p| !mt.delta_contains(lt.shifted(p))).collect();
    if image != target {
        return fail("flag-bijection", format!("image={image:?} target={target:?}"));
    }
    Ok(checks + 1)
}
