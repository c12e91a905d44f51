//! Exact rationals, sparse polynomials in the indexed families `x_i`, `y_i`,
//! `z_k`, and determinants over an arbitrary commutative ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A commutative ring with unit.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync
{
}

/// A [`Ring`] whose division is exact for nonzero divisors.
pub trait Field: Ring + Div<Output = Self> {}

impl<T: Ring + Div<Output = T>> Field for T {}

/// Text form of a coefficient.
pub trait Coefficient {
    fn render(&self) -> String;
}

impl Coefficient for BigRational {
    /// Always `p/q`, even for integers.
    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

macro_rules! plain_coefficient {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn render(&self) -> String {
                self.to_string()
            }
        }
    )*};
}
plain_coefficient!(i64, i128, BigInt, f64);

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n!` as an exact rational.
pub fn factorial(n: usize) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * integer(k))
}

/// A random rational with numerator in `[-20, 20] \ {0}` and denominator in
/// `[1, 20]`.
pub fn random_rational<G: Rng + ?Sized>(rng: &mut G) -> BigRational {
    let num = loop {
        let v: i64 = rng.random_range(-20..=20);
        if v != 0 {
            break v;
        }
    };
    rational(num, rng.random_range(1..=20))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    X,
    Y,
    Z,
}

/// An indeterminate `x_i`, `y_i` or `z_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub family: Family,
    pub index: i64,
}

impl Variable {
    pub fn x(i: i64) -> Self {
        Variable { family: Family::X, index: i }
    }

    pub fn y(i: i64) -> Self {
        Variable { family: Family::Y, index: i }
    }

    pub fn z(k: i64) -> Self {
        Variable { family: Family::Z, index: k }
    }

    /// `x_i` and `y_i` vanish for `i ≤ 0`.
    pub fn is_zero(self) -> bool {
        self.family != Family::Z && self.index <= 0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::X => "x",
            Family::Y => "y",
            Family::Z => "z",
        };
        write!(f, "{name}{}", self.index)
    }
}

/// A product of variables, stored as sorted `(variable, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial { degree: 1, factors: vec![(v, 1)] }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { degree: self.degree + other.degree, factors: out }
    }
}

impl Ord for Monomial {
    /// Graded: total degree first, then lexicographic on the factor list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A sparse polynomial with coefficients in `S`. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Ring> MPoly<S> {
    pub fn constant(c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    /// The variable `v`, or zero when `v` is `x_i`/`y_i` with `i ≤ 0`.
    pub fn var(v: Variable) -> Self {
        if v.is_zero() {
            return Self::zero();
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), S::one());
        MPoly { terms }
    }

    pub fn x(i: i64) -> Self {
        Self::var(Variable::x(i))
    }

    pub fn y(i: i64) -> Self {
        Self::var(Variable::y(i))
    }

    pub fn z(k: i64) -> Self {
        Self::var(Variable::z(k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        MPoly { terms }
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Substitutes values for every variable.
    pub fn eval(&self, pt: &EvalPoint<S>) -> Result<S> {
        let mut total = S::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                let value = pt.get(v).ok_or_else(|| Error::UnassignedVariable(v.to_string()))?;
                for _ in 0..e {
                    term = term * value.clone();
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Every variable occurring in some term.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

impl<S: Ring> Zero for MPoly<S> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Ring> One for MPoly<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Ring> AddAssign<&MPoly<S>> for MPoly<S> {
    fn add_assign(&mut self, rhs: &MPoly<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<S: Ring> SubAssign<&MPoly<S>> for MPoly<S> {
    fn sub_assign(&mut self, rhs: &MPoly<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<S: Ring> Mul<&MPoly<S>> for &MPoly<S> {
    type Output = MPoly<S>;

    fn mul(self, rhs: &MPoly<S>) -> MPoly<S> {
        let mut products: Vec<(Monomial, S)> = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                products.push((ma.mul(mb), ca.clone() * cb.clone()));
            }
        }
        products.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Monomial, S)> = Vec::with_capacity(products.len());
        for (m, c) in products {
            match merged.last_mut() {
                Some((last, acc)) if *last == m => *acc = acc.clone() + c,
                _ => merged.push((m, c)),
            }
        }
        MPoly {
            terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<S: Ring> MulAssign<&MPoly<S>> for MPoly<S> {
    fn mul_assign(&mut self, rhs: &MPoly<S>) {
        *self = &*self * rhs;
    }
}

impl<S: Ring> Add<&MPoly<S>> for &MPoly<S> {
    type Output = MPoly<S>;

    fn add(self, rhs: &MPoly<S>) -> MPoly<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Ring> Sub<&MPoly<S>> for &MPoly<S> {
    type Output = MPoly<S>;

    fn sub(self, rhs: &MPoly<S>) -> MPoly<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Ring> Add for MPoly<S> {
    type Output = MPoly<S>;

    fn add(mut self, rhs: MPoly<S>) -> MPoly<S> {
        self += &rhs;
        self
    }
}

impl<S: Ring> Sub for MPoly<S> {
    type Output = MPoly<S>;

    fn sub(mut self, rhs: MPoly<S>) -> MPoly<S> {
        self -= &rhs;
        self
    }
}

impl<S: Ring> Mul for MPoly<S> {
    type Output = MPoly<S>;

    fn mul(self, rhs: MPoly<S>) -> MPoly<S> {
        &self * &rhs
    }
}

impl<S: Ring> Neg for MPoly<S> {
    type Output = MPoly<S>;

    fn neg(self) -> MPoly<S> {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        MPoly { terms }
    }
}

impl<S: Ring> Neg for &MPoly<S> {
    type Output = MPoly<S>;

    fn neg(self) -> MPoly<S> {
        -self.clone()
    }
}

impl<S: Ring> std::iter::Sum for MPoly<S> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<S: Ring> std::iter::Product for MPoly<S> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

impl<S: Ring + Coefficient> fmt::Display for MPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.factors.is_empty() {
                    c.render()
                } else {
                    format!("{}*{m}", c.render())
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<S: Ring + Coefficient> Serialize for MPoly<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        serializer.collect_str(self)
    }
}

/// Values for a set of variables.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPoint<S> {
    values: BTreeMap<Variable, S>,
}

impl<S: Ring> Default for EvalPoint<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Ring> EvalPoint<S> {
    pub fn new() -> Self {
        EvalPoint {
            values: BTreeMap::new(),
        }
    }

    /// Assigning to `x_i`/`y_i` with `i ≤ 0` is ignored: those are zero.
    pub fn set(&mut self, v: Variable, value: S) -> &mut Self {
        if !v.is_zero() {
            self.values.insert(v, value);
        }
        self
    }

    pub fn with(mut self, v: Variable, value: S) -> Self {
        self.set(v, value);
        self
    }

    pub fn get(&self, v: Variable) -> Option<S> {
        if v.is_zero() {
            return Some(S::zero());
        }
        self.values.get(&v).cloned()
    }
}

impl EvalPoint<BigRational> {
    /// Random nonzero rationals for every listed variable.
    pub fn random<G: Rng + ?Sized>(vars: &[Variable], rng: &mut G) -> Self {
        let mut pt = Self::new();
        for &v in vars {
            pt.set(v, random_rational(rng));
        }
        pt
    }
}

/// An `n × n` matrix, rows and columns indexed from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<R> {
    n: usize,
    entries: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    pub fn new(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, bad.len()));
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.entries.chunks(self.n.max(1)).map(<[R]>::to_vec).take(self.n).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Rows in `k` taken from `q`, the rest from `self`.
    pub fn replace_rows(&self, q: &Self, k: &[usize]) -> Result<Self> {
        self.check_replacement(q, k)?;
        Ok(Self::from_fn(self.n, |i, j| {
            if k.contains(&i) { q.get(i, j) } else { self.get(i, j) }.clone()
        }))
    }

    /// Columns in `k` taken from `q`, the rest from `self`.
    pub fn replace_cols(&self, q: &Self, k: &[usize]) -> Result<Self> {
        self.check_replacement(q, k)?;
        Ok(Self::from_fn(self.n, |i, j| {
            if k.contains(&j) { q.get(i, j) } else { self.get(i, j) }.clone()
        }))
    }

    fn check_replacement(&self, q: &Self, k: &[usize]) -> Result<()> {
        if q.n != self.n {
            return Err(Error::DimensionMismatch(self.n, q.n));
        }
        if let Some(&bad) = k.iter().find(|&&i| i >= self.n) {
            return Err(Error::DimensionMismatch(self.n, bad + 1));
        }
        Ok(())
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let keep = |skip: usize| (0..self.n).filter(move |&t| t != skip);
        let rows: Vec<usize> = keep(r).collect();
        let cols: Vec<usize> = keep(c).collect();
        Self::from_fn(self.n - 1, |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// The top-left `k × k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, |i, j| self.get(i, j).clone())
    }

    /// Determinant by expansion along rows, bottom row first, with memoized
    /// minors over column subsets. No division is used; `det` of the `0 × 0`
    /// matrix is 1.
    pub fn det(&self) -> R {
        let n = self.n;
        assert!(n < usize::BITS as usize - 1, "matrix too large");
        // minors[S] = det of the last |S| rows restricted to the columns in S.
        let mut minors: Vec<R> = vec![R::zero(); 1 << n];
        minors[0] = R::one();
        for set in 1usize..(1 << n) {
            let row = n - set.count_ones() as usize;
            let mut acc = R::zero();
            let mut earlier = 0;
            for j in 0..n {
                if set & (1 << j) == 0 {
                    continue;
                }
                let a = self.get(row, j);
                let rest = &minors[set & !(1 << j)];
                if !a.is_zero() && !rest.is_zero() {
                    let term = a.clone() * rest.clone();
                    acc = if earlier % 2 == 0 { acc + term } else { acc - term };
                }
                earlier += 1;
            }
            minors[set] = acc;
        }
        minors[(1 << n) - 1].clone()
    }
}

impl<R: Ring + Div<Output = R>> SquareMatrix<R> {
    /// Fraction-free (Bareiss) elimination. Every division is exact, so this
    /// is valid over any integral domain whose `/` divides exactly.
    pub fn det_bareiss(&self) -> R {
        let n = self.n;
        if n == 0 {
            return R::one();
        }
        let mut a = self.entries.clone();
        let at = |i: usize, j: usize| i * n + j;
        let mut sign_flip = false;
        let mut prev = R::one();
        for k in 0..n - 1 {
            if a[at(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[at(r, k)].is_zero()) else {
                    return R::zero();
                };
                for j in 0..n {
                    a.swap(at(k, j), at(swap, j));
                }
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[at(i, j)].clone() * a[at(k, k)].clone()
                        - a[at(i, k)].clone() * a[at(k, j)].clone())
                        / prev.clone();
                    a[at(i, j)] = v;
                }
            }
            prev = a[at(k, k)].clone();
        }
        let d = a[at(n - 1, n - 1)].clone();
        if sign_flip {
            -d
        } else {
            d
        }
    }
}

impl<R: Ring + Coefficient> fmt::Display for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(Coefficient::render).collect::<Vec<_>>().join(", "))
            .map(|r| format!("[{r}]"))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// All `r`-element subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// `(u_{i, j + [k = i]})` with 0-indexed `k`; `u` has `n` rows and `n + 1` columns.
fn row_shifted<R: Ring>(u: &[Vec<R>], k: usize) -> SquareMatrix<R> {
    SquareMatrix::from_fn(u.len(), |i, j| u[i][j + usize::from(i == k)].clone())
}

/// `(u_{i, j + [j = n]})`: the last column replaced by column `n + 1`.
fn last_col_shifted<R: Ring>(u: &[Vec<R>]) -> SquareMatrix<R> {
    let n = u.len();
    SquareMatrix::from_fn(n, |i, j| u[i][j + usize::from(j + 1 == n)].clone())
}

/// Identities satisfied by determinants of generic matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetIdentity {
    /// `Σ_k det(P ←row k Q) = Σ_k det(P ←col k Q)`.
    RowColSum,
    /// The same for every subset size `r`.
    RowColSubsetSum,
    /// `Σ_k det(u_{i,j+[k=i]}) = det(u_{i,j+[n=j]})`.
    ShiftedRows,
    /// The shifted-row sum corrected by `p_i u_{i,j}`.
    ShiftedRowsRowWeights,
    /// The shifted-row sum corrected by `p_j u_{i,j}`.
    ShiftedRowsColWeights,
    /// Expansion along a last row that vanishes off the diagonal.
    LastRowDiagonal,
}

impl DetIdentity {
    pub const ALL: [DetIdentity; 6] = [
        DetIdentity::RowColSum,
        DetIdentity::RowColSubsetSum,
        DetIdentity::ShiftedRows,
        DetIdentity::ShiftedRowsRowWeights,
        DetIdentity::ShiftedRowsColWeights,
        DetIdentity::LastRowDiagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DetIdentity::RowColSum => "row-col-sum",
            DetIdentity::RowColSubsetSum => "row-col-subset-sum",
            DetIdentity::ShiftedRows => "shifted-rows",
            DetIdentity::ShiftedRowsRowWeights => "shifted-rows-row-weights",
            DetIdentity::ShiftedRowsColWeights => "shifted-rows-col-weights",
            DetIdentity::LastRowDiagonal => "last-row-diagonal",
        }
    }
}

/// Inputs for one round of the determinant identities.
#[derive(Debug, Clone)]
pub struct DetInstance<R> {
    pub p: SquareMatrix<R>,
    pub q: SquareMatrix<R>,
    /// `n` rows, `n + 1` columns.
    pub u: Vec<Vec<R>>,
    pub weights: Vec<R>,
}

impl<R: Ring> DetInstance<R> {
    /// Evaluates one identity, returning both sides.
    pub fn sides(&self, id: DetIdentity) -> (R, R) {
        let n = self.p.dim();
        let sum = |it: &mut dyn Iterator<Item = R>| it.fold(R::zero(), |a, b| a + b);
        match id {
            DetIdentity::RowColSum => {
                let lhs = sum(&mut (0..n).map(|k| self.p.replace_rows(&self.q, &[k]).unwrap().det()));
                let rhs = sum(&mut (0..n).map(|k| self.p.replace_cols(&self.q, &[k]).unwrap().det()));
                (lhs, rhs)
            }
            DetIdentity::RowColSubsetSum => {
                // All r at once: compare the sums for each r, packed as one
                // pair per failing r via the first mismatch.
                for r in 0..=n {
                    let subsets = subsets_of_size(n, r);
                    let lhs = sum(&mut subsets.iter().map(|k| self.p.replace_rows(&self.q, k).unwrap().det()));
                    let rhs = sum(&mut subsets.iter().map(|k| self.p.replace_cols(&self.q, k).unwrap().det()));
                    if lhs != rhs {
                        return (lhs, rhs);
                    }
                }
                (R::zero(), R::zero())
            }
            DetIdentity::ShiftedRows => {
                let lhs = sum(&mut (0..n).map(|k| row_shifted(&self.u, k).det()));
                (lhs, last_col_shifted(&self.u).det())
            }
            DetIdentity::ShiftedRowsRowWeights | DetIdentity::ShiftedRowsColWeights => {
                let by_col = id == DetIdentity::ShiftedRowsColWeights;
                let lhs = sum(&mut (0..n).map(|k| {
                    SquareMatrix::from_fn(n, |i, j| {
                        if i == k {
                            let w = if by_col { &self.weights[j] } else { &self.weights[i] };
                            self.u[i][j + 1].clone() - w.clone() * self.u[i][j].clone()
                        } else {
                            self.u[i][j].clone()
                        }
                    })
                    .det()
                }));
                let base = SquareMatrix::from_fn(n, |i, j| self.u[i][j].clone()).det();
                let total = self.weights.iter().cloned().fold(R::zero(), |a, b| a + b);
                (lhs, last_col_shifted(&self.u).det() - total * base)
            }
            DetIdentity::LastRowDiagonal => {
                let mut a = self.p.clone();
                for j in 0..n.saturating_sub(1) {
                    a.set(n - 1, j, R::zero());
                }
                let rhs = a.get(n - 1, n - 1).clone() * a.leading(n - 1).det();
                (a.det(), rhs)
            }
        }
    }
}

/// Outcome of [`check_det_identities`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
}

/// Checks every [`DetIdentity`] on `trials` random rational instances of
/// size `n`.
pub fn check_det_identities(n: usize, trials: usize, seed: u64) -> Result<DetReport> {
    if n == 0 {
        return Err(Error::DimensionMismatch(0, 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    for trial in 0..trials {
        let mut entry = || random_rational(&mut rng);
        let p = SquareMatrix::from_fn(n, |_, _| entry());
        let q = SquareMatrix::from_fn(n, |_, _| entry());
        let u: Vec<Vec<BigRational>> = (0..n).map(|_| (0..=n).map(|_| entry()).collect()).collect();
        let weights: Vec<BigRational> = (0..n).map(|_| entry()).collect();
        let inst = DetInstance { p, q, u, weights };
        for id in DetIdentity::ALL {
            let (lhs, rhs) = inst.sides(id);
            if lhs != rhs {
                return Err(Error::violated(
                    id.name(),
                    format!("n={n} seed={seed} trial={trial}"),
                    format!("P={} Q={} lhs={} rhs={}", inst.p, inst.q, lhs.render(), rhs.render()),
                ));
            }
            checks += 1;
        }
    }
    Ok(DetReport {
        n,
        trials,
        seed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn leibniz<R: Ring>(m: &SquareMatrix<R>) -> R {
        let n = m.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = R::zero();
        permutations(&mut perm, 0, &mut |p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let term = (0..n).fold(R::one(), |acc, i| acc * m.get(i, p[i]).clone());
            total = if inversions % 2 == 0 {
                total.clone() + term
            } else {
                total.clone() - term
            };
        });
        total
    }

    fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permutations(p, k + 1, f);
            p.swap(k, i);
        }
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> SquareMatrix<Rational> {
        SquareMatrix::from_fn(n, |_, _| random_rational(rng))
    }

    #[test]
    fn poly_arithmetic() {
        let s = Poly::x(1) + Poly::y(1) + (-Poly::x(1));
        assert_eq!(s, Poly::y(1));
        let prod = (Poly::x(1) + Poly::y(1)) * (Poly::x(1) + Poly::y(2));
        let expected = &(&Poly::x(1) * &Poly::x(1)) + &(&Poly::x(1) * &Poly::y(2))
            + (&Poly::x(1) * &Poly::y(1))
            + (&Poly::y(1) * &Poly::y(2));
        assert_eq!(prod, expected);
        assert_eq!(prod.len(), 4);
        assert!((prod * Poly::zero()).is_zero());
    }

    #[test]
    fn zero_convention() {
        assert!(Poly::x(0).is_zero());
        assert!(Poly::y(-3).is_zero());
        assert!(!Poly::z(-3).is_zero());
        assert!(!Poly::z(0).is_zero());
    }

    #[test]
    fn evaluation() {
        let pt = EvalPoint::new()
            .with(Variable::x(1), rational(1, 2))
            .with(Variable::y(1), rational(1, 3));
        assert_eq!((Poly::x(1) + Poly::y(1)).eval(&pt).unwrap(), rational(5, 6));
        assert_eq!(Poly::constant(integer(7)).eval(&EvalPoint::new()).unwrap(), integer(7));
        assert!(matches!(Poly::x(2).eval(&pt), Err(Error::UnassignedVariable(_))));
    }

    #[test]
    fn rendering_is_canonical() {
        let p = Poly::y(2) + Poly::x(1) * Poly::x(1) + Poly::constant(rational(3, 2)) + Poly::x(1);
        assert_eq!(p.to_string(), "3/2 + 1/1*x1 + 1/1*y2 + 1/1*x1^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn determinants() {
        assert_eq!(SquareMatrix::<Rational>::identity(3).det(), integer(1));
        assert_eq!(SquareMatrix::<Rational>::identity(0).det(), integer(1));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut m = random_matrix(3, &mut rng);
        for j in 0..3 {
            let v = m.get(0, j).clone();
            m.set(2, j, v);
        }
        assert!(m.det().is_zero());
        assert!(m.det_bareiss().is_zero());
        for n in 0..=5 {
            for _ in 0..5 {
                let m = random_matrix(n, &mut rng);
                let d = m.det();
                assert_eq!(d, m.det_bareiss());
                if n <= 4 {
                    assert_eq!(d, leibniz(&m));
                }
                assert_eq!(d, m.transpose().det());
            }
        }
    }

    #[test]
    fn bareiss_over_integers() {
        let m = SquareMatrix::new(vec![vec![0i64, 2, 1], vec![3, 1, 4], vec![1, 5, 9]]).unwrap();
        assert_eq!(m.det_bareiss(), leibniz(&m));
        assert_eq!(m.det(), leibniz(&m));
    }

    #[test]
    fn laplace_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            let m = random_matrix(n, &mut rng);
            let d = m.det();
            for r in 0..n {
                let by_row = (0..n).fold(Rational::zero(), |acc, c| {
                    let term = m.get(r, c) * m.minor(r, c).det();
                    if (r + c) % 2 == 0 { acc + term } else { acc - term }
                });
                let by_col = (0..n).fold(Rational::zero(), |acc, i| {
                    let term = m.get(i, r) * m.minor(i, r).det();
                    if (r + i) % 2 == 0 { acc + term } else { acc - term }
                });
                assert_eq!(by_row, d);
                assert_eq!(by_col, d);
            }
        }
    }

    #[test]
    fn row_multilinearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.random_range(1..=4);
            let a = random_matrix(n, &mut rng);
            let b = random_matrix(n, &mut rng);
            let r = rng.random_range(0..n);
            let (s, t) = (random_rational(&mut rng), random_rational(&mut rng));
            let mixed = SquareMatrix::from_fn(n, |i, j| {
                if i == r {
                    s.clone() * a.get(i, j) + t.clone() * b.get(i, j)
                } else {
                    a.get(i, j).clone()
                }
            });
            let other = a.replace_rows(&b, &[r]).unwrap();
            assert_eq!(mixed.det(), s.clone() * a.det() + t.clone() * other.det());
        }
    }

    #[test]
    fn replacement() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_matrix(3, &mut rng);
        let q = random_matrix(3, &mut rng);
        assert_eq!(p.replace_rows(&q, &[]).unwrap(), p);
        assert_eq!(p.replace_rows(&q, &[0, 1, 2]).unwrap(), q);
        assert_eq!(p.replace_cols(&q, &[0, 1, 2]).unwrap(), q);
        let p2 = random_matrix(2, &mut rng);
        let q2 = random_matrix(2, &mut rng);
        let r = p2.replace_rows(&q2, &[0]).unwrap();
        assert_eq!(r.get(0, 1), q2.get(0, 1));
        assert_eq!(r.get(1, 0), p2.get(1, 0));
        assert!(matches!(p.replace_rows(&p2, &[0]), Err(Error::DimensionMismatch(3, 2))));
        assert!(matches!(SquareMatrix::new(vec![vec![integer(1)], vec![]]), Err(Error::DimensionMismatch(2, 1))));
    }

    #[test]
    fn row_col_sum_symbolic_three_by_three() {
        // generic entries: P_{ij} = z_{3i+j}, Q_{ij} = z_{9+3i+j}
        let p = SquareMatrix::from_fn(3, |i, j| Poly::z((3 * i + j) as i64));
        let q = SquareMatrix::from_fn(3, |i, j| Poly::z((9 + 3 * i + j) as i64));
        let inst = DetInstance {
            p,
            q,
            u: vec![vec![Poly::zero(); 4]; 3],
            weights: vec![Poly::zero(); 3],
        };
        let (lhs, rhs) = inst.sides(DetIdentity::RowColSum);
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn shifted_rows_symbolic() {
        for n in 1..=3usize {
            let u: Vec<Vec<Poly>> = (0..n)
                .map(|i| (0..=n).map(|j| Poly::z((i * (n + 1) + j) as i64)).collect())
                .collect();
            let weights: Vec<Poly> = (0..n).map(|i| Poly::x(i as i64 + 1)).collect();
            let inst = DetInstance {
                p: SquareMatrix::identity(n),
                q: SquareMatrix::identity(n),
                u,
                weights,
            };
            for id in DetIdentity::ALL {
                let (lhs, rhs) = inst.sides(id);
                assert_eq!(lhs, rhs, "{} at n={n}", id.name());
            }
        }
    }

    #[test]
    fn battery_small() {
        let report = check_det_identities(1, 10, 1).unwrap();
        assert_eq!(report.checks, 60);
        check_det_identities(3, 10, 2).unwrap();
        assert!(check_det_identities(0, 1, 0).is_err());
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets_of_size(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), integer(1));
        assert_eq!(factorial(5), integer(120));
    }
}
