//! h-polynomials, the flagged factorial Schur polynomials `s_λ[μ]`, the
//! flagged Jacobi–Trudi identity together with its sign-reversing involution
//! on twisted arrays, and the Konvalinka recursion.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{random_rational, Coefficient, MPoly, Ring, SquareMatrix};
use crate::error::{Error, Result};
use crate::excitations::{enumerate_excitations, excitation_weight};
use crate::partitions::{induced_flag, not_contained, Cell, Partition, SkewContext};
use crate::tableaux::{enumerate_fssyt, Flagging, Tableau};
use crate::Rational;

/// A family `u_{i,j}` indexed by `i ≥ 1` and `j ∈ ℤ`.
pub trait UTable<R> {
    fn u(&self, i: usize, j: i64) -> R;
}

/// `u_{i,j} = x_i + y_{i+j}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FactorialU;

impl<S: Ring> UTable<MPoly<S>> for FactorialU {
    fn u(&self, i: usize, j: i64) -> MPoly<S> {
        MPoly::x(i as i64) + MPoly::y(i as i64 + j)
    }
}

/// Pseudo-random entries, each a function of `(seed, i, j)` alone.
#[derive(Debug, Clone, Copy)]
pub struct RandomU {
    pub seed: u64,
}

impl RandomU {
    fn rng(&self, i: usize, j: i64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((i as u64) << 32) | (j as u32 as u64));
        rng
    }
}

impl UTable<Rational> for RandomU {
    fn u(&self, i: usize, j: i64) -> Rational {
        random_rational(&mut self.rng(i, j))
    }
}

impl UTable<i128> for RandomU {
    /// Integers in `[-20, 20]`.
    fn u(&self, i: usize, j: i64) -> i128 {
        self.rng(i, j).random_range(-20..=20)
    }
}

/// `h_{b;q}[d]`: the sum over weakly increasing `(i_1, …, i_q) ∈ [b]^q` of
/// `∏_k u_{i_k, k-d}`. Zero for `q < 0`, one for `q = 0`.
pub fn h_general<R: Ring, U: UTable<R> + ?Sized>(u: &U, b: usize, q: i64, d: i64) -> R {
    if q < 0 {
        return R::zero();
    }
    if q == 0 {
        return R::one();
    }
    // level[i - 1]: sum over tuples of the current length ending in i.
    let mut level: Vec<R> = (1..=b).map(|i| u.u(i, 1 - d)).collect();
    for k in 2..=q {
        let mut prefix = R::zero();
        for i in 1..=b {
            prefix = prefix + level[i - 1].clone();
            level[i - 1] = u.u(i, k - d) * prefix.clone();
        }
    }
    level.into_iter().fold(R::zero(), |acc, v| acc + v)
}

/// `h(a, b, c)`: the sum over weakly increasing `(i_1, …, i_a) ∈ [b]^a` of
/// `∏_j (x_{i_j} + y_{i_j + j - 1 + c})`.
pub fn h_poly<S: Ring>(a: i64, b: usize, c: i64) -> MPoly<S> {
    h_general(&FactorialU, b, a, 1 - c)
}

/// Ranges for [`check_h_recursions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HGrid {
    pub a_max: i64,
    pub b_max: usize,
    pub c_min: i64,
    pub c_max: i64,
}

/// Checks the four recursions for `h` and the closed form of `h(1, b, c)` at
/// every `-1 ≤ a ≤ a_max`, `0 ≤ b ≤ b_max`, `c_min ≤ c ≤ c_max`. Returns
/// the number of identities checked.
pub fn check_h_recursions<S: Ring + Coefficient>(grid: &HGrid) -> Result<usize> {
    let mut cache: BTreeMap<(i64, usize, i64), MPoly<S>> = BTreeMap::new();
    let mut h = |a: i64, b: usize, c: i64| -> MPoly<S> {
        cache.entry((a, b, c)).or_insert_with(|| h_poly(a, b, c)).clone()
    };
    let x = |i: usize| MPoly::<S>::x(i as i64);
    let y = |i: i64| MPoly::<S>::y(i);
    let mut checks = 0;
    let mut expect = |name: &str, a: i64, b: usize, c: i64, lhs: MPoly<S>, rhs: MPoly<S>| {
        if lhs != rhs {
            return Err(Error::violated(name, format!("a={a} b={b} c={c}"), format!("lhs={lhs} rhs={rhs}")));
        }
        checks += 1;
        Ok(())
    };
    for a in -1..=grid.a_max {
        for b in 0..=grid.b_max {
            for c in grid.c_min..=grid.c_max {
                let bi = b as i64;
                if b >= 1 {
                    let rhs = (x(b) + y(a + bi + c - 1)) * h(a - 1, b, c) + h(a, b - 1, c);
                    expect("h-row-recursion", a, b, c, h(a, b, c), rhs)?;
                    let rhs = h(a, b, c - 1) - (x(b) + y(c)) * h(a - 1, b, c);
                    expect("h-flag-descent", a, b, c, h(a, b - 1, c), rhs)?;
                }
                let lhs = h(a, b, c) - h(a, b, c - 1);
                let rhs = (y(a + bi + c - 1) - y(c)) * h(a - 1, b, c);
                expect("h-shift-difference", a, b, c, lhs, rhs)?;
                let rhs = h(a + 1, b, c) + (y(a + bi + c + 1) - y(c + 1)) * h(a, b, c + 1);
                expect("h-shift-raise", a, b, c, h(a + 1, b, c + 1), rhs)?;
                if a == 1 {
                    let closed: MPoly<S> =
                        (1..=b).map(x).sum::<MPoly<S>>() + (c + 1..=c + bi).map(y).sum::<MPoly<S>>();
                    expect("h-linear", a, b, c, h(1, b, c), closed)?;
                }
            }
        }
    }
    Ok(checks)
}

/// `s_λ[μ]` as the sum of `∏ (x_i + y_j)` over `E(λ/μ)`.
pub fn s_poly_via_excitations<S: Ring>(lambda: &Partition, mu: &Partition) -> MPoly<S> {
    enumerate_excitations(lambda, mu)
        .iter()
        .map(|e| excitation_weight(e).expect("excitations of a partition have positive boxes"))
        .sum()
}

fn factorial_tableau_weight<S: Ring>(t: &Tableau) -> MPoly<S> {
    t.cells()
        .map(|(c, v)| MPoly::x(v as i64) + MPoly::y(v as i64 + c.content()))
        .product()
}

/// `s_λ[μ]` as a sum over flagged semistandard tableaux with the flagging
/// induced by `λ/μ`.
pub fn s_poly_via_fssyt<S: Ring>(lambda: &Partition, mu: &Partition) -> MPoly<S> {
    enumerate_fssyt(mu, &Flagging::induced(lambda, mu))
        .iter()
        .map(factorial_tableau_weight)
        .sum()
}

/// `s_λ[μ] = det(h(μ_i - i + j, b_i, 1 - j))_{i,j ∈ [n]}`; needs `len μ ≤ n`.
pub fn s_poly_via_det<S: Ring>(lambda: &Partition, mu: &Partition, n: usize) -> Result<MPoly<S>> {
    if mu.len() > n {
        return Err(Error::CutoffTooSmall { n });
    }
    let m = SquareMatrix::from_fn(n, |i0, j0| {
        let (i, j) = (i0 + 1, j0 as i64 + 1);
        h_poly(mu.shifted(i) + j, induced_flag(lambda, mu, i), 1 - j)
    });
    Ok(m.det())
}

/// `Σ_{T ∈ FSSYT(μ, b)} ∏_{(i,j) ∈ Y(μ)} u_{T(i,j), j-i}`.
pub fn jt_general_sum<R: Ring, U: UTable<R> + ?Sized>(
    mu: &Partition,
    b: &Flagging,
    u: &U,
    n: usize,
) -> Result<R> {
    if mu.len() > n {
        return Err(Error::CutoffTooSmall { n });
    }
    Ok(enumerate_fssyt(mu, b)
        .iter()
        .map(|t| tableau_weight(t, u))
        .fold(R::zero(), |acc, w| acc + w))
}

fn tableau_weight<R: Ring, U: UTable<R> + ?Sized>(t: &Tableau, u: &U) -> R {
    t.cells()
        .fold(R::one(), |acc, (c, v)| acc * u.u(v as usize, c.content()))
}

/// `det(h_{b_i; μ_i - i + j}[j])_{i,j ∈ [n]}`.
pub fn jt_general_det<R: Ring, U: UTable<R> + ?Sized>(
    mu: &Partition,
    b: &Flagging,
    u: &U,
    n: usize,
) -> Result<R> {
    if mu.len() > n {
        return Err(Error::CutoffTooSmall { n });
    }
    let m = SquareMatrix::from_fn(n, |i0, j0| {
        let (i, j) = (i0 + 1, j0 as i64 + 1);
        h_general(u, b.get(i), mu.shifted(i) + j, j)
    });
    Ok(m.det())
}

/// Row `i` of `P(σ)` has `μ_{σ(i)} - σ(i) + i` boxes.
fn row_length(mu: &Partition, sigma: &[usize], i: usize) -> i64 {
    mu.shifted(sigma[i - 1]) + i as i64
}

/// `σ` (one-line notation, values in `1..=n`) is legitimate for `μ` when
/// every row of `P(σ)` has nonnegative length.
pub fn is_legitimate(mu: &Partition, sigma: &[usize]) -> bool {
    (1..=sigma.len()).all(|i| row_length(mu, sigma, i) >= 0)
}

/// A permutation `σ` of `[n]` with a filling of `P(σ)` whose rows weakly
/// increase.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwistedArray {
    sigma: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

impl TwistedArray {
    pub fn new(mu: &Partition, sigma: Vec<usize>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = sigma.len();
        let mut sorted = sigma.clone();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::InvalidArray(format!("{sigma:?} is not a permutation")));
        }
        if !is_legitimate(mu, &sigma) {
            return Err(Error::InvalidArray(format!("{sigma:?} is not legitimate for {mu}")));
        }
        if rows.len() != n {
            return Err(Error::DimensionMismatch(n, rows.len()));
        }
        for (idx, row) in rows.iter().enumerate() {
            let want = row_length(mu, &sigma, idx + 1) as usize;
            if row.len() != want {
                return Err(Error::InvalidArray(format!("row {} has {} entries, expected {want}", idx + 1, row.len())));
            }
            if row.contains(&0) || row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidArray(format!("row {} is not weakly increasing", idx + 1)));
            }
        }
        Ok(TwistedArray { sigma, rows })
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `(-1)^σ` as `±1`.
    pub fn sign(&self) -> i32 {
        let n = self.sigma.len();
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.sigma[i] > self.sigma[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Entry at `(i, j)`, 1-indexed.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        if i == 0 || j == 0 {
            return None;
        }
        self.rows.get(i - 1)?.get(j - 1).copied()
    }

    /// `w(T) = ∏_{(i,j) ∈ P(σ)} u_{T(i,j), j-i}`.
    pub fn weight<R: Ring, U: UTable<R> + ?Sized>(&self, u: &U) -> R {
        let mut w = R::one();
        for (idx, row) in self.rows.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                w = w * u.u(v as usize, k as i64 - idx as i64);
            }
        }
        w
    }

    pub fn signed_weight<R: Ring, U: UTable<R> + ?Sized>(&self, u: &U) -> R {
        let w = self.weight(u);
        if self.sign() < 0 {
            -w
        } else {
            w
        }
    }

    /// Row `i` entries are at most `b_{σ(i)}`.
    pub fn is_flagged(&self, b: &Flagging) -> bool {
        self.rows
            .iter()
            .zip(&self.sigma)
            .all(|(row, &s)| row.iter().all(|&v| v as usize <= b.get(s)))
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(k, &s)| s == k + 1)
    }

    /// Entries strictly increase down every column that has two boxes.
    pub fn is_column_strict(&self) -> bool {
        self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .enumerate()
                .all(|(k, &v)| pair[0].get(k).is_none_or(|&above| above < v))
        })
    }

    /// The bottommost leftmost failure: the leftmost column holding an outer
    /// or inner failure, and the lowest failure in that column.
    pub fn failure(&self) -> Option<Cell> {
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        for j in 1..=width {
            for i in (2..=self.rows.len()).rev() {
                let Some(v) = self.get(i, j) else { continue };
                let failing = match self.get(i - 1, j) {
                    None => true,
                    Some(above) => above >= v,
                };
                if failing {
                    return Some(Cell::new(i as i64, j as i64));
                }
            }
        }
        None
    }

    /// Swaps `σ(i-1)` and `σ(i)` and exchanges the top floor
    /// `T(i-1, j..)` with the bottom floor `T(i, j+1..)` at the bottommost
    /// leftmost failure `(i, j)`.
    pub fn flip(&self) -> Result<TwistedArray> {
        let c = self.failure().ok_or(Error::UnfailingArray)?;
        let (i, j) = (c.row as usize, c.col as usize);
        let top = &self.rows[i - 2];
        let bottom = &self.rows[i - 1];
        let new_top: Vec<u32> = top[..j - 1].iter().chain(&bottom[j..]).copied().collect();
        let new_bottom: Vec<u32> = bottom[..j].iter().chain(&top[j - 1..]).copied().collect();
        let mut sigma = self.sigma.clone();
        sigma.swap(i - 2, i - 1);
        let mut rows = self.rows.clone();
        rows[i - 2] = new_top;
        rows[i - 1] = new_bottom;
        Ok(TwistedArray { sigma, rows })
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 1..=used.len() {
            if !used[v - 1] {
                used[v - 1] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Visits every `b`-flagged twisted array for `μ` over `S_n`, permutations
/// in lexicographic order and fillings in lexicographic order.
pub fn for_each_twisted_array(mu: &Partition, b: &Flagging, n: usize, mut f: impl FnMut(&TwistedArray)) {
    for sigma in permutations(n) {
        if !is_legitimate(mu, &sigma) {
            continue;
        }
        let shape: Vec<(usize, u32)> = (1..=n)
            .map(|i| (row_length(mu, &sigma, i) as usize, b.get(sigma[i - 1]) as u32))
            .collect();
        let mut array = TwistedArray {
            rows: shape.iter().map(|&(len, _)| vec![0; len]).collect(),
            sigma,
        };
        fill_rows(&shape, 0, 0, &mut array, &mut f);
    }
}

fn fill_rows(
    shape: &[(usize, u32)],
    row: usize,
    col: usize,
    array: &mut TwistedArray,
    f: &mut impl FnMut(&TwistedArray),
) {
    if row == shape.len() {
        f(array);
        return;
    }
    let (len, cap) = shape[row];
    if col == len {
        fill_rows(shape, row + 1, 0, array, f);
        return;
    }
    let start = if col > 0 { array.rows[row][col - 1] } else { 1 };
    for v in start..=cap {
        array.rows[row][col] = v;
        fill_rows(shape, row, col + 1, array, f);
    }
}

/// All `b`-flagged twisted arrays for `μ` over `S_n`.
pub fn enumerate_twisted_arrays(mu: &Partition, b: &Flagging, n: usize) -> Vec<TwistedArray> {
    let mut out = Vec::new();
    for_each_twisted_array(mu, b, n, |a| out.push(a.clone()));
    out
}

/// Counts gathered by [`check_twisted_cancellation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CancellationReport {
    pub arrays: usize,
    pub failing: usize,
    pub unfailing: usize,
}

/// Over all `b`-flagged twisted arrays: checks every property of `flip` on
/// each failing array, that the unfailing arrays are exactly the
/// column-strict ones with `σ = id`, and that
/// `det = Σ (-1)^σ w(T) = Σ_{unfailing} (-1)^σ w(T) = Σ_{FSSYT} w(T)`.
pub fn check_twisted_cancellation<R: Ring, U: UTable<R> + ?Sized>(
    mu: &Partition,
    b: &Flagging,
    n: usize,
    u: &U,
) -> Result<CancellationReport> {
    let instance = format!("mu={mu} b={:?} n={n}", (1..=n).map(|i| b.get(i)).collect::<Vec<_>>());
    let fail = |what: &str, witness: String| Err(Error::violated(what, instance.clone(), witness));
    let mut report = CancellationReport::default();
    let mut all = R::zero();
    let mut unfailing = R::zero();
    let mut problem: Option<(String, String)> = None;
    for_each_twisted_array(mu, b, n, |a| {
        if problem.is_some() {
            return;
        }
        report.arrays += 1;
        let signed = a.signed_weight(u);
        all = all.clone() + signed.clone();
        let Some(c) = a.failure() else {
            report.unfailing += 1;
            unfailing = unfailing.clone() + signed;
            if !(a.is_identity() && a.is_column_strict()) {
                problem = Some(("unfailing-classification".into(), format!("{a:?}")));
            }
            return;
        };
        report.failing += 1;
        if a.is_identity() && a.is_column_strict() {
            problem = Some(("unfailing-classification".into(), format!("{a:?}")));
            return;
        }
        let flipped = a.flip().expect("array is failing");
        let checks: [(&str, bool); 6] = [
            ("flip-is-failing-array", TwistedArray::new(mu, flipped.sigma.clone(), flipped.rows.clone()).is_ok()),
            ("flip-keeps-failure", flipped.failure() == Some(c)),
            ("flip-involution", flipped.flip().as_ref() == Ok(a)),
            ("flip-reverses-sign", flipped.sign() == -a.sign()),
            ("flip-keeps-weight", flipped.weight::<R, U>(u) == a.weight::<R, U>(u)),
            ("flip-keeps-flagging", flipped.is_flagged(b)),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            problem = Some(((*name).into(), format!("{a:?} -> {flipped:?}")));
        }
    });
    if let Some((what, witness)) = problem {
        return fail(&what, witness);
    }
    let det = jt_general_det(mu, b, u, n)?;
    let sum = jt_general_sum(mu, b, u, n)?;
    if det != all {
        return fail("det-equals-twisted-sum", format!("det={det:?} twisted={all:?}"));
    }
    if all != unfailing {
        return fail("twisted-cancellation", format!("all={all:?} unfailing={unfailing:?}"));
    }
    if unfailing != sum {
        return fail("unfailing-equals-fssyt", format!("unfailing={unfailing:?} fssyt={sum:?}"));
    }
    Ok(report)
}

/// `max(len λ, len μ, λ_1, μ_1) + 1`: past this index every sum in the
/// Konvalinka recursion is empty.
pub fn konvalinka_cutoff(lambda: &Partition, mu: &Partition) -> usize {
    lambda.len().max(mu.len()).max(lambda.first()).max(mu.first()) + 1
}

/// Excitation sum, flagged tableau sum and determinant (at cutoffs
/// `len μ` and `len μ + 1`) all give the same `s_λ[μ]`.
pub fn check_s_routes<S: Ring + Coefficient>(lambda: &Partition, mu: &Partition) -> Result<MPoly<S>> {
    let instance = format!("{lambda}/{mu}");
    let exc = s_poly_via_excitations::<S>(lambda, mu);
    let fssyt = s_poly_via_fssyt::<S>(lambda, mu);
    if exc != fssyt {
        return Err(Error::violated("s-fssyt", instance, format!("excitations={exc} fssyt={fssyt}")));
    }
    for n in [mu.len(), mu.len() + 1] {
        let det = s_poly_via_det::<S>(lambda, mu, n)?;
        if exc != det {
            return Err(Error::violated(
                "s-determinant",
                format!("{instance} n={n}"),
                format!("excitations={exc} det={det}"),
            ));
        }
    }
    Ok(exc)
}

/// Weakly increasing flaggings `(b_1, …, b_n)` with entries in `1..=max`.
pub fn weakly_increasing_flaggings(n: usize, max: usize) -> Vec<Flagging> {
    fn rec(cur: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Flagging>) {
        if cur.len() == n {
            out.push(Flagging::extended(cur.clone()));
            return;
        }
        for v in cur.last().copied().unwrap_or(1)..=max {
            cur.push(v);
            rec(cur, n, max, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, max, &mut out);
    out
}

/// The flagged Jacobi–Trudi identity as a polynomial identity in `x, y`,
/// then the twisted-array cancellation at an integer specialization of the
/// `u_{i,j}` drawn from `seed`.
pub fn check_flagged_jt(mu: &Partition, b: &Flagging, n: usize, seed: u64) -> Result<CancellationReport> {
    let sum: MPoly<Rational> = jt_general_sum(mu, b, &FactorialU, n)?;
    let det: MPoly<Rational> = jt_general_det(mu, b, &FactorialU, n)?;
    if sum != det {
        return Err(Error::violated(
            "flagged-jacobi-trudi",
            format!("mu={mu} b={:?} n={n}", (1..=n).map(|i| b.get(i)).collect::<Vec<_>>()),
            format!("sum={sum} det={det}"),
        ));
    }
    check_twisted_cancellation::<i128, _>(mu, b, n, &RandomU { seed })
}

/// `(Σ_{ℓ_k ∉ Δ(μ)} x_k, Σ_{ℓᵗ_k ∉ Δ(μᵗ)} y_k)`.
pub fn konvalinka_factor<S: Ring>(lambda: &Partition, mu: &Partition) -> (MPoly<S>, MPoly<S>) {
    let n = konvalinka_cutoff(lambda, mu);
    let (lt, mt) = (lambda.conjugate(), mu.conjugate());
    let xs = (1..=n)
        .filter(|&k| !mu.delta_contains(lambda.shifted(k)))
        .map(|k| MPoly::x(k as i64))
        .sum();
    let ys = (1..=n)
        .filter(|&k| !mt.delta_contains(lt.shifted(k)))
        .map(|k| MPoly::y(k as i64))
        .sum();
    (xs, ys)
}

/// `(Σ_{k ∈ [n], ℓ_k ∉ Δ(μ)} x_k, Σ_{i ∈ [n], m_i ∉ Δ(λ)} y_{m_i + 1 + b_i})`.
pub fn konvalinka_variant_factor<S: Ring>(ctx: &SkewContext) -> (MPoly<S>, MPoly<S>) {
    let xs = (1..=ctx.n)
        .filter(|&k| !ctx.mu.delta_contains(ctx.ell(k)))
        .map(|k| MPoly::x(k as i64))
        .sum();
    let ys = (1..=ctx.n)
        .filter(|&i| !ctx.lambda.delta_contains(ctx.m(i)))
        .map(|i| MPoly::y(ctx.m(i) + 1 + ctx.b[i - 1] as i64))
        .sum();
    (xs, ys)
}

/// `s_λ[μ]` for one `λ` and every `μ ⊆ λ`, computed once.
#[derive(Debug, Clone)]
pub struct SchurTable<S> {
    lambda: Partition,
    values: BTreeMap<Partition, MPoly<S>>,
}

impl<S: Ring> SchurTable<S> {
    pub fn new(lambda: &Partition) -> Self {
        let values = lambda
            .subpartitions()
            .into_iter()
            .map(|mu| {
                let s = s_poly_via_excitations(lambda, &mu);
                (mu, s)
            })
            .collect();
        SchurTable {
            lambda: lambda.clone(),
            values,
        }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// Zero when `μ ⊄ λ`.
    pub fn get(&self, mu: &Partition) -> MPoly<S> {
        self.values.get(mu).cloned().unwrap_or_else(MPoly::zero)
    }
}

fn cover_sum<S: Ring>(table: &SchurTable<S>, mu: &Partition) -> Result<MPoly<S>> {
    Ok(mu
        .cover_extensions(table.lambda())?
        .iter()
        .map(|nu| table.get(nu))
        .sum())
}

/// `(Σ_{ℓ_k ∉ Δ(μ)} x_k + Σ_{ℓᵗ_k ∉ Δ(μᵗ)} y_k) · s_λ[μ] = Σ_{μ ⋖ ν ⊆ λ} s_λ[ν]`.
pub fn konvalinka_check<S: Ring + Coefficient>(lambda: &Partition, mu: &Partition) -> Result<()> {
    konvalinka_check_with(&SchurTable::<S>::new(lambda), mu)
}

pub fn konvalinka_check_with<S: Ring + Coefficient>(table: &SchurTable<S>, mu: &Partition) -> Result<()> {
    let lambda = table.lambda();
    if !lambda.contains(mu) {
        return Err(not_contained(lambda, mu));
    }
    let (xs, ys) = konvalinka_factor::<S>(lambda, mu);
    let lhs = &(xs + ys) * &table.get(mu);
    let rhs = cover_sum(table, mu)?;
    if lhs != rhs {
        return Err(Error::violated(
            "konvalinka",
            format!("{lambda}/{mu}"),
            format!("lhs={lhs} rhs={rhs}"),
        ));
    }
    Ok(())
}

/// The recursion with the `y`-sum rewritten as `Σ_{m_i ∉ Δ(λ)} y_{m_i+1+b_i}`
/// over the cutoff `n`; also checks that both `y`-sums coincide.
pub fn konvalinka_variant_check<S: Ring + Coefficient>(lambda: &Partition, mu: &Partition, n: usize) -> Result<()> {
    konvalinka_variant_check_with(&SchurTable::<S>::new(lambda), mu, n)
}

pub fn konvalinka_variant_check_with<S: Ring + Coefficient>(
    table: &SchurTable<S>,
    mu: &Partition,
    n: usize,
) -> Result<()> {
    let lambda = table.lambda();
    if !lambda.contains(mu) {
        return Err(not_contained(lambda, mu));
    }
    let ctx = SkewContext::new(lambda, mu, n)?;
    let (xs, ys) = konvalinka_variant_factor::<S>(&ctx);
    let (_, ys_conj) = konvalinka_factor::<S>(lambda, mu);
    let instance = format!("{lambda}/{mu} n={n}");
    if ys != ys_conj {
        return Err(Error::violated(
            "konvalinka-y-sums",
            instance,
            format!("flag-form={ys} conjugate-form={ys_conj}"),
        ));
    }
    let lhs = &(xs + ys) * &table.get(mu);
    let rhs = cover_sum(table, mu)?;
    if lhs != rhs {
        return Err(Error::violated("konvalinka-variant", instance, format!("lhs={lhs} rhs={rhs}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer;
    use num_traits::One;
    use crate::Poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Brute force over all weakly increasing tuples.
    fn h_oracle(a: i64, b: usize, c: i64) -> Poly {
        if a < 0 {
            return Poly::zero();
        }
        let mut total = Poly::zero();
        let mut tuple = vec![1usize; a as usize];
        loop {
            if tuple.iter().all(|&t| t <= b) {
                total += &tuple
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| Poly::x(i as i64) + Poly::y(i as i64 + j as i64 + c))
                    .product::<Poly>();
            }
            // advance to the next weakly increasing tuple
            let Some(pos) = (0..tuple.len()).rev().find(|&k| tuple[k] < b) else { break };
            let v = tuple[pos] + 1;
            for t in &mut tuple[pos..] {
                *t = v;
            }
        }
        total
    }

    #[test]
    fn h_trivial_values() {
        assert_eq!(h_poly::<Rational>(0, 3, -2), Poly::one());
        assert!(h_poly::<Rational>(-1, 3, 0).is_zero());
        assert!(h_poly::<Rational>(2, 0, 0).is_zero());
        assert_eq!(h_poly::<Rational>(0, 0, 5), Poly::one());
    }

    #[test]
    fn h_matches_oracle() {
        for a in -1..=4 {
            for b in 0..=3 {
                for c in -3..=3 {
                    let h = h_poly::<Rational>(a, b, c);
                    assert_eq!(h, h_oracle(a, b, c), "h({a},{b},{c})");
                    assert!(h.is_homogeneous(a.max(0) as u32));
                }
            }
        }
    }

    #[test]
    fn h_recursion_spot_values() {
        // (a,b,c) = (1,1,0): h(1,1,0) - h(1,1,-1) = y_1
        let d = h_poly::<Rational>(1, 1, 0) - h_poly(1, 1, -1);
        assert_eq!(d, Poly::y(1));
        let grid = HGrid { a_max: 2, b_max: 2, c_min: -1, c_max: 1 };
        assert!(check_h_recursions::<Rational>(&grid).unwrap() > 0);
    }

    fn expanded_example() -> Poly {
        let (x1, x2) = (Poly::x(1), Poly::x(2));
        let (y1, y2, y3) = (Poly::y(1), Poly::y(2), Poly::y(3));
        [
            &x1 * &x1,
            &x2 * &x2,
            &x1 * &x2,
            &x1 * &y1,
            &x1 * &y2,
            &x2 * &y1,
            &x1 * &y3,
            &x2 * &y2,
            &x2 * &y3,
            &y1 * &y2,
            &y1 * &y3,
            &y2 * &y3,
        ]
        .into_iter()
        .sum()
    }

    #[test]
    fn three_routes_on_the_expanded_example() {
        let (lambda, mu) = (p("3,3,1"), p("2"));
        let expected = expanded_example();
        assert_eq!(s_poly_via_excitations::<Rational>(&lambda, &mu), expected);
        assert_eq!(s_poly_via_fssyt::<Rational>(&lambda, &mu), expected);
        assert_eq!(s_poly_via_det::<Rational>(&lambda, &mu, 3).unwrap(), expected);
    }

    #[test]
    fn small_routes() {
        let (lambda, mu) = (p("3,2"), p("1"));
        let expected = Poly::x(1) + Poly::y(1) + Poly::x(2) + Poly::y(2);
        assert_eq!(s_poly_via_excitations::<Rational>(&lambda, &mu), expected);
        assert_eq!(s_poly_via_det::<Rational>(&lambda, &mu, 2).unwrap(), expected);
        assert_eq!(s_poly_via_fssyt::<Rational>(&lambda, &Partition::empty()), Poly::one());
        assert_eq!(s_poly_via_det::<Rational>(&lambda, &Partition::empty(), 1).unwrap(), Poly::one());
        assert_eq!(
            s_poly_via_excitations::<Rational>(&lambda, &lambda),
            excitation_weight(&lambda.diagram()).unwrap()
        );
        assert!(s_poly_via_excitations::<Rational>(&p("2,1"), &p("3")).is_zero());
        assert!(s_poly_via_fssyt::<Rational>(&p("2,1"), &p("3")).is_zero());
        assert!(matches!(
            s_poly_via_det::<Rational>(&lambda, &p("1,1"), 1),
            Err(Error::CutoffTooSmall { n: 1 })
        ));
        let five: Poly = s_poly_via_fssyt(&p("4,4,3"), &p("3,2,1"));
        assert_eq!(five, s_poly_via_det(&p("4,4,3"), &p("3,2,1"), 4).unwrap());
    }

    #[test]
    fn general_jt_small() {
        let mu = p("2,1");
        let b = Flagging::extended(vec![1, 2]);
        let u = RandomU { seed: 9 };
        let sum: Rational = jt_general_sum(&mu, &b, &u, 2).unwrap();
        let det: Rational = jt_general_det(&mu, &b, &u, 2).unwrap();
        assert_eq!(sum, det);
        let one: Rational = jt_general_det(&Partition::empty(), &b, &u, 0).unwrap();
        assert_eq!(one, integer(1));
        let poly_sum: Poly = jt_general_sum(&mu, &b, &FactorialU, 3).unwrap();
        let poly_det: Poly = jt_general_det(&mu, &b, &FactorialU, 3).unwrap();
        assert_eq!(poly_sum, poly_det);
    }

    #[test]
    fn route_checker_and_flaggings() {
        check_s_routes::<Rational>(&p("3,3,1"), &p("2")).unwrap();
        check_s_routes::<Rational>(&p("3,2"), &p("3,2")).unwrap();
        assert_eq!(weakly_increasing_flaggings(2, 3).len(), 6);
        assert_eq!(weakly_increasing_flaggings(0, 3).len(), 1);
        let report = check_flagged_jt(&p("2,1"), &Flagging::extended(vec![2, 3]), 2, 5).unwrap();
        assert!(report.unfailing > 0 && report.failing > 0);
    }

    #[test]
    fn legitimacy() {
        let mu = p("4,2,1");
        assert!(!is_legitimate(&mu, &[3, 2, 1]));
        assert!(!is_legitimate(&mu, &[3, 1, 2]));
        for s in [[1, 2, 3], [2, 1, 3], [1, 3, 2], [2, 3, 1]] {
            assert!(is_legitimate(&mu, &s));
        }
        let lengths = |s: &[usize]| (1..=3).map(|i| row_length(&mu, s, i)).collect::<Vec<_>>();
        assert_eq!(lengths(&[2, 1, 3]), vec![1, 5, 1]);
        assert_eq!(lengths(&[2, 3, 1]), vec![1, 0, 6]);
    }

    #[test]
    fn array_counts() {
        let b = Flagging::uniform(1);
        let empty = enumerate_twisted_arrays(&Partition::empty(), &b, 0);
        assert_eq!(empty.len(), 1);
        assert_eq!(enumerate_twisted_arrays(&p("1"), &Flagging::extended(vec![1]), 1).len(), 1);
    }

    fn array(sigma: [usize; 5], rows: &[&str]) -> TwistedArray {
        let rows = rows
            .iter()
            .map(|r| r.chars().map(|ch| ch.to_digit(10).unwrap()).collect())
            .collect();
        TwistedArray::new(&p("4,4,3,3,3"), sigma.to_vec(), rows).unwrap()
    }

    #[test]
    fn failures() {
        let t = array([1, 2, 5, 4, 3], &["1235", "2244", "5", "689", "79999"]);
        assert_eq!(t.failure(), Some(Cell::new(4, 2)));
    }

    #[test]
    fn three_flips() {
        let sigma = [1, 2, 5, 4, 3];
        let cases = [
            (["1223", "1244", "5", "689", "69999"], (5, 1), ["1223", "1244", "5", "9999", "6689"], [1, 2, 5, 3, 4]),
            (["1223", "2244", "5", "689", "79999"], (4, 2), ["1223", "2244", "59", "68", "79999"], [1, 2, 4, 5, 3]),
            (["1224", "2333", "2", "347", "46667"], (3, 1), ["1224", "", "22333", "347", "46667"], [1, 5, 2, 4, 3]),
        ];
        for (before, fail, after, sigma_after) in cases {
            let t = array(sigma, &before);
            assert_eq!(t.failure(), Some(Cell::new(fail.0, fail.1)));
            let f = t.flip().unwrap();
            assert_eq!(f, array(sigma_after, &after));
            assert_eq!(f.failure(), t.failure());
            assert_eq!(f.flip().unwrap(), t);
            assert_eq!(f.sign(), -t.sign());
        }
    }

    #[test]
    fn unfailing_flip_is_an_error() {
        let t = TwistedArray::new(&p("2,1"), vec![1, 2], vec![vec![1, 1], vec![2]]).unwrap();
        assert_eq!(t.flip(), Err(Error::UnfailingArray));
    }

    #[test]
    fn involution_on_small_case() {
        let mu = p("2,1");
        let b = Flagging::uniform(2);
        let mut failing = 0;
        for a in enumerate_twisted_arrays(&mu, &b, 3) {
            if a.failure().is_some() {
                failing += 1;
                assert_eq!(a.flip().unwrap().flip().unwrap(), a);
            }
        }
        assert!(failing > 0);
        let report = check_twisted_cancellation::<i128, _>(&mu, &b, 3, &RandomU { seed: 1 }).unwrap();
        assert_eq!(report.failing, failing);
    }

    #[test]
    fn konvalinka_small() {
        konvalinka_check::<Rational>(&p("1"), &Partition::empty()).unwrap();
        let (xs, ys) = konvalinka_factor::<Rational>(&p("1"), &Partition::empty());
        assert_eq!(xs + ys, Poly::x(1) + Poly::y(1));
        konvalinka_variant_check::<Rational>(&p("1"), &Partition::empty(), 2).unwrap();
        konvalinka_variant_check::<Rational>(&p("3,2"), &p("1"), 3).unwrap();
        konvalinka_variant_check::<Rational>(&p("4,4,3"), &p("3,1"), 4).unwrap();
        assert!(konvalinka_check::<Rational>(&p("2,1"), &p("3")).is_err());
    }

    #[test]
    fn konvalinka_equal_shapes_is_zero_equals_zero() {
        for lambda in Partition::in_box(3, 3) {
            let (xs, ys) = konvalinka_factor::<Rational>(&lambda, &lambda);
            assert!(xs.is_zero() && ys.is_zero());
            konvalinka_check::<Rational>(&lambda, &lambda).unwrap();
        }
    }
}
