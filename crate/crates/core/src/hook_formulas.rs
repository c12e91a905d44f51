//! Algebraic hook lengths, the fractions `z_T`, both sides of the skew
//! algebraic hook length formula, the Naruse and classical counts, and the
//! prefix sums `w_i` of the `z`-variables.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{factorial, integer, random_rational, Coefficient, Field, MPoly, Ring};
use crate::error::{Error, Result};
use crate::excitations::enumerate_excitations;
use crate::partitions::{not_contained, Cell, Partition, SkewContext};
use crate::report::Status;
use crate::tableaux::{enumerate_syt, Tableau};
use crate::Rational;

/// Resampling budget per point before giving up.
pub const DEFAULT_ATTEMPTS: usize = 100;

/// Values of `z_k` on a contiguous window of indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ZPoint<F = Rational> {
    lo: i64,
    values: Vec<F>,
}

impl<F: Field> ZPoint<F> {
    /// `values[0]` is `z_lo`.
    pub fn new(lo: i64, values: Vec<F>) -> Self {
        ZPoint { lo, values }
    }

    pub fn constant(lo: i64, hi: i64, value: F) -> Self {
        let len = (hi - lo + 1).max(0) as usize;
        ZPoint::new(lo, vec![value; len])
    }

    /// Every `z_k = 1`.
    pub fn ones(lo: i64, hi: i64) -> Self {
        Self::constant(lo, hi, F::one())
    }

    /// Inclusive bounds.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.values.len() as i64 - 1)
    }

    pub fn z(&self, k: i64) -> Result<F> {
        usize::try_from(k - self.lo)
            .ok()
            .and_then(|idx| self.values.get(idx))
            .cloned()
            .ok_or_else(|| Error::UnassignedVariable(format!("z{k}")))
    }

    pub fn set(&mut self, k: i64, value: F) -> Result<()> {
        let idx = usize::try_from(k - self.lo)
            .ok()
            .filter(|&i| i < self.values.len())
            .ok_or_else(|| Error::UnassignedVariable(format!("z{k}")))?;
        self.values[idx] = value;
        Ok(())
    }
}

impl ZPoint<Rational> {
    pub fn random<G: Rng + ?Sized>(lo: i64, hi: i64, rng: &mut G) -> Self {
        ZPoint::new(lo, (lo..=hi).map(|_| random_rational(rng)).collect())
    }
}

impl<F: Coefficient> Serialize for ZPoint<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ZPoint", 2)?;
        s.serialize_field("lo", &self.lo)?;
        let values: Vec<String> = self.values.iter().map(Coefficient::render).collect();
        s.serialize_field("z", &values)?;
        s.end()
    }
}

/// `[-n, λ_1]` with `n = max(len λ, len μ) + 1`: holds every content of
/// `Y(λ)` and every index the `w`-identities touch.
pub fn shape_window(lambda: &Partition, mu: &Partition) -> (i64, i64) {
    let n = lambda.len().max(mu.len()) + 1;
    (-(n as i64), lambda.first() as i64)
}

/// `h_λ(c; z) = Σ_{(i,j) ∈ H_λ(c)} z_{j-i}`.
pub fn algebraic_hook<S: Ring>(lambda: &Partition, c: Cell) -> Result<MPoly<S>> {
    Ok(lambda
        .hook_cells(c)?
        .iter()
        .map(|h| MPoly::z(h.content()))
        .sum())
}

/// `h_λ(c; z)` evaluated at `pt`.
pub fn hook_value<F: Field>(lambda: &Partition, c: Cell, pt: &ZPoint<F>) -> Result<F> {
    lambda
        .hook_cells(c)?
        .iter()
        .try_fold(F::zero(), |acc, h| Ok(acc + pt.z(h.content())?))
}

fn inverse<F: Field>(d: F) -> Result<F> {
    if d.is_zero() {
        Err(Error::ZeroDenominator)
    } else {
        Ok(F::one() / d)
    }
}

/// `z_T = 1 / ∏_k (z_{c_T(k)} + … + z_{c_T(n)})`.
pub fn z_t_value<F: Field>(t: &Tableau, pt: &ZPoint<F>) -> Result<F> {
    let word = t.content_word()?;
    let mut suffix = F::zero();
    let mut denominator = F::one();
    for &c in word.iter().rev() {
        suffix = suffix + pt.z(c)?;
        if suffix.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        denominator = denominator * suffix.clone();
    }
    inverse(denominator)
}

/// `Σ_{T ∈ SYT(λ/μ)} z_T`.
pub fn lhs_main<F: Field>(lambda: &Partition, mu: &Partition, pt: &ZPoint<F>) -> Result<F> {
    if !lambda.contains(mu) {
        return Err(not_contained(lambda, mu));
    }
    enumerate_syt(lambda, mu)
        .iter()
        .try_fold(F::zero(), |acc, t| Ok(acc + z_t_value(t, pt)?))
}

/// `Σ_{E ∈ E(λ/μ)} ∏_{c ∈ Y(λ) \ E} 1 / h_λ(c; z)`.
pub fn rhs_main<F: Field>(lambda: &Partition, mu: &Partition, pt: &ZPoint<F>) -> Result<F> {
    if !lambda.contains(mu) {
        return Err(not_contained(lambda, mu));
    }
    let cells = lambda.diagram();
    let inverses = cells
        .iter()
        .map(|&c| Ok((c, inverse(hook_value(lambda, c, pt)?)?)))
        .collect::<Result<Vec<(Cell, F)>>>()?;
    Ok(enumerate_excitations(lambda, mu)
        .iter()
        .map(|e| {
            inverses
                .iter()
                .filter(|(c, _)| !e.contains(c))
                .fold(F::one(), |acc, (_, v)| acc * v.clone())
        })
        .fold(F::zero(), |acc, v| acc + v))
}

/// `Σ_{(i,j) ∈ Y(λ/μ)} z_{j-i}`.
pub fn skew_content_sum<F: Field>(lambda: &Partition, mu: &Partition, pt: &ZPoint<F>) -> Result<F> {
    (1..=lambda.len())
        .flat_map(|i| (mu.part(i) + 1..=lambda.part(i)).map(move |j| j as i64 - i as i64))
        .try_fold(F::zero(), |acc, k| Ok(acc + pt.z(k)?))
}

fn expect_equal<F: Field + Coefficient>(identity: &str, instance: String, lhs: &F, rhs: &F) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::violated(
            identity,
            instance,
            format!("lhs={} rhs={}", lhs.render(), rhs.render()),
        ))
    }
}

fn instance(lambda: &Partition, mu: &Partition) -> String {
    format!("{lambda}/{mu}")
}

/// Both sides of the skew hook length formula agree at `pt`.
pub fn main_identity_at<F: Field + Coefficient>(lambda: &Partition, mu: &Partition, pt: &ZPoint<F>) -> Result<()> {
    let lhs = lhs_main(lambda, mu, pt)?;
    let rhs = rhs_main(lambda, mu, pt)?;
    expect_equal("main", instance(lambda, mu), &lhs, &rhs)
}

/// `|λ/μ|! · Σ_{E ∈ E(λ/μ)} ∏_{c ∈ Y(λ) \ E} 1 / h_λ(c)`.
pub fn naruse_count(lambda: &Partition, mu: &Partition) -> Rational {
    if !lambda.contains(mu) {
        return Rational::zero();
    }
    let ones = ZPoint::<Rational>::ones(shape_window(lambda, mu).0, lambda.first() as i64);
    let sum = rhs_main(lambda, mu, &ones).expect("hook lengths are positive");
    factorial(lambda.size() - mu.size()) * sum
}

/// `n! / ∏_{c ∈ Y(λ)} h_λ(c)`.
pub fn hlf_count(lambda: &Partition) -> Rational {
    let hooks = lambda
        .diagram()
        .iter()
        .map(|&c| integer(lambda.hook_length(c).expect("cell of λ") as i64))
        .fold(Rational::one(), |acc, h| acc * h);
    factorial(lambda.size()) / hooks
}

/// [`naruse_count`] is a nonnegative integer equal to `|SYT(λ/μ)|`; for
/// `μ = ∅` it also equals [`hlf_count`]. Returns the count.
pub fn check_naruse(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    let count = naruse_count(lambda, mu);
    let syt = integer(enumerate_syt(lambda, mu).len() as i64);
    let label = instance(lambda, mu);
    expect_equal("naruse", label.clone(), &count, &syt)?;
    if mu.is_empty() {
        expect_equal("hook-length-formula", label, &hlf_count(lambda), &syt)?;
    }
    Ok(count)
}

/// The left side obeys
/// `Σ_T z_T = (Σ_{Y(λ/μ)} z_{j-i})^{-1} · Σ_{μ ⋖ ν ⊆ λ} Σ_{T' ∈ SYT(λ/ν)} z_{T'}`,
/// and `z_T = (Σ_{Y(λ/μ)} z_{j-i})^{-1} · z_{T'}` for each `T`, where `T'`
/// drops the entry 1. For `λ = μ` the sum is 1.
pub fn verify_z_recursion<F: Field + Coefficient>(lambda: &Partition, mu: &Partition, pt: &ZPoint<F>) -> Result<()> {
    let lhs = lhs_main(lambda, mu, pt)?;
    if lambda == mu {
        return expect_equal("z-recursion-base", instance(lambda, mu), &lhs, &F::one());
    }
    let factor = inverse(skew_content_sum(lambda, mu, pt)?)?;
    let mut below = F::zero();
    for nu in mu.cover_extensions(lambda)? {
        below = below + lhs_main(lambda, &nu, pt)?;
    }
    expect_equal("z-recursion", instance(lambda, mu), &lhs, &(factor.clone() * below))?;
    for t in enumerate_syt(lambda, mu) {
        let reduced = z_t_value(&t.delete_first()?, pt)?;
        let label = format!("{} T={:?}", instance(lambda, mu), t.rows());
        expect_equal("z-single-tableau", label, &z_t_value(&t, pt)?, &(factor.clone() * reduced))?;
    }
    Ok(())
}

/// The right side obeys the same recursion as the left one; for `λ = μ`
/// it equals 1.
pub fn verify_rhs_recursion<F: Field + Coefficient>(lambda: &Partition, mu: &Partition, pt: &ZPoint<F>) -> Result<()> {
    let lhs = rhs_main(lambda, mu, pt)?;
    if lambda == mu {
        return expect_equal("rhs-recursion-base", instance(lambda, mu), &lhs, &F::one());
    }
    let factor = inverse(skew_content_sum(lambda, mu, pt)?)?;
    let mut below = F::zero();
    for nu in mu.cover_extensions(lambda)? {
        below = below + rhs_main(lambda, &nu, pt)?;
    }
    expect_equal("rhs-recursion", instance(lambda, mu), &lhs, &(factor * below))
}

/// `w_i = z_{-n} + … + z_i`, so `w_i = 0` for `i < -n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WWeights<F = Rational> {
    n: usize,
    /// `w_{-n}, w_{-n+1}, …`
    w: Vec<F>,
}

impl<F: Field> WWeights<F> {
    /// Prefix sums of `pt` from `z_{-n}` to the top of its window.
    pub fn new(pt: &ZPoint<F>, n: usize) -> Result<Self> {
        let (_, hi) = pt.window();
        let mut w = Vec::new();
        let mut acc = F::zero();
        for k in -(n as i64)..=hi {
            acc = acc + pt.z(k)?;
            w.push(acc.clone());
        }
        Ok(WWeights { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: i64) -> Result<F> {
        let n = self.n as i64;
        if i < -n {
            return Ok(F::zero());
        }
        self.w
            .get((i + n) as usize)
            .cloned()
            .ok_or_else(|| Error::UnassignedVariable(format!("w{i}")))
    }

    /// `w_{ℓ_i} - w_{-ℓᵗ_j - 1}`, which equals `h_λ((i,j); z)`.
    pub fn hook(&self, lambda: &Partition, c: Cell) -> Result<F> {
        if !lambda.contains_cell(c) {
            return Err(Error::BoxOutsideShape(c));
        }
        let ell = lambda.shifted(c.row as usize);
        let ell_t = lambda.conjugate().shifted(c.col as usize);
        Ok(self.get(ell)? - self.get(-ell_t - 1)?)
    }
}

/// With `n` a cutoff (`λ_n = μ_n = 0`) and `pt` covering `[-n, λ_1]`, checks
/// `w_{ℓ_i} - w_{-ℓᵗ_j - 1} = h_λ((i,j); z)` on `Y(λ)`,
/// `w_{ℓ_i} - w_{m_i} = Σ_{(i,j) ∈ Y(λ/μ)} z_{j-i}` for `i ∈ [n]`, and
/// `Σ_{ℓ_k ∉ Δ(μ)} w_{ℓ_k} - Σ_{m_i ∉ Δ(λ)} w_{m_i} = Σ_{Y(λ/μ)} z_{j-i}`.
/// Returns the number of equalities checked.
pub fn check_w_identities<F: Field + Coefficient>(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
    pt: &ZPoint<F>,
) -> Result<usize> {
    if !lambda.contains(mu) {
        return Err(not_contained(lambda, mu));
    }
    let ctx = SkewContext::new(lambda, mu, n)?;
    let w = WWeights::new(pt, n)?;
    let label = || format!("{}/{} n={n}", lambda, mu);
    let mut checks = 0;
    for c in lambda.diagram() {
        expect_equal("w-hook", format!("{} box={c}", label()), &w.hook(lambda, c)?, &hook_value(lambda, c, pt)?)?;
        checks += 1;
    }
    for i in 1..=n {
        let lhs = w.get(ctx.ell(i))? - w.get(ctx.m(i))?;
        let rhs = (mu.part(i) + 1..=lambda.part(i))
            .try_fold(F::zero(), |acc, j| Ok::<F, Error>(acc + pt.z(j as i64 - i as i64)?))?;
        expect_equal("w-row", format!("{} i={i}", label()), &lhs, &rhs)?;
        checks += 1;
    }
    let mut lhs = F::zero();
    for k in 1..=n {
        if !mu.delta_contains(ctx.ell(k)) {
            lhs = lhs + w.get(ctx.ell(k))?;
        }
        if !lambda.delta_contains(ctx.m(k)) {
            lhs = lhs - w.get(ctx.m(k))?;
        }
    }
    expect_equal("w-skew-sum", label(), &lhs, &skew_content_sum(lambda, mu, pt)?)?;
    Ok(checks + 1)
}

/// Outcome of a sampled check over several random points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub theorem: String,
    pub lambda: Partition,
    pub mu: Partition,
    pub points: Vec<ZPoint>,
    pub status: Status,
    pub resamples: usize,
    pub witness: Option<String>,
}

impl PointReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl Serialize for PointReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = if self.witness.is_some() { 7 } else { 6 };
        let mut s = serializer.serialize_struct("PointReport", fields)?;
        s.serialize_field("theorem", &self.theorem)?;
        s.serialize_field("lambda", &self.lambda)?;
        s.serialize_field("mu", &self.mu)?;
        s.serialize_field("points", &self.points)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("resamples", &self.resamples)?;
        if let Some(w) = &self.witness {
            s.serialize_field("witness", w)?;
        }
        s.end()
    }
}

/// Stream id for the random points of one instance, so that an instance
/// sees the same points whatever else runs beside it.
fn instance_stream(theorem: &str, lambda: &Partition, mu: &Partition) -> u64 {
    // FNV-1a
    format!("{theorem}:{lambda}/{mu}")
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Runs `check` at `trials` random points on [`shape_window`], drawing a
/// fresh point whenever a denominator vanishes, at most `attempts` draws per
/// trial.
pub fn verify_at_random_points(
    theorem: &str,
    lambda: &Partition,
    mu: &Partition,
    trials: usize,
    seed: u64,
    attempts: usize,
    check: impl Fn(&ZPoint) -> Result<()>,
) -> PointReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance_stream(theorem, lambda, mu));
    let (lo, hi) = shape_window(lambda, mu);
    let mut report = PointReport {
        theorem: theorem.to_string(),
        lambda: lambda.clone(),
        mu: mu.clone(),
        points: Vec::new(),
        status: Status::Pass,
        resamples: 0,
        witness: None,
    };
    for _ in 0..trials {
        let mut done = false;
        for _ in 0..attempts {
            let pt = ZPoint::random(lo, hi, &mut rng);
            match check(&pt) {
                Ok(()) => {
                    report.points.push(pt);
                    done = true;
                    break;
                }
                Err(Error::ZeroDenominator) => report.resamples += 1,
                Err(e) => {
                    report.status = match e {
                        Error::IdentityViolated { .. } => Status::Violated,
                        _ => Status::Error,
                    };
                    report.witness = Some(e.to_string());
                    report.points.push(pt);
                    return report;
                }
            }
        }
        if !done {
            report.status = Status::SamplingExhausted;
            report.witness = Some(Error::SamplingExhausted { attempts }.to_string());
            return report;
        }
    }
    report
}

/// Checks the skew hook length formula at `trials` seeded random points.
pub fn verify_main(lambda: &Partition, mu: &Partition, trials: usize, seed: u64) -> Result<PointReport> {
    if !lambda.contains(mu) {
        return Err(not_contained(lambda, mu));
    }
    Ok(verify_at_random_points("main", lambda, mu, trials, seed, DEFAULT_ATTEMPTS, |pt| {
        main_identity_at(lambda, mu, pt)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::Poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn z(k: i64) -> Poly {
        Poly::z(k)
    }

    fn random_point(lo: i64, hi: i64, seed: u64) -> ZPoint {
        ZPoint::random(lo, hi, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn algebraic_hooks() {
        let lambda = p("3,2");
        assert_eq!(
            algebraic_hook::<Rational>(&lambda, Cell::new(1, 1)).unwrap(),
            z(0) + z(1) + z(2) + z(-1)
        );
        assert_eq!(algebraic_hook::<Rational>(&lambda, Cell::new(1, 3)).unwrap(), z(2));
        assert_eq!(algebraic_hook::<Rational>(&p("2,2"), Cell::new(2, 2)).unwrap(), z(0));
        assert_eq!(
            algebraic_hook::<Rational>(&lambda, Cell::new(3, 1)),
            Err(Error::BoxOutsideShape(Cell::new(3, 1)))
        );
        let ones = ZPoint::<Rational>::ones(-3, 3);
        for c in lambda.diagram() {
            assert_eq!(hook_value(&lambda, c, &ones).unwrap(), integer(lambda.hook_length(c).unwrap() as i64));
        }
    }

    #[test]
    fn z_t_at_ones_is_inverse_factorial() {
        let ones = ZPoint::<Rational>::ones(-4, 4);
        for t in enumerate_syt(&p("3,2,1"), &p("1")) {
            assert_eq!(z_t_value(&t, &ones).unwrap(), Rational::one() / factorial(5));
        }
        assert_eq!(z_t_value(&Tableau::empty(), &ones).unwrap(), Rational::one());
    }

    #[test]
    fn z_of_tableau_a() {
        let t = Tableau::new(p("3,2"), p("1"), vec![vec![1, 2], vec![3, 4]]).unwrap();
        for seed in 0..3 {
            let pt = random_point(-2, 3, seed);
            let zk = |k| pt.z(k).unwrap();
            let d = (zk(1) + zk(2) + zk(-1) + zk(0)) * (zk(2) + zk(-1) + zk(0)) * (zk(-1) + zk(0)) * zk(0);
            assert_eq!(z_t_value(&t, &pt).unwrap(), Rational::one() / d);
        }
    }

    #[test]
    fn zero_denominators_are_reported() {
        let t = Tableau::new(p("1"), Partition::empty(), vec![vec![1]]).unwrap();
        let mut pt = ZPoint::<Rational>::ones(-1, 1);
        pt.set(0, Rational::zero()).unwrap();
        assert_eq!(z_t_value(&t, &pt), Err(Error::ZeroDenominator));
        assert_eq!(rhs_main(&p("1"), &Partition::empty(), &pt), Err(Error::ZeroDenominator));
        assert!(matches!(pt.z(7), Err(Error::UnassignedVariable(_))));
    }

    #[test]
    fn main_examples() {
        let (lambda, mu) = (p("3,2"), p("1"));
        let ones = ZPoint::<Rational>::ones(-2, 3);
        assert_eq!(lhs_main(&lambda, &mu, &ones).unwrap(), rational(5, 24));
        assert_eq!(rhs_main(&lambda, &mu, &ones).unwrap(), rational(5, 24));
        let pt = random_point(-3, 3, 11);
        assert_eq!(lhs_main(&lambda, &lambda, &pt).unwrap(), Rational::one());
        assert_eq!(rhs_main(&lambda, &lambda, &pt).unwrap(), Rational::one());
        let square = p("2,2");
        let pt = random_point(-3, 2, 5);
        assert_eq!(
            lhs_main(&square, &Partition::empty(), &pt).unwrap(),
            rhs_main(&square, &Partition::empty(), &pt).unwrap()
        );
        assert!(verify_main(&lambda, &mu, 3, 42).unwrap().passed());
        assert!(verify_main(&square, &Partition::empty(), 3, 42).unwrap().passed());
        assert!(verify_main(&p("1"), &p("2"), 1, 0).is_err());
    }

    #[test]
    fn main_against_explicit_sums() {
        // the five z-fractions and the two excitation products, written out
        let (lambda, mu) = (p("3,2"), p("1"));
        let pt = random_point(-2, 3, 17);
        let zk = |k| pt.z(k).unwrap();
        let inv = |v: Rational| Rational::one() / v;
        let (zm, z0, z1, z2) = (zk(-1), zk(0), zk(1), zk(2));
        let all = zm.clone() + z0.clone() + z1.clone() + z2.clone();
        let lhs = inv(all.clone() * (z2.clone() + zm.clone() + z0.clone()) * (zm.clone() + z0.clone()) * z0.clone())
            + inv(all.clone() * (zm.clone() + z2.clone() + z0.clone()) * (z2.clone() + z0.clone()) * z0.clone())
            + inv(all.clone() * (z1.clone() + z2.clone() + z0.clone()) * (z2.clone() + z0.clone()) * z0.clone())
            + inv(all.clone() * (zm.clone() + z0.clone() + z2.clone()) * (z0.clone() + z2.clone()) * z2.clone())
            + inv(all.clone() * (z1.clone() + z0.clone() + z2.clone()) * (z0.clone() + z2.clone()) * z2.clone());
        let rhs = inv((zm.clone() + z0.clone()) * (z1.clone() + z2.clone() + z0.clone()) * z0.clone() * z2.clone())
            + inv(all * (zm + z0.clone()) * (z1 + z2.clone() + z0) * z2);
        assert_eq!(lhs_main(&lambda, &mu, &pt).unwrap(), lhs);
        assert_eq!(rhs_main(&lambda, &mu, &pt).unwrap(), rhs);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn counts() {
        assert_eq!(naruse_count(&p("3,2"), &p("1")), integer(5));
        assert_eq!(naruse_count(&p("2,2"), &Partition::empty()), integer(2));
        assert_eq!(
            naruse_count(&p("4,4,3"), &p("3,1")),
            integer(enumerate_syt(&p("4,4,3"), &p("3,1")).len() as i64)
        );
        assert_eq!(hlf_count(&p("2,2")), integer(2));
        assert_eq!(hlf_count(&p("1")), integer(1));
        assert_eq!(hlf_count(&p("3,2")), integer(5));
        assert_eq!(hlf_count(&Partition::empty()), integer(1));
        assert_eq!(naruse_count(&p("1"), &p("2")), Rational::zero());
        assert_eq!(check_naruse(&p("3,2"), &p("1")).unwrap(), integer(5));
        assert_eq!(check_naruse(&p("2,2"), &Partition::empty()).unwrap(), integer(2));
    }

    #[test]
    fn z_recursion_example() {
        let (lambda, mu) = (p("3,3,2"), p("2,1"));
        let t = Tableau::new(lambda.clone(), mu.clone(), vec![vec![2], vec![1, 3], vec![4, 5]]).unwrap();
        let reduced = t.delete_first().unwrap();
        assert_eq!(reduced.inner(), &p("2,2"));
        let pt = random_point(-4, 3, 3);
        let factor = (0..=2).chain(-2..=-1).map(|k| pt.z(k).unwrap()).sum::<Rational>();
        assert_eq!(skew_content_sum(&lambda, &mu, &pt).unwrap(), factor);
        assert_eq!(
            z_t_value(&t, &pt).unwrap(),
            z_t_value(&reduced, &pt).unwrap() / factor
        );
        verify_z_recursion(&lambda, &mu, &pt).unwrap();
        let pt = random_point(-2, 1, 4);
        assert_eq!(
            lhs_main(&p("1"), &Partition::empty(), &pt).unwrap(),
            Rational::one() / pt.z(0).unwrap()
        );
        verify_z_recursion(&p("1"), &Partition::empty(), &pt).unwrap();
    }

    #[test]
    fn rhs_recursion_examples() {
        let pt = random_point(-3, 3, 8);
        verify_rhs_recursion(&p("3,2"), &p("1"), &pt).unwrap();
        verify_rhs_recursion(&p("2"), &p("1"), &pt).unwrap();
        verify_rhs_recursion(&p("2"), &p("2"), &pt).unwrap();
    }

    #[test]
    fn w_weights() {
        let ones = ZPoint::<Rational>::ones(-3, 3);
        let w = WWeights::new(&ones, 3).unwrap();
        assert_eq!(w.get(-4).unwrap(), Rational::zero());
        assert_eq!(w.get(-3).unwrap(), integer(1));
        assert_eq!(w.get(3).unwrap(), integer(7));
        assert!(w.get(4).is_err());
        let lambda = p("3,2");
        for c in lambda.diagram() {
            assert_eq!(w.hook(&lambda, c).unwrap(), integer(lambda.hook_length(c).unwrap() as i64));
        }
        check_w_identities(&lambda, &p("1"), 3, &ones).unwrap();
    }

    #[test]
    fn w_hook_anchor() {
        let lambda = p("5,4,3,3,1");
        let n = 6;
        let ones = ZPoint::<Rational>::ones(-(n as i64), 5);
        let w = WWeights::new(&ones, n).unwrap();
        assert_eq!(w.hook(&lambda, Cell::new(3, 2)).unwrap(), integer(3));
        let pt = random_point(-(n as i64), 5, 2);
        let w = WWeights::new(&pt, n).unwrap();
        assert_eq!(
            w.hook(&lambda, Cell::new(3, 2)).unwrap(),
            hook_value(&lambda, Cell::new(3, 2), &pt).unwrap()
        );
        check_w_identities(&lambda, &p("2,1,1"), n, &pt).unwrap();
    }

    #[test]
    fn w_identities_need_a_cutoff() {
        let pt = ZPoint::<Rational>::ones(-3, 3);
        assert_eq!(
            check_w_identities(&p("3,2"), &p("1"), 2, &pt),
            Err(Error::CutoffTooSmall { n: 2 })
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_main(&p("3,1"), &p("1"), 2, 7).unwrap();
        let b = verify_main(&p("3,1"), &p("1"), 2, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points.len(), 2);
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["status"], "pass");
        assert_eq!(json["lambda"], serde_json::json!([3, 1]));
        assert!(json.get("witness").is_none());
    }

    #[test]
    fn false_identity_is_caught() {
        let report = verify_at_random_points("bogus", &p("2"), &Partition::empty(), 1, 0, 5, |pt| {
            expect_equal("bogus", "x".into(), &pt.z(0)?, &pt.z(1)?)
        });
        assert_eq!(report.status, Status::Violated);
        let report = verify_at_random_points("unlucky", &p("2"), &Partition::empty(), 1, 0, 5, |_| {
            Err(Error::ZeroDenominator)
        });
        assert_eq!(report.status, Status::SamplingExhausted);
        assert_eq!(report.resamples, 5);
    }
}
