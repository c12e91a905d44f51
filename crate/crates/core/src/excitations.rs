//! Excited moves, the excitations `E(λ/μ)`, and their bijection with flagged
//! semistandard tableaux.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::One;

use crate::algebra::{Coefficient, MPoly, Ring};
use crate::error::{Error, Result};
use crate::partitions::{Cell, Diagram, Partition};
use crate::tableaux::{enumerate_fssyt, enumerate_ssyt, Flagging, Tableau};

/// Replaces `c` by its southeastern neighbour. Blocked unless `c ∈ d` and
/// none of `c↓`, `c→`, `c↘` lie in `d`.
pub fn excited_move(d: &Diagram, c: Cell) -> Result<Diagram> {
    if !can_move(d, c) {
        return Err(Error::MoveBlocked(c));
    }
    let mut out = d.clone();
    out.remove(&c);
    out.insert(c.southeast());
    Ok(out)
}

fn can_move(d: &Diagram, c: Cell) -> bool {
    d.contains(&c) && !d.contains(&c.south()) && !d.contains(&c.east()) && !d.contains(&c.southeast())
}

/// `E(λ/μ)`: diagrams reachable from `Y(μ)` by excited moves without leaving
/// `Y(λ)`, in sorted order. Empty when `μ ⊄ λ`.
pub fn enumerate_excitations(lambda: &Partition, mu: &Partition) -> Vec<Diagram> {
    if !lambda.contains(mu) {
        return Vec::new();
    }
    let start = mu.diagram();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for &c in &d {
            if lambda.contains_cell(c.southeast()) && can_move(&d, c) {
                let mut next = d.clone();
                next.remove(&c);
                next.insert(c.southeast());
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// `D(T) = {(T(i,j), T(i,j) + j - i)}` for a semistandard `T` of straight shape.
pub fn excitation_of_tableau(t: &Tableau) -> Result<Diagram> {
    if !t.inner().is_empty() || !t.is_semistandard() {
        return Err(Error::NotSemistandard);
    }
    Ok(t
        .cells()
        .map(|(c, v)| Cell::new(v as i64, v as i64 + c.content()))
        .collect())
}

/// Inverse of [`excitation_of_tableau`]: on each diagonal, the boxes of
/// `Y(μ)` and of `e` are matched in row order and each box of `Y(μ)` is
/// filled with the row of its partner.
pub fn tableau_of_excitation(e: &Diagram, mu: &Partition) -> Result<Tableau> {
    let by_diagonal = |d: &Diagram| {
        let mut map: BTreeMap<i64, Vec<Cell>> = BTreeMap::new();
        for &c in d {
            map.entry(c.content()).or_default().push(c);
        }
        map
    };
    let source = by_diagonal(&mu.diagram());
    let target = by_diagonal(e);
    let lengths = |m: &BTreeMap<i64, Vec<Cell>>| m.iter().map(|(&k, v)| (k, v.len())).collect::<Vec<_>>();
    if lengths(&source) != lengths(&target) {
        return Err(Error::NotAnExcitation("diagonal counts differ".into()));
    }
    if let Some(c) = e.iter().find(|c| c.row < 1 || c.col < 1) {
        return Err(Error::NotAnExcitation(format!("box {c} is not positive")));
    }
    let mut rows: Vec<Vec<u32>> = mu.parts().iter().map(|&p| vec![0; p]).collect();
    for (k, cells) in &source {
        // BTreeSet iteration is row-major, so each diagonal is already in row order.
        for (c, partner) in cells.iter().zip(&target[k]) {
            rows[c.row as usize - 1][c.col as usize - 1] = partner.row as u32;
        }
    }
    let t = Tableau::new(mu.clone(), Partition::empty(), rows)?;
    if !t.is_semistandard() {
        return Err(Error::NotAnExcitation("matched filling is not semistandard".into()));
    }
    Ok(t)
}

/// `∏_{(i,j) ∈ e} (x_i + y_j)`.
pub fn excitation_weight<S: Ring>(e: &Diagram) -> Result<MPoly<S>> {
    let mut out = MPoly::one();
    for &c in e {
        if c.row < 1 || c.col < 1 {
            return Err(Error::NonpositiveBox(c));
        }
        out *= &(MPoly::x(c.row) + MPoly::y(c.col));
    }
    Ok(out)
}

/// The factors `(a, b)` of `x_a + y_b` in the tableau weight
/// `∏_{(i,j) ∈ Y(μ)} (x_{T(i,j)} + y_{T(i,j)+j-i})`, sorted.
fn tableau_factors(t: &Tableau) -> Vec<(i64, i64)> {
    let mut f: Vec<(i64, i64)> = t.cells().map(|(c, v)| (v as i64, v as i64 + c.content())).collect();
    f.sort_unstable();
    f
}

/// Checks that `T ↦ D(T)` is a bijection `FSSYT(λ/μ) → E(λ/μ)` with inverse
/// [`tableau_of_excitation`], and that it carries the tableau weight to the
/// excitation weight. Both weights are products of distinct irreducible
/// factors `x_a + y_b`, so they are compared as sorted factor lists; see
/// [`check_weight_transport`] for the expanded comparison.
///
/// Also checks that every excitation has the diagonal profile of `Y(μ)`, and
/// that for `T ∈ SSYT(μ)` with entries at most `len λ`, `D(T) ⊆ Y(λ)` exactly
/// when `T` obeys the induced flagging. Returns the common cardinality.
pub fn check_bijection(lambda: &Partition, mu: &Partition) -> Result<usize> {
    let instance = format!("{lambda}/{mu}");
    let excitations = enumerate_excitations(lambda, mu);
    let tableaux = enumerate_fssyt(mu, &Flagging::induced(lambda, mu));
    if excitations.len() != tableaux.len() {
        return Err(Error::violated(
            "bijection-cardinality",
            instance,
            format!("excitations={} tableaux={}", excitations.len(), tableaux.len()),
        ));
    }
    let mut images = BTreeSet::new();
    for t in &tableaux {
        let e = excitation_of_tableau(t)?;
        if excitations.binary_search(&e).is_err() || !images.insert(e.clone()) {
            return Err(Error::violated("bijection-forward", instance, format!("{:?}", t.rows())));
        }
        let factors: Vec<(i64, i64)> = e.iter().map(|c| (c.row, c.col)).collect();
        if tableau_factors(t) != factors || factors.iter().any(|&(a, b)| a < 1 || b < 1) {
            return Err(Error::violated("bijection-weight", instance, format!("{:?} -> {e:?}", t.rows())));
        }
    }
    let diagonals = |d: &Diagram| {
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for c in d {
            *counts.entry(c.content()).or_default() += 1;
        }
        counts
    };
    let reference = diagonals(&mu.diagram());
    for e in &excitations {
        if diagonals(e) != reference {
            return Err(Error::violated("excitation-diagonals", instance, format!("{e:?}")));
        }
        let t = tableau_of_excitation(e, mu)?;
        if excitation_of_tableau(&t)? != *e || tableaux.binary_search(&t).is_err() {
            return Err(Error::violated("bijection-inverse", instance, format!("{e:?}")));
        }
    }
    let b = Flagging::induced(lambda, mu);
    for t in enumerate_ssyt(mu, lambda.len()) {
        let inside = excitation_of_tableau(&t)?.iter().all(|&c| lambda.contains_cell(c));
        if inside != t.is_flagged(&b) {
            return Err(Error::violated("flag-criterion", instance, format!("{:?}", t.rows())));
        }
    }
    Ok(excitations.len())
}

/// Expands both sides of the weight transport `w(T) = w(D(T))` over every
/// `T ∈ FSSYT(λ/μ)` and compares them as polynomials. Returns the number
/// of tableaux.
pub fn check_weight_transport<S: Ring + Coefficient>(lambda: &Partition, mu: &Partition) -> Result<usize> {
    let tableaux = enumerate_fssyt(mu, &Flagging::induced(lambda, mu));
    for t in &tableaux {
        let weight: MPoly<S> = t
            .cells()
            .map(|(c, v)| MPoly::x(v as i64) + MPoly::y(v as i64 + c.content()))
            .product();
        let transported = excitation_weight::<S>(&excitation_of_tableau(t)?)?;
        if weight != transported {
            return Err(Error::violated(
                "bijection-weight",
                format!("{lambda}/{mu}"),
                format!("tableau={weight} excitation={transported}"),
            ));
        }
    }
    Ok(tableaux.len())
}
