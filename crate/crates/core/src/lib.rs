//! Exact combinatorics of Young tableaux and hook length formulas.
//!
//! The crate builds partitions, tableaux, excited diagrams, flagged factorial
//! Schur polynomials and determinants, and checks the identities relating
//! them by comparing brute-force enumeration against closed and
//! determinantal forms. All arithmetic is exact; polynomial and determinant
//! code is generic over the coefficient ring, with [`Rational`] and [`Poly`]
//! as the default instantiations.

pub mod algebra;
pub mod error;
pub mod excitations;
pub mod hook_formulas;
pub mod partitions;
pub mod report;
pub mod schur_jt;
pub mod tableaux;

pub use algebra::{EvalPoint, MPoly, Ring, SquareMatrix, Variable};
pub use error::{Error, Result};
pub use partitions::{Cell, Diagram, Partition, SkewContext, SkewShape};
pub use tableaux::{Flagging, Tableau};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// Polynomials with rational coefficients.
pub type Poly = MPoly<Rational>;
