//! Exact arithmetic substrate: big rationals, sparse multivariate polynomials,
//! rational functions, dense linear algebra over the rationals and over
//! polynomial entries, and univariate utilities (division, GCD, Sturm chains).

mod bareiss;
mod interpolate;
mod multipoly;
mod polylambda;
mod polymatrix;
mod qmatrix;
mod ratfunc;
mod rational;
mod unipoly;

pub use bareiss::bareiss_nullspace;
pub use interpolate::{interpolate_homogeneous, monomials_of_degree, InterpolationError};
pub use multipoly::MultiPoly;
pub use multipoly::rational_to_f64;
pub use polylambda::PolyLambda;
pub use polymatrix::PolyMatrix;
pub use qmatrix::{q_nullspace, QMatrix, SolveOutcome};
pub use ratfunc::RationalFunction;
pub use rational::{fmt_rat, parse_rat, rat, ratio, Rational};
pub use unipoly::{sturm_root_profile, RootRegion, RootProfile, UniPoly};

use thiserror::Error;

/// Usage errors surfaced by the exact-arithmetic layer.
#[derive(Debug, Error)]
pub enum ExactError {
    #[error("operands have different variable counts: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("point length {0} does not match variable count {1}")]
    PointLength(usize, usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor is not monic in lambda")]
    NonMonicDivisor,
    #[error("invalid rational literal: {0}")]
    BadRational(String),
}
