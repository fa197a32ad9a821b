//! Exact computation of minimal polynomials of symmetrized curvature jets.
//!
//! Given a Lie algebra with a left-invariant metric (or an explicit sequence of
//! endomorphism-valued polynomial maps), this crate computes the sequence of
//! symmetrized covariant derivatives of the curvature tensor, detects the
//! generic linear dependence degree, reconstructs the polynomial coefficients
//! of the monic homogeneous relation, and certifies the result with exact
//! rational arithmetic. Downstream diagnostics cover root structure of
//! specializations, Ricci trace constraints, principal-ideal divisibility,
//! commutator-witness feasibility, stabilizer-algebra chains, and a
//! floating-point geodesic cross-check.

pub mod dynamics;
pub mod exactalg;
pub mod jets;
pub mod liegroup;
pub mod minpoly;
pub mod par;
pub mod report;
pub mod singer;
