//! Computational toolkit for planar outer billiards with polynomial first
//! integrals and the plane-curve geometry behind them: the billiard map and
//! its invariance checks, relative-symmetry and skew-Hessian tests,
//! Newton-Puiseux branch expansion at affine and infinity points, the
//! delta/kappa/Hessian singularity calculus with Pluecker and genus
//! identities, and the root-symmetry audit that pins the projective Puiseux
//! exponent at 2.

pub mod billiard;
pub mod error;
pub mod invariants;
pub mod polycore;
pub mod puiseux;
pub mod symmetry;
pub mod theorems;

pub use error::{Error, Result};
