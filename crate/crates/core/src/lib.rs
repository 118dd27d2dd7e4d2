//! Explicit solutions of the critical growth-fragmentation equation
//!
//! `∂ₜu + ∂ₓ(x^{1+γ}u) + x^γ u = θ ∫ₓ^∞ y^{γ-1} u(t,y) dy`, `u(0) = δ₁`,
//!
//! in the Mellin domain (closed forms, contour integrals, power-series oracle)
//! and in physical space (atoms plus densities), with the verification suites
//! that cross-check them.
//!
//! The Mellin-domain layers (`special`, `model`, `mellin`, `quad`, `contour`)
//! are generic over [`scalar::Real`] (f32 and f64); `physical` and `verify` are
//! f64 only. The aliases below fix the scalar type.

// `!(a < b)` is how NaN gets rejected throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference constants keep all published digits
#![allow(clippy::excessive_precision)]
// index loops mirror the recurrences they implement
#![allow(clippy::needless_range_loop)]

pub mod contour;
pub mod error;
pub mod mellin;
pub mod model;
pub mod physical;
pub mod quad;
pub mod scalar;
pub mod special;
pub mod verify;

pub use error::{Error, Result};

/// Complex f64.
pub type C64 = scalar::Cx<f64>;
/// Model parameters in f64.
pub type Params = model::ModelParams<f64>;
/// Model parameters in f32.
pub type ParamsF32 = model::ModelParams<f32>;
/// Mellin-domain solution in f64.
pub type Solution = mellin::MellinSolution<f64>;
/// Contour path in f64.
pub type Path = contour::ContourPath<f64>;
