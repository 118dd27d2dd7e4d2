//! Complex-argument special functions: Γ, log Γ, 1/Γ and ₂F₁.

pub mod gamma;
pub mod hyp2f1;

pub use gamma::{cgamma, cos_pi, cot_pi, digamma, gamma_ratio, lgamma, ln_gamma_ratio, rgamma, sin_pi, EPS_POLE};
pub use hyp2f1::{hyp2f1, hyp2f1_limit_z1, hyp2f1_reg, hyp2f1_series, Hyp2F1Params, Z1Limit, Z1Regime};
