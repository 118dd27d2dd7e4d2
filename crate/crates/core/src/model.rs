//! Model parameters, the characteristic function Φ and regime classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{c, cr, lit, Cx, Real};
use crate::special::EPS_POLE;

/// `|θ - 1|` below which the repeated-root case is flagged.
pub const CRITICAL_WINDOW: f64 = 1e-10;

/// Growth exponent γ and dislocation intensity θ with the derived roots of `sΦ(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams<T: Real> {
    pub gamma: T,
    pub theta: T,
    /// `1 - √(1-θ)`, principal root.
    pub sigma1: Cx<T>,
    /// `1 + √(1-θ)`, principal root; `Im σ₂ >= 0`.
    pub sigma2: Cx<T>,
    /// `min(2, Re σ₂ + γ)`.
    pub nu: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(gamma: T, theta: T) -> Result<Self> {
        if !gamma.is_finite() || gamma == T::zero() {
            return Err(Error::InvalidParameter(format!("gamma must be finite and non-zero, got {gamma}")));
        }
        if !theta.is_finite() || theta <= T::zero() {
            return Err(Error::InvalidParameter(format!("theta must be finite and positive, got {theta}")));
        }
        let one = T::one();
        let d = one - theta;
        let root = if d >= T::zero() { c(d.sqrt(), T::zero()) } else { c(T::zero(), (-d).sqrt()) };
        let sigma1 = cr(one) - root;
        let sigma2 = cr(one) + root;
        let nu = (sigma2.re + gamma).min(lit(2.0));
        Ok(Self { gamma, theta, sigma1, sigma2, nu })
    }

    pub fn sigmas(&self) -> [Cx<T>; 2] {
        [self.sigma1, self.sigma2]
    }

    pub fn is_critical(&self) -> bool {
        (self.theta - T::one()).abs() < lit(CRITICAL_WINDOW)
    }

    /// Φ(s) = θ/s + s - 2.
    pub fn phi(&self, s: Cx<T>) -> Result<Cx<T>> {
        check_origin(s)?;
        Ok(self.phi_unchecked(s))
    }

    /// Φ(s) without the pole check; infinite at `s = 0`.
    #[inline]
    pub fn phi_unchecked(&self, s: Cx<T>) -> Cx<T> {
        cr(self.theta) / s + s - cr(lit(2.0))
    }

    /// Factored form `(s-σ₁)(s-σ₂)/s`.
    pub fn phi_factored(&self, s: Cx<T>) -> Result<Cx<T>> {
        check_origin(s)?;
        Ok((s - self.sigma1) * (s - self.sigma2) / s)
    }

    /// Mellin transform of θH(1-x): K(s) = θ/s for `Re s > 0`.
    pub fn dislocation_mellin(&self, s: Cx<T>) -> Result<Cx<T>> {
        check_origin(s)?;
        if s.re <= T::zero() {
            return Err(Error::Domain(format!("K(s) needs Re s > 0, got s = {s}")));
        }
        Ok(cr(self.theta) / s)
    }

    /// `inf_{s>0} Φ(s)`, attained at `s = √θ`.
    pub fn inf_phi(&self) -> T {
        lit::<T>(2.0) * (self.theta.sqrt() - T::one())
    }
}

fn check_origin<T: Real>(s: Cx<T>) -> Result<()> {
    let d = s.norm();
    if d < lit(EPS_POLE) {
        return Err(Error::PoleProximity { arg: format!("s = {s}"), pole: "0".into(), dist: d.to_f64_lossy() });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaSign {
    Positive,
    Negative,
}

/// Qualitative behaviour of the solution started from δ₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExpectedBehavior {
    /// Non-negative solution for all times.
    GlobalNonneg,
    /// Moments blow up at t = 1/γ and no non-negative extension exists.
    BlowupNoExtension,
    /// No non-negative weak solution even locally in time.
    NoLocalNonneg,
    /// Repeated root or parameters outside the covered range.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    pub gamma: f64,
    pub theta: f64,
    pub sigma1: [f64; 2],
    pub sigma2: [f64; 2],
    pub nu: f64,
    pub malthusian: bool,
    pub critical: bool,
    pub inf_phi: f64,
    pub gamma_sign: GammaSign,
    pub expected_behavior: ExpectedBehavior,
}

/// Regime classification of `params`.
pub fn classify<T: Real>(params: &ModelParams<T>) -> RegimeReport {
    let critical = params.is_critical();
    let malthusian = params.theta < T::one() && !critical;
    let g = params.gamma.to_f64_lossy();
    let gamma_sign = if g > 0.0 { GammaSign::Positive } else { GammaSign::Negative };
    let expected_behavior = if critical {
        ExpectedBehavior::Inconclusive
    } else if malthusian {
        ExpectedBehavior::GlobalNonneg
    } else if g < 0.0 {
        ExpectedBehavior::NoLocalNonneg
    } else if g < 2.0 {
        ExpectedBehavior::BlowupNoExtension
    } else {
        ExpectedBehavior::Inconclusive
    };
    let pair = |z: Cx<T>| [z.re.to_f64_lossy(), z.im.to_f64_lossy()];
    RegimeReport {
        gamma: g,
        theta: params.theta.to_f64_lossy(),
        sigma1: pair(params.sigma1),
        sigma2: pair(params.sigma2),
        nu: params.nu.to_f64_lossy(),
        malthusian,
        critical,
        inf_phi: params.inf_phi().to_f64_lossy(),
        gamma_sign,
        expected_behavior,
    }
}
