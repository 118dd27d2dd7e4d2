//! ω(t,x), the continuation past the blow-up time (`γ > 0`, `γt > 1`).
//!
//! ω is the inverse Mellin transform of [`u_real`] on `Re s = 1`. Closing the
//! contour to the left picks up the poles `s = -mγ` (a power series in `x^γ`,
//! convergent for `γt x^γ < 1`); closing to the right picks up `σ_ℓ + (m+1)γ`
//! (convergent for `(γt-1) x^γ > 1`). Between the two radii, and within a
//! margin of either, the line integral is evaluated directly.

use super::law::{AsymptoticLaw, LawKind};
use crate::contour::{inverse_mellin, InverseMellin};
use crate::error::{Error, Result};
use crate::mellin::{u_real, u_residue_left_log, u_residue_right_log, LogResidue};
use crate::scalar::cr;
use crate::special::gamma_ratio;
use crate::{Params, C64};

/// Number of residues precomputed on each side.
pub const OMEGA_TERMS: usize = 400;
/// A series is used only where its ratio is below this value.
pub const SERIES_RATIO: f64 = 0.8;
/// Absolute tolerance of the inverse-Mellin fallback.
pub const FALLBACK_TOL: f64 = 1e-11;

/// Precomputed residues of `u_real(t,·)` for one time.
#[derive(Debug, Clone)]
pub struct OmegaDensity {
    params: Params,
    t: f64,
    left: Vec<LogResidue<f64>>,
    right: Vec<LogResidue<f64>>,
}

/// How a value of ω was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaRoute {
    SmallX,
    LargeX,
    InverseMellin,
}

impl OmegaDensity {
    pub fn new(p: &Params, t: f64) -> Result<Self> {
        if p.gamma <= 0.0 || !(p.gamma * t > 1.0) {
            return Err(Error::Domain(format!("omega needs gamma > 0 and gamma t > 1, got gamma t = {}", p.gamma * t)));
        }
        let mut left = Vec::with_capacity(OMEGA_TERMS);
        let mut right = Vec::with_capacity(OMEGA_TERMS);
        for m in 0..OMEGA_TERMS {
            // high-order coefficients can overflow; the series then stops there
            match u_residue_left_log(p, t, m) {
                Ok(r) if r.log.re.is_finite() => left.push(r),
                _ => break,
            }
        }
        for m in 0..OMEGA_TERMS {
            match u_residue_right_log(p, t, m) {
                Ok(r) if r.log.re.is_finite() => right.push(r),
                _ => break,
            }
        }
        Ok(Self { params: *p, t, left, right })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// `γt x^γ`, the ratio of the small-x series.
    pub fn small_ratio(&self, x: f64) -> f64 {
        self.params.gamma * self.t * x.powf(self.params.gamma)
    }

    /// `1 / ((γt-1) x^γ)`, the ratio of the large-x series.
    pub fn large_ratio(&self, x: f64) -> f64 {
        1.0 / ((self.params.gamma * self.t - 1.0) * x.powf(self.params.gamma))
    }

    /// Which representation [`eval`](Self::eval) uses at `x`.
    pub fn route(&self, x: f64) -> OmegaRoute {
        if self.small_ratio(x) <= SERIES_RATIO {
            OmegaRoute::SmallX
        } else if self.large_ratio(x) <= SERIES_RATIO {
            OmegaRoute::LargeX
        } else {
            OmegaRoute::InverseMellin
        }
    }

    /// Residue series only; `SeriesSwitchPoint` where neither series is used.
    pub fn series(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        match self.route(x) {
            OmegaRoute::SmallX => sum_series(&self.left, x, 1.0, self.small_ratio(x)),
            OmegaRoute::LargeX => sum_series(&self.right, x, -1.0, self.large_ratio(x)),
            OmegaRoute::InverseMellin => {
                let xs = (self.params.gamma * self.t).powf(-1.0 / self.params.gamma);
                Err(Error::SeriesSwitchPoint { x, dist: (x - xs).abs() })
            }
        }
    }

    /// Inverse Mellin transform of `u_real` on `Re s = 1`.
    pub fn inverse_mellin(&self, x: f64, tol: f64) -> Result<InverseMellin<f64>> {
        check_x(x)?;
        inverse_mellin(|s| u_real(&self.params, self.t, s), 1.0, x, tol)
    }

    /// ω(t,x): series where they converge, the line integral elsewhere.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_with(x, FALLBACK_TOL)
    }

    /// [`eval`](Self::eval) with absolute tolerance `tol` for the line integral.
    pub fn eval_with(&self, x: f64, tol: f64) -> Result<f64> {
        match self.series(x) {
            Ok(v) => Ok(v),
            Err(Error::SeriesSwitchPoint { .. }) | Err(Error::NonConvergence { .. }) => {
                Ok(self.inverse_mellin(x, tol)?.value.re)
            }
            Err(e) => Err(e),
        }
    }

    /// Leading large-x term `-Re(r₀ x^{-σ₂-γ})` with its coefficient `-r₀`.
    pub fn large_x_leading(&self, x: f64) -> Result<f64> {
        let r = self.right.first().ok_or_else(|| Error::Domain("no large-x residue".into()))?;
        Ok(-r.term(x.ln()).re)
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite and > 0, got {x}")));
    }
    Ok(())
}

/// `sign · Σ Re(res_m x^{-p_m})`, stopped once the geometric tail bound drops
/// below 1e-16 of the running sum.
fn sum_series(res: &[LogResidue<f64>], x: f64, sign: f64, ratio: f64) -> Result<f64> {
    let lx = x.ln();
    let mut sum = 0.0;
    let mut scale = 0.0f64;
    for (m, r) in res.iter().enumerate() {
        let term = r.term(lx).re;
        sum += term;
        scale = scale.max(term.abs());
        let tail = term.abs() * ratio / (1.0 - ratio);
        if m >= 3 && tail <= 1e-16 * scale.max(sum.abs()) {
            return Ok(sign * sum);
        }
    }
    Err(Error::NonConvergence { what: format!("omega residue series at x = {x}"), terms: res.len() })
}

/// ω(t,x) by its residue series (`SeriesSwitchPoint` between the radii).
pub fn omega_series(p: &Params, t: f64, x: f64) -> Result<f64> {
    OmegaDensity::new(p, t)?.series(x)
}

/// `γΓ(1+σ₂/γ)/(Γ(σ₁/γ)Γ(1+(σ₂-σ₁)/γ)) (γt-1)^{σ₁/γ-1} / (γt)^{σ₂/γ}`.
pub fn large_x_coefficient(p: &Params, t: f64) -> Result<C64> {
    let g = p.gamma;
    let one = cr(1.0);
    let ratio = gamma_ratio(&[one + p.sigma2 / g], &[p.sigma1 / g, one + (p.sigma2 - p.sigma1) / g])?;
    let gt = g * t;
    let pw = ((p.sigma1 / g - one) * (gt - 1.0).ln() - p.sigma2 / g * gt.ln()).exp();
    Ok(ratio * pw * g)
}

/// Large-x law `ω ~ Re(A x^{-σ₂-γ})` (twice the real part when θ > 1 pairs σ₁, σ₂).
pub fn large_x_law(p: &Params, t: f64) -> Result<AsymptoticLaw> {
    let a = large_x_coefficient(p, t)?;
    Ok(AsymptoticLaw::new(LawKind::LargeX).with("A", a).with("exponent", -(p.sigma2 + cr(p.gamma))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::local::limit_profile;
    use approx::assert_relative_eq;

    fn params(g: f64, th: f64) -> Params {
        Params::new(g, th).unwrap()
    }

    #[test]
    fn series_match_inverse_mellin() {
        for (g, th, t) in [(1.0, 0.75, 2.0), (1.0, 2.0, 2.0), (1.5, 0.5, 1.0), (0.7, 3.0, 4.0)] {
            let w = OmegaDensity::new(&params(g, th), t).unwrap();
            for x in [0.05, 0.3, 3.0, 20.0, 200.0] {
                let Ok(s) = w.series(x) else { continue };
                let im = w.inverse_mellin(x, 1e-12).unwrap();
                assert!(
                    (s - im.value.re).abs() < 1e-9 * s.abs().max(1e-3),
                    "g={g} th={th} x={x}: {s} vs {:?}",
                    im.value
                );
                assert!(im.value.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn switch_band_is_refused_by_series() {
        let w = OmegaDensity::new(&params(1.0, 0.75), 2.0).unwrap();
        assert!(matches!(w.series(0.7), Err(Error::SeriesSwitchPoint { .. })));
        assert!(w.eval(0.7).is_ok());
    }

    #[test]
    fn near_blowup_approaches_limit_profile() {
        let p = params(1.0, 0.75);
        let w = OmegaDensity::new(&p, 1.0 + 1e-5).unwrap();
        for x in [0.1, 1.0, 5.0] {
            let v = w.eval(x).unwrap();
            assert!((v - limit_profile(&p, x).unwrap()).abs() < 1e-3, "x={x}");
        }
    }

    #[test]
    fn leading_large_x_term_matches_coefficient() {
        let p = params(1.0, 0.75);
        let a = large_x_coefficient(&p, 2.0).unwrap();
        let w = OmegaDensity::new(&p, 2.0).unwrap();
        let x = 1e3;
        let lead = w.large_x_leading(x).unwrap();
        assert_relative_eq!(lead, a.re * x.powf(-2.5), max_relative = 1e-12);
        assert_relative_eq!(w.eval(x).unwrap(), lead, max_relative = 2e-3);
    }
}
