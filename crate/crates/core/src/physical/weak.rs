//! Residuals of the evolution equation in weak form (test functions `η(t)ψ(x)`)
//! and pointwise for ω.
//!
//! With `Ψ(y) = ∫₀^y ψ`, a measure solution satisfies
//!
//! `∫ η'(t) ⟨u, ψ⟩ + η(t) ⟨u, x^{γ+1}ψ' - x^γ ψ + θ x^{γ-1} Ψ⟩ dt = 0`,
//!
//! which for `ψ = x^{s-1}` is the Mellin-domain equation `∂_t W = Φ(s) W(s+γ)`.
//! Atoms enter every bracket exactly.

use serde::Serialize;

use super::measure::MeasureSolution;
use crate::error::{Error, Result};
use crate::quad::gk15_vec;
use crate::scalar::cr;
use crate::{Params, C64};

/// The bump `(1-ξ²)^4`, `ξ = (2x-lo-hi)/(hi-lo)`, supported on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bump {
    pub lo: f64,
    pub hi: f64,
}

impl Bump {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::Domain(format!("bump needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    fn xi(&self, x: f64) -> f64 {
        (2.0 * x - self.lo - self.hi) / (self.hi - self.lo)
    }

    pub fn value(&self, x: f64) -> f64 {
        let xi = self.xi(x);
        if xi.abs() >= 1.0 {
            return 0.0;
        }
        (1.0 - xi * xi).powi(4)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let xi = self.xi(x);
        if xi.abs() >= 1.0 {
            return 0.0;
        }
        -16.0 * xi * (1.0 - xi * xi).powi(3) / (self.hi - self.lo)
    }

    /// `∫_lo^x` of the bump.
    pub fn primitive(&self, x: f64) -> f64 {
        let p = |u: f64| {
            let u2 = u * u;
            u * (1.0 + u2 * (-4.0 / 3.0 + u2 * (6.0 / 5.0 + u2 * (-4.0 / 7.0 + u2 / 9.0))))
        };
        let xi = self.xi(x).clamp(-1.0, 1.0);
        0.5 * (self.hi - self.lo) * (p(xi) - p(-1.0))
    }

    /// `∫` of the bump over its support, `(hi-lo)·128/315`.
    pub fn mass(&self) -> f64 {
        (self.hi - self.lo) * 128.0 / 315.0
    }
}

/// Weak-form residual for one spatial bump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakResidual {
    pub space: Bump,
    pub residual: f64,
    /// Largest of the four term magnitudes `∫|η'⟨u,ψ⟩|`, `∫|η⟨u,x^{γ+1}ψ'⟩|`, ...
    pub scale: f64,
    /// Quadrature error estimate of the time integral.
    pub quad_error: f64,
}

impl WeakResidual {
    pub fn relative(&self) -> f64 {
        self.residual.abs() / self.scale
    }
}

/// A time panel `[a, b]` with (value, error, L1) per integrand component.
type Panel = (f64, f64, Vec<(C64, f64, f64)>);

/// Relative error target of the time integral (against each bump's scale).
pub const TIME_RTOL: f64 = 1e-8;
/// Panel budget of the adaptive rule in `t`.
pub const MAX_TIME_PANELS: usize = 48;

/// Weak residuals of the solution [`MeasureSolution::at`] for `η = time` and each
/// `ψ` in `spaces`. `tol` is the absolute tolerance of the spatial integrals.
pub fn weak_residuals(p: &Params, time: Bump, spaces: &[Bump], tol: f64) -> Result<Vec<WeakResidual>> {
    if spaces.is_empty() {
        return Err(Error::Domain("weak residual needs at least one spatial bump".into()));
    }
    if spaces.iter().any(|b| b.lo <= 0.0) {
        return Err(Error::Domain("spatial bumps must lie in x > 0".into()));
    }
    let g = p.gamma;
    let theta = p.theta;
    let k = spaces.len();
    let lo = spaces.iter().map(|b| b.lo).fold(f64::INFINITY, f64::min);
    let cuts: Vec<f64> = spaces.iter().flat_map(|b| [b.lo, b.hi]).collect();

    // per t and bump: ⟨u,ψ⟩, ⟨u,x^{γ+1}ψ'⟩, ⟨u,x^γψ⟩, ⟨u,θx^{γ-1}Ψ⟩
    let brackets = |t: f64| -> Result<Vec<C64>> {
        let sol = MeasureSolution::at(p, t)?;
        let test = |x: f64| -> Vec<C64> {
            let xg = x.powf(g);
            spaces
                .iter()
                .flat_map(|b| {
                    [
                        cr(b.value(x)),
                        cr(xg * x * b.derivative(x)),
                        cr(xg * b.value(x)),
                        cr(theta * xg / x * b.primitive(x)),
                    ]
                })
                .collect()
        };
        sol.integrate_with_cuts(test, 4 * k, lo, f64::INFINITY, &cuts, tol)
    };
    let integrand = |t: f64| -> Result<Vec<C64>> {
        let (eta, deta) = (time.value(t), time.derivative(t));
        let m = brackets(t)?;
        Ok(m.chunks(4).flat_map(|q| [q[0] * deta, q[1] * eta, -q[2] * eta, q[3] * eta]).collect())
    };

    // adaptive Gauss-Kronrod in t: the atom crossing a bump edge leaves A(t) only C³
    let panel = |a: f64, b: f64| -> Result<Panel> { Ok((a, b, gk15_vec(&integrand, 4 * k, a, b)?)) };
    let mut panels = vec![panel(time.lo, time.hi)?];
    loop {
        let totals = sum_panels(&panels, spaces);
        // error share of each panel, normalised per bump
        let worst = panels
            .iter()
            .enumerate()
            .map(|(i, (_, _, q))| {
                let share = q
                    .chunks(4)
                    .zip(&totals)
                    .map(|(c, tot)| c.iter().map(|r| r.1).sum::<f64>() / tot.scale)
                    .fold(0.0, f64::max);
                (i, share)
            })
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        let done = totals.iter().all(|r| r.quad_error <= TIME_RTOL * r.scale || r.scale == 0.0);
        if done || panels.len() >= MAX_TIME_PANELS {
            return Ok(totals);
        }
        let (a, b, _) = panels[worst.0];
        let m = 0.5 * (a + b);
        panels[worst.0] = panel(a, m)?;
        panels.insert(worst.0 + 1, panel(m, b)?);
    }
}

fn sum_panels(panels: &[Panel], spaces: &[Bump]) -> Vec<WeakResidual> {
    let mut acc = vec![(0.0, 0.0, 0.0); 4 * spaces.len()];
    for (_, _, q) in panels {
        for (o, (v, e, l1)) in acc.iter_mut().zip(q) {
            o.0 += v.re;
            o.1 += e;
            o.2 += l1;
        }
    }
    acc.chunks(4)
        .zip(spaces)
        .map(|(q, &space)| WeakResidual {
            space,
            residual: q.iter().map(|r| r.0).sum(),
            scale: q.iter().map(|r| r.2).fold(0.0, f64::max),
            quad_error: q.iter().map(|r| r.1).sum(),
        })
        .collect()
}

/// Pointwise residual of `∂_t ω + ∂_x(x^{γ+1}ω) + x^γ ω - θ∫_x^∞ y^{γ-1} ω dy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PdeResidual {
    pub t: f64,
    pub x: f64,
    pub residual: f64,
    /// Largest term magnitude.
    pub scale: f64,
}

impl PdeResidual {
    pub fn relative(&self) -> f64 {
        self.residual.abs() / self.scale
    }
}

/// Relative step of the central differences.
pub const FD_STEP: f64 = 1e-4;

/// [`PdeResidual`] of ω at `(t, x)`, `γt > 1`, derivatives by central differences.
pub fn omega_pde_residual(p: &Params, t: f64, x: f64) -> Result<PdeResidual> {
    let g = p.gamma;
    if g <= 0.0 || !(g * t > 1.0) || !(x > 0.0) {
        return Err(Error::Domain(format!(
            "omega PDE residual needs gamma > 0, gamma t > 1, x > 0; got gamma t = {}, x = {x}",
            g * t
        )));
    }
    let ht = FD_STEP * t.min(t - 1.0 / g);
    let before = MeasureSolution::omega(p, t - ht)?;
    let after = MeasureSolution::omega(p, t + ht)?;
    let now = MeasureSolution::omega(p, t)?;
    let dt = (after.density(x)? - before.density(x)?) / (2.0 * ht);

    let hx = FD_STEP * x;
    let flux = |y: f64| -> Result<f64> { Ok(y.powf(g + 1.0) * now.density(y)?) };
    let dx = (flux(x + hx)? - flux(x - hx)?) / (2.0 * hx);
    let loss = x.powf(g) * now.density(x)?;
    let gain = p.theta * now.integrate(|y| vec![cr(y.powf(g - 1.0))], 1, x, f64::INFINITY, 1e-13)?[0].re;

    let terms = [dt, dx, loss, gain];
    Ok(PdeResidual { t, x, residual: dt + dx + loss - gain, scale: terms.iter().fold(0.0, |m, v| m.max(v.abs())) })
}
