//! v(t,x) for `γ < 0`: inverse Mellin transform of the conjugate-symmetric
//! solution [`u2`] = Ω - π cot(πs/γ) R.
//!
//! The measure is the transported atom at `x_a = (1-γt)^{-1/γ}` plus a density
//! on `(0, x_a)`. Below `0.6 x_r`, `x_r = (|γ|t)^{1/|γ|}`, the density is the
//! residue series over the poles `σ_ℓ + (m+1)γ`. Elsewhere the Ω part is split
//! into its first [`SUBTRACTED`] hypergeometric terms, inverted in closed form,
//! and a remainder integrated on a left-bent path; the R part is integrated on
//! a path bent towards the side where `x^{-s}R` decays (left below `x_r`,
//! right above).

use super::law::{AsymptoticLaw, LawKind};
use super::local::{transported_atom, Atom};
use crate::contour::{inverse_mellin_on, ContourPath, Side};
use crate::error::{Error, Result};
use crate::mellin::{injection_log, u2, u2_residue};
use crate::quad::circle_integral;
use crate::scalar::{c, cr};
use crate::special::cot_pi;
use crate::{Params, C64};

/// Hypergeometric terms of Ω inverted in closed form.
pub const SUBTRACTED: usize = 8;
/// The residue series is used for `x < SERIES_FRACTION · x_r`.
pub const SERIES_FRACTION: f64 = 0.6;
/// Default absolute tolerance of a density value.
pub const DENSITY_TOL: f64 = 1e-10;

/// A pole of `u2` with its Laurent data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesPole {
    Simple {
        location: C64,
        residue: C64,
    },
    /// `a₋₂/(s-p)² + a₋₁/(s-p)`.
    Double {
        location: C64,
        a1: C64,
        a2: C64,
    },
}

impl SeriesPole {
    pub fn location(&self) -> C64 {
        match *self {
            SeriesPole::Simple { location, .. } | SeriesPole::Double { location, .. } => location,
        }
    }

    /// Residue of `x^{-s} u2(s)` at the pole.
    pub fn term(&self, ln_x: f64) -> C64 {
        match *self {
            SeriesPole::Simple { location, residue } => residue * (-location * ln_x).exp(),
            SeriesPole::Double { location, a1, a2 } => (a1 - a2 * ln_x) * (-location * ln_x).exp(),
        }
    }
}

/// A density value with the imaginary residue of the complex inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub imag: f64,
    pub error: f64,
}

/// Precomputed data of v(t,·) for one time.
#[derive(Debug, Clone)]
pub struct NegativeDensity {
    params: Params,
    t: f64,
    s0: f64,
    atom: Atom,
    x_inj: f64,
    w2: f64,
    /// `(p_j, D_j)`: closed-form part `Σ D_j (x/x_a)^{-p_j}` over poles left of `s₀`.
    closed: Vec<(f64, C64)>,
    poles: Vec<SeriesPole>,
    series_ok: bool,
}

/// Midpoint between `max(1+γ, Re σ₂+γ)` and the next lattice point `m|γ|` above it.
pub fn default_s0(p: &Params) -> f64 {
    let k = p.gamma.abs();
    let lo = (1.0 + p.gamma).max(p.sigma2.re + p.gamma);
    let next = ((lo / k).floor() + 1.0) * k;
    0.5 * (lo + next)
}

fn check(p: &Params, t: f64) -> Result<()> {
    if p.gamma >= 0.0 || !(t > 0.0) || !(-p.gamma * t < 1.0) {
        return Err(Error::Domain(format!("v needs gamma < 0 and 0 < -gamma t < 1, got gamma = {}, t = {t}", p.gamma)));
    }
    Ok(())
}

impl NegativeDensity {
    pub fn new(p: &Params, t: f64) -> Result<Self> {
        check(p, t)?;
        let g = p.gamma;
        let k = -g;
        let s0 = default_s0(p);
        let atom = transported_atom(p, t)?;
        let x_inj = (k * t).powf(1.0 / k);
        let w2 = (1.0 - g * t).powf(2.0 / g);
        let closed = closed_terms(p, t, s0, w2);
        let (poles, series_ok) = match series_poles(p, t, s0) {
            Ok(v) => (v, true),
            Err(_) => (Vec::new(), false),
        };
        Ok(Self { params: *p, t, s0, atom, x_inj, w2, closed, poles, series_ok })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn atom(&self) -> Atom {
        self.atom
    }

    /// `(|γ|t)^{1/|γ|}`: the injected part lives below this point.
    pub fn injection_edge(&self) -> f64 {
        self.x_inj
    }

    pub fn poles(&self) -> &[SeriesPole] {
        &self.poles
    }

    /// Density at `x` with the default tolerance.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.eval_with(x, DENSITY_TOL)?.value)
    }

    /// Density at `x` to absolute tolerance `tol`.
    pub fn eval_with(&self, x: f64, tol: f64) -> Result<DensityValue> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("x must be finite and > 0, got {x}")));
        }
        if x >= self.atom.location {
            return Ok(DensityValue { value: 0.0, imag: 0.0, error: 0.0 });
        }
        if self.series_ok && x < SERIES_FRACTION * self.x_inj {
            let v = self.series(x);
            return Ok(DensityValue { value: v.re, imag: v.im, error: 0.0 });
        }
        let om = self.omega_part(x, tol)?;
        let inj = self.injection_part(x, tol)?;
        let v = om.0 + inj.0;
        Ok(DensityValue { value: v.re, imag: v.im, error: om.1 + inj.1 })
    }

    /// Residue series `Σ Res(x^{-s}u2)` over the precomputed poles.
    pub fn series(&self, x: f64) -> C64 {
        let lx = x.ln();
        self.poles.iter().fold(cr(0.0), |acc, p| acc + p.term(lx))
    }

    fn omega_part(&self, x: f64, tol: f64) -> Result<(C64, f64)> {
        let ly = (x / self.atom.location).ln();
        let closed = self.closed.iter().fold(cr(0.0), |acc, &(pj, d)| acc + d * (-pj * ly).exp());
        let (p, t, w2) = (self.params, self.t, self.w2);
        let path = ContourPath::bent(self.s0, 1.0, Side::Left);
        // x^{-s} times the remainder equals w2 (x/x_a)^{-s} tail(s)
        let y = x / self.atom.location;
        let r = with_retry(|tl| inverse_mellin_on(|s| Ok(omega_tail(&p, t, s)? * w2), &path, y, tl), tol)?;
        Ok((closed + r.0, r.1))
    }

    fn injection_part(&self, x: f64, tol: f64) -> Result<(C64, f64)> {
        let (p, t) = (self.params, self.t);
        let path = if x < self.x_inj {
            ContourPath::bent(self.s0, 1.0f64.max(p.sigma2.im.abs() + 1.0), Side::Left)
        } else {
            ContourPath::bent(self.s0, 1.0, Side::Right)
        };
        // x^{-s} is folded into the log of R; the path has x = 1
        let lx = x.ln();
        let w = move |s: C64| -> Result<C64> {
            let (log, factor) = injection_log(&p, t, s)?;
            Ok(-cot_pi(s / p.gamma) * (log - s * lx).exp() * factor * std::f64::consts::PI)
        };
        with_retry(|tl| inverse_mellin_on(w, &path, 1.0, tl), tol)
    }

    /// Two leading small-x terms `Re(A₀x^{-σ₂-γ}) + Re(B₀x^{-σ₁-γ})` (or the
    /// double-pole term when the two families meet there).
    pub fn small_x_leading(&self, x: f64) -> f64 {
        let lx = x.ln();
        let mut best: Vec<&SeriesPole> = self.poles.iter().collect();
        best.sort_by(|a, b| b.location().re.total_cmp(&a.location().re));
        let top = best.first().map(|p| p.location().re).unwrap_or(0.0);
        // both members of a conjugate pair, or the two real leading poles
        let lead: Vec<&&SeriesPole> = if self.params.sigma2.im != 0.0 {
            best.iter().filter(|p| (p.location().re - top).abs() < 1e-9).collect()
        } else {
            best.iter().take(2).collect()
        };
        lead.iter().fold(cr(0.0), |acc, p| acc + p.term(lx)).re
    }
}

fn with_retry<F>(mut f: F, tol: f64) -> Result<(C64, f64)>
where
    F: FnMut(f64) -> Result<crate::contour::InverseMellin<f64>>,
{
    // algebraic decay near the kink at the injection edge: at most two looser tries
    let mut last = None;
    for factor in [1.0, 1e3, 1e5] {
        match f(tol * factor) {
            Ok(r) => return Ok((r.value, r.error)),
            Err(e @ (Error::SlowDecay(_) | Error::QuadratureFailure(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `Σ_{n>K} (a)_n(b)_n (γt)^n / (n! (s/γ)_n)`, `a = σ₁/γ`, `b = σ₂/γ`.
fn omega_tail(p: &Params, t: f64, s: C64) -> Result<C64> {
    let g = p.gamma;
    let (a, b, cc) = (p.sigma1 / g, p.sigma2 / g, s / g);
    let z = g * t;
    let mut term = cr(1.0);
    let mut sum = cr(0.0);
    let mut small = 0;
    for n in 1..5000usize {
        let m = (n - 1) as f64;
        term = term * (a + m) * (b + m) * z / ((cc + m) * n as f64);
        if n > SUBTRACTED {
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                small += 1;
                if small >= 3 {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
    }
    Err(Error::NonConvergence { what: format!("Omega tail at s = {s}"), terms: 5000 })
}

/// Closed-form inverse of the first [`SUBTRACTED`] terms of Ω below the atom.
fn closed_terms(p: &Params, t: f64, s0: f64, w2: f64) -> Vec<(f64, C64)> {
    let g = p.gamma;
    let k = -g;
    let (a, b) = (p.sigma1 / g, p.sigma2 / g);
    // C_n = w2 (a)_n (b)_n (γt)^n γ^n / n!
    let mut cn = vec![cr(w2)];
    for n in 1..=SUBTRACTED {
        let m = (n - 1) as f64;
        let prev = cn[n - 1];
        cn.push(prev * (a + m) * (b + m) * (g * t * g) / n as f64);
    }
    let mut out = Vec::new();
    for j in 0..SUBTRACTED {
        let pj = j as f64 * k;
        if pj >= s0 {
            continue;
        }
        let mut d = cr(0.0);
        for n in j + 1..=SUBTRACTED {
            let mut den = 1.0;
            for q in 0..n {
                if q != j {
                    den *= (j as f64 - q as f64) * k;
                }
            }
            d += cn[n] / den;
        }
        out.push((pj, d));
    }
    out
}

/// Poles `σ_ℓ + (m+1)γ` left of `s₀`, merged where the families meet, with
/// closed-form residues for simple poles and numerical Laurent coefficients
/// for double ones.
fn series_poles(p: &Params, t: f64, s0: f64) -> Result<Vec<SeriesPole>> {
    let g = p.gamma;
    let k = -g;
    let count = (80.0 / k).ceil() as usize;
    let mut locs: Vec<(C64, Vec<(usize, usize)>)> = Vec::new();
    for ell in [1usize, 2] {
        let sl = if ell == 1 { p.sigma1 } else { p.sigma2 };
        for m in 0..count {
            let loc = sl + cr((m as f64 + 1.0) * g);
            if loc.re >= s0 {
                continue;
            }
            match locs.iter_mut().find(|(l, _)| (*l - loc).norm() < 1e-9) {
                Some((_, members)) => members.push((ell, m)),
                None => locs.push((loc, vec![(ell, m)])),
            }
        }
    }
    let mut out = Vec::with_capacity(locs.len());
    for (i, (loc, members)) in locs.iter().enumerate() {
        let loc = *loc;
        let closed = if members.len() == 1 { u2_residue(p, t, members[0].0, members[0].1).ok() } else { None };
        if let Some(residue) = closed {
            if !residue.norm().is_finite() {
                return Err(Error::NonConvergence { what: "residue overflow".into(), terms: i });
            }
            out.push(SeriesPole::Simple { location: loc, residue });
            continue;
        }
        if members.len() > 2 {
            return Err(Error::DegenerateConnection(format!("pole of order {} at {loc}", members.len())));
        }
        let gap =
            locs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, (l, _))| (*l - loc).norm()).fold(k, f64::min);
        let rad = 0.3 * gap;
        let f = |s: C64| u2(p, t, s);
        let scale = c(0.0, std::f64::consts::TAU);
        let a1 = circle_integral(f, loc, rad, 64)? / scale;
        let a2 = circle_integral(|s| Ok(u2(p, t, s)? * (s - loc)), loc, rad, 64)? / scale;
        if members.len() == 1 {
            out.push(SeriesPole::Simple { location: loc, residue: a1 });
        } else {
            out.push(SeriesPole::Double { location: loc, a1, a2 });
        }
    }
    Ok(out)
}

/// Small-x law of v: the residue `A₀` at `σ₂+γ` (and `B₀` at `σ₁+γ` when simple);
/// for θ > 1, `v ~ x^{-1-γ}(h₁cos(ζ log x) + h₂ sin(ζ log x))` with `h₁ = 2Re A₀`,
/// `h₂ = 2Im A₀`, `ζ = Im σ₂`.
pub fn small_x_law(p: &Params, t: f64) -> Result<AsymptoticLaw> {
    check(p, t)?;
    let a0 = u2_residue(p, t, 2, 0)?;
    let mut law =
        AsymptoticLaw::new(LawKind::SmallXOscillation).with("A0", a0).with("exponent", -(p.sigma2 + cr(p.gamma)));
    if p.sigma2.im != 0.0 {
        law = law.with("h1", cr(2.0 * a0.re)).with("h2", cr(2.0 * a0.im)).with("zeta", cr(p.sigma2.im));
    } else if let Ok(b0) = u2_residue(p, t, 1, 0) {
        law = law.with("B0", b0);
    }
    Ok(law)
}
