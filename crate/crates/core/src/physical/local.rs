//! The solution before blow-up, its limit profile, moment asymptotics and the
//! stitched global solution.

use serde::Serialize;

use super::law::{AsymptoticLaw, LawKind};
use super::omega::OmegaDensity;
use crate::error::{Error, Result};
use crate::mellin::{omega, omega_limit};
use crate::quad::solve_square;
use crate::scalar::{cr, Cx};
use crate::special::{gamma_ratio, hyp2f1};
use crate::{Params, C64};

/// A Dirac mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// The transported initial atom: location `(1-γt)^{-1/γ}`, weight `(1-γt)^{1/γ}`.
///
/// Defined whenever `1 - γt > 0`, for either sign of γ.
pub fn transported_atom(p: &Params, t: f64) -> Result<Atom> {
    let h = 1.0 - p.gamma * t;
    if !(h > 0.0) || !(t >= 0.0) {
        return Err(Error::Domain(format!("atom needs t >= 0 and 1 - gamma t > 0, got t = {t}")));
    }
    let weight = h.powf(1.0 / p.gamma);
    Ok(Atom { location: 1.0 / weight, weight })
}

/// Value of u(t,·) at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalValue {
    pub atom: Atom,
    /// Whether `x` is the atom location (to relative 1e-12).
    pub at_atom: bool,
    pub density: f64,
}

fn check_local(p: &Params, t: f64) -> Result<()> {
    if p.gamma <= 0.0 {
        return Err(Error::Domain(format!("u needs gamma > 0, got {}", p.gamma)));
    }
    if !(t >= 0.0) || !(p.gamma * t < 1.0) {
        return Err(Error::Domain(format!("u needs 0 <= gamma t < 1, got gamma t = {}", p.gamma * t)));
    }
    Ok(())
}

/// u(t,x) for `0 <= γt < 1`: the atom and the density
/// `θ(1-γt)^{2/γ} t F(1+σ₁/γ, 1+σ₂/γ; 2; γt(1+(γt-1)x^γ))` below the atom, 0 above.
pub fn u_local(p: &Params, t: f64, x: f64) -> Result<LocalValue> {
    check_local(p, t)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite and >= 0, got {x}")));
    }
    let atom = transported_atom(p, t)?;
    let at_atom = (x - atom.location).abs() <= 1e-12 * atom.location;
    let density = if x > atom.location && !at_atom { 0.0 } else { u_density_unchecked(p, t, x)? };
    Ok(LocalValue { atom, at_atom, density })
}

/// Density part of [`u_local`] on the closed support `[0, (1-γt)^{-1/γ}]`.
pub(crate) fn u_density_unchecked(p: &Params, t: f64, x: f64) -> Result<f64> {
    let g = p.gamma;
    let gt = g * t;
    if t == 0.0 {
        return Ok(0.0);
    }
    // z decreases from γt at x = 0 to 0 at the cutoff; clamp rounding below 0
    let z = (gt * (1.0 + (gt - 1.0) * x.powf(g))).max(0.0);
    let pre = p.theta * (1.0 - gt).powf(2.0 / g) * t;
    let one = cr(1.0);
    let f = hyp2f1(one + p.sigma1 / g, one + p.sigma2 / g, cr(2.0), cr(z))?;
    Ok(pre * f.re)
}

/// `γΓ(2/γ) / (Γ(σ₁/γ)Γ(σ₂/γ))`, the limit-profile constant.
pub fn limit_constant(p: &Params) -> Result<f64> {
    if p.gamma <= 0.0 {
        return Err(Error::Domain(format!("limit profile needs gamma > 0, got {}", p.gamma)));
    }
    let g = p.gamma;
    Ok(g * gamma_ratio(&[cr(2.0 / g)], &[p.sigma1 / g, p.sigma2 / g])?.re)
}

/// Density at `γt = 1`: `γΓ(2/γ)/(Γ(σ₁/γ)Γ(σ₂/γ)) (1+x^γ)^{-2/γ}`.
pub fn limit_profile(p: &Params, x: f64) -> Result<f64> {
    let k = limit_constant(p)?;
    Ok(k * (1.0 + x.powf(p.gamma)).powf(-2.0 / p.gamma))
}

/// The limit profile as an [`AsymptoticLaw`].
pub fn limit_law(p: &Params) -> Result<AsymptoticLaw> {
    Ok(AsymptoticLaw::new(LawKind::LimitProfile).with("constant", cr(limit_constant(p)?)))
}

/// Growth regime of the moment of order `r` as `γt → 1⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MomentRegime {
    /// `r > 1`: grows like `(1-γt)^{-(r-1)/γ}`.
    Blowup,
    /// `r = 1`: grows like `-log(1-γt)`.
    Logarithmic,
    /// `0 < r < 1`: bounded.
    Bounded,
}

/// One rung of the moment ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSample {
    pub t: f64,
    /// `1 - γt`.
    pub h: f64,
    /// `∫ x^r u(t,x) dx = Ω(t, r+1)`.
    pub moment: f64,
    /// Moment times the regime's normalisation.
    pub scaled: f64,
}

/// Scaled moments along a ladder, their extrapolated limit and the closed-form target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentAsymptotics {
    pub r: f64,
    pub regime: MomentRegime,
    pub samples: Vec<MomentSample>,
    pub limit: f64,
    pub target: f64,
    pub law: AsymptoticLaw,
}

impl MomentAsymptotics {
    pub fn relative_error(&self) -> f64 {
        ((self.limit - self.target) / self.target).abs()
    }
}

/// Times with `1 - γt = 2^{-k}`, `k = 1..=levels`.
pub fn default_ladder(p: &Params, levels: u32) -> Vec<f64> {
    (1..=levels).map(|k| (1.0 - 0.5f64.powi(k as i32)) / p.gamma).collect()
}

/// Closed-form limit of the scaled moment of order `r`.
pub fn moment_target(p: &Params, r: f64) -> Result<(MomentRegime, f64)> {
    let g = p.gamma;
    if g <= 0.0 || !(r > 0.0) {
        return Err(Error::Domain(format!("moment asymptotics need gamma > 0 and r > 0, got gamma = {g}, r = {r}")));
    }
    let rc = cr(r);
    if (r - 1.0).abs() < 1e-12 {
        let v = gamma_ratio(&[cr(2.0 / g)], &[p.sigma1 / g, p.sigma2 / g])?;
        Ok((MomentRegime::Logarithmic, v.re))
    } else if r > 1.0 {
        let v = gamma_ratio(
            &[cr((r + 1.0) / g), cr((r - 1.0) / g)],
            &[(rc + cr(1.0) - p.sigma1) / g, (rc + cr(1.0) - p.sigma2) / g],
        )?;
        Ok((MomentRegime::Blowup, v.re))
    } else {
        Ok((MomentRegime::Bounded, omega_limit(p, cr(r + 1.0))?.re))
    }
}

#[derive(Debug, Clone, Copy)]
enum Term {
    Pow(f64),
    PowLog(f64),
}

impl Term {
    fn eval(self, h: f64) -> f64 {
        match self {
            Term::Pow(e) => h.powf(e),
            Term::PowLog(e) => h.powf(e) * h.ln(),
        }
    }

    fn order(self) -> f64 {
        match self {
            Term::Pow(e) => e,
            // h^e log h dominates h^e
            Term::PowLog(e) => e - 1e-6,
        }
    }
}

/// Correction terms of `L + Σ a_k h^k + h^δ Σ b_k h^k` ordered by size; integer δ
/// turns `h^{δ+k}` into `h^{δ+k} log h`.
fn correction_terms(delta: f64, count: usize) -> Vec<Term> {
    let n = delta.round();
    let integer = (delta - n).abs() < 1e-9;
    let mut terms: Vec<Term> = (1..=count).map(|k| Term::Pow(k as f64)).collect();
    for k in 0..count {
        let e = delta + k as f64;
        terms.push(if integer { Term::PowLog(n + k as f64) } else { Term::Pow(e) });
    }
    terms.sort_by(|a, b| a.order().total_cmp(&b.order()));
    terms.truncate(count);
    terms
}

/// Scaled moments `∫x^r u` along `t_ladder` (increasing t, `γt < 1`) and their
/// limit, extrapolated through the last (at most five) rungs.
pub fn moment_asymptotics(p: &Params, r: f64, t_ladder: &[f64]) -> Result<MomentAsymptotics> {
    let (regime, target) = moment_target(p, r)?;
    let g = p.gamma;
    let delta = (r - 1.0) / g;
    let mut samples = Vec::with_capacity(t_ladder.len());
    for &t in t_ladder {
        check_local(p, t)?;
        let h = 1.0 - g * t;
        let moment = omega(p, t, cr(r + 1.0))?.re;
        let scaled = match regime {
            MomentRegime::Blowup => moment * h.powf(delta),
            MomentRegime::Logarithmic => moment / (-h.ln()),
            MomentRegime::Bounded => moment,
        };
        samples.push(MomentSample { t, h, moment, scaled });
    }
    let n = samples.len().min(5);
    if n < 2 {
        return Err(Error::InvalidParameter("moment ladder needs at least two times".into()));
    }
    let tail = &samples[samples.len() - n..];
    let limit = match regime {
        MomentRegime::Logarithmic => {
            // Ω(t,2) = -L log h + c₀ + c₁ h log h + c₂ h + …
            let basis = [Term::PowLog(0.0), Term::Pow(0.0), Term::PowLog(1.0), Term::Pow(1.0), Term::PowLog(2.0)];
            let rows: Vec<Vec<f64>> = tail.iter().map(|s| basis[..n].iter().map(|b| b.eval(s.h)).collect()).collect();
            let rhs: Vec<f64> = tail.iter().map(|s| s.moment).collect();
            -solve_square(rows, rhs)?[0]
        }
        _ => {
            let terms = correction_terms(delta.abs(), n - 1);
            let rows: Vec<Vec<f64>> =
                tail.iter().map(|s| std::iter::once(1.0).chain(terms.iter().map(|b| b.eval(s.h))).collect()).collect();
            let rhs: Vec<f64> = tail.iter().map(|s| s.scaled).collect();
            solve_square(rows, rhs)?[0]
        }
    };
    let kind = match regime {
        MomentRegime::Blowup => LawKind::MomentBlowup,
        MomentRegime::Logarithmic => LawKind::LogMoment,
        MomentRegime::Bounded => LawKind::SubcriticalMoment,
    };
    let law = AsymptoticLaw::new(kind).with("target", cr(target)).with("order", cr(r));
    Ok(MomentAsymptotics { r, regime, samples, limit, target, law })
}

/// Which representation [`global_w`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `γt < 1`: atom plus hypergeometric density.
    Local,
    /// `γt = 1`: limit profile.
    Junction,
    /// `γt > 1`: ω.
    Extended,
}

/// Value of the global solution w at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GlobalValue {
    pub branch: Branch,
    pub density: f64,
    pub atom: Option<Atom>,
}

/// Relative window around `γt = 1` treated as the junction.
pub const JUNCTION_WINDOW: f64 = 1e-12;

/// w(t,x): u before `1/γ`, the limit profile at `1/γ`, ω after.
pub fn global_w(p: &Params, t: f64, x: f64) -> Result<GlobalValue> {
    if p.gamma <= 0.0 {
        return Err(Error::Domain(format!("w needs gamma > 0, got {}", p.gamma)));
    }
    let gt = p.gamma * t;
    if (gt - 1.0).abs() <= JUNCTION_WINDOW {
        return Ok(GlobalValue { branch: Branch::Junction, density: limit_profile(p, x)?, atom: None });
    }
    if gt < 1.0 {
        let v = u_local(p, t, x)?;
        return Ok(GlobalValue { branch: Branch::Local, density: v.density, atom: Some(v.atom) });
    }
    let w = OmegaDensity::new(p, t)?;
    Ok(GlobalValue { branch: Branch::Extended, density: w.eval(x)?, atom: None })
}

/// Complex moment `ℳ_u(t,s)` from the closed form, for conservation checks at `s = σ_ℓ`.
pub fn closed_moment(p: &Params, t: f64, s: C64) -> Result<Cx<f64>> {
    check_local(p, t)?;
    omega(p, t, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn params(g: f64, th: f64) -> Params {
        Params::new(g, th).unwrap()
    }

    #[test]
    fn atom_positions() {
        let p = params(1.0, 0.75);
        let v = u_local(&p, 0.0, 1.0).unwrap();
        assert_eq!(v.atom, Atom { location: 1.0, weight: 1.0 });
        assert!(v.at_atom);
        assert_eq!(v.density, 0.0);
        let v = u_local(&p, 0.5, 1.0).unwrap();
        assert_relative_eq!(v.atom.location, 2.0, max_relative = 1e-15);
        assert_relative_eq!(v.atom.weight, 0.5, max_relative = 1e-15);
        assert_eq!(u_local(&p, 0.5, 2.5).unwrap().density, 0.0);
    }

    #[test]
    fn density_at_origin() {
        let p = params(1.0, 2.0);
        let f = hyp2f1(cr(1.0) + p.sigma1, cr(1.0) + p.sigma2, cr(2.0), cr(0.5)).unwrap();
        let d = u_local(&p, 0.5, 0.0).unwrap().density;
        assert_relative_eq!(d, 2.0 * 0.25 * 0.5 * f.re, max_relative = 1e-14);
        assert!(f.im.abs() < 1e-14);
    }

    #[test]
    fn density_jump_at_atom() {
        // the density tends to θt(1-γt)^{2/γ} at the cutoff
        let p = params(1.5, 0.6);
        let t = 0.3;
        let x = transported_atom(&p, t).unwrap().location;
        let d = u_local(&p, t, x * (1.0 - 1e-14)).unwrap().density;
        assert_relative_eq!(d, 0.6 * t * (1.0 - 1.5 * t).powf(2.0 / 1.5), max_relative = 1e-10);
    }

    #[test]
    fn limit_profile_examples() {
        assert_relative_eq!(limit_profile(&params(2.0, 1.0), 0.0).unwrap(), 2.0 / PI, max_relative = 1e-13);
        assert_relative_eq!(limit_profile(&params(1.0, 2.0), 0.0).unwrap(), PI.sinh() / PI, max_relative = 1e-13);
        let p = params(1.0, 0.75);
        let k = limit_constant(&p).unwrap();
        let x = 1e8;
        assert_relative_eq!(limit_profile(&p, x).unwrap() * x * x, k, max_relative = 1e-7);
    }

    #[test]
    fn moment_targets() {
        let p = params(1.0, 0.75);
        assert_relative_eq!(moment_target(&p, 2.0).unwrap().1, 16.0 / (3.0 * PI), max_relative = 1e-13);
        assert_relative_eq!(moment_target(&p, 0.5).unwrap().1, 1.0, max_relative = 1e-13);
        let q = params(1.0, 2.0);
        assert_relative_eq!(moment_target(&q, 1.0).unwrap().1, PI.sinh() / PI, max_relative = 1e-13);
    }

    #[test]
    fn conserved_moment_is_constant() {
        let p = params(1.0, 0.75);
        for &t in &default_ladder(&p, 9) {
            assert!((closed_moment(&p, t, p.sigma1).unwrap() - cr(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn moment_limits_extrapolate() {
        let p = params(1.0, 0.75);
        let ladder = default_ladder(&p, 9);
        for r in [2.0, 0.5, 1.0, 1.7] {
            let m = moment_asymptotics(&p, r, &ladder).unwrap();
            assert!(m.relative_error() < 1e-3, "r={r}: {} vs {}", m.limit, m.target);
        }
    }

    #[test]
    fn global_dispatch() {
        let p = params(1.0, 0.75);
        assert_eq!(global_w(&p, 0.5, 1.0).unwrap().branch, Branch::Local);
        assert_eq!(global_w(&p, 1.0, 1.0).unwrap().branch, Branch::Junction);
        assert_eq!(global_w(&p, 1.0, 1.0).unwrap().density, limit_profile(&p, 1.0).unwrap());
        assert_eq!(global_w(&p, 2.0, 3.0).unwrap().branch, Branch::Extended);
    }
}
