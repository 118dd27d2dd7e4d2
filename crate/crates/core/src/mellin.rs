//! Mellin-domain solutions of `∂W/∂t (t,s) = Φ(s) W(t, s+γ)`.
//!
//! * [`omega`]: the solution with `W(0,s) = 1` on `0 <= γt < 1` (either sign of γ).
//! * [`u_closed`], [`u_real`]: its continuation past the blow-up time, `γ > 0`, `γt > 1`.
//! * [`omega1`], [`omega2`], [`u2`]: the pieces of the `γ < 0` construction and
//!   the conjugate-symmetric solution built from them.
//! * [`series_oracle`]: the formal power series in `t`, used as ground truth.
//!
//! Complex powers of positive reals use the principal logarithm. For `γ < 0`,
//! `(-γt)^{-s/γ}` has the positive base `|γ|t`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::scalar::{c, ci, cr, lit, pow_pos, Cx, Real};
use crate::special::{cot_pi, gamma_ratio, hyp2f1, hyp2f1_reg, ln_gamma_ratio, rgamma, EPS_POLE};

/// Which Mellin-domain object a [`MellinSolution`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolutionKind {
    Omega,
    U,
    U2,
    Omega1,
    Omega2,
}

/// Interval of admissible times and the strip where the transform is a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Validity {
    pub t_min: f64,
    pub t_max: f64,
    pub t_min_open: bool,
    /// Lower bound on `Re s` for the inverse transform to be a measure, if any.
    pub strip_re_min: Option<f64>,
}

/// A closed-form solution bound to parameters and a time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinSolution<T: Real> {
    pub kind: SolutionKind,
    pub params: ModelParams<T>,
    pub t: T,
}

/// A pole with its residue when a closed form is available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole<T: Real> {
    pub location: Cx<T>,
    pub residue: Option<Cx<T>>,
    /// Number of coincident lattice points merged into this entry.
    pub multiplicity: usize,
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn check_lattice<T: Real>(s: Cx<T>, gamma: T) -> Result<()> {
    // Ω has poles where s/γ is a non-positive integer
    let w = s / gamma;
    if w.re <= lit(0.5) {
        let n = w.re.round().min(T::zero());
        let d = (w - cr(n)).norm();
        if d < lit(EPS_POLE) {
            return Err(Error::PoleProximity {
                arg: format!("s = {s}"),
                pole: format!("{}", n * gamma),
                dist: (d * gamma.abs()).to_f64_lossy(),
            });
        }
    }
    Ok(())
}

fn check_short_time<T: Real>(p: &ModelParams<T>, t: T) -> Result<()> {
    let gt = p.gamma * t;
    if !(t >= T::zero()) || !(gt.abs() < T::one()) {
        return Err(domain(format!("need 0 <= t and |gamma t| < 1, got gamma = {}, t = {t}", p.gamma)));
    }
    if p.gamma > T::zero() && gt < T::zero() {
        return Err(domain(format!("negative time t = {t}")));
    }
    Ok(())
}

/// Ω(t,s) = (1-γt)^{(2-s)/γ} F(σ₁/γ, σ₂/γ; s/γ; γt).
pub fn omega<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    check_short_time(p, t)?;
    check_lattice(s, p.gamma)?;
    omega_factored(p, t, s)
}

fn omega_factored<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    let g = p.gamma;
    let one = T::one();
    let pre = pow_pos(one - g * t, (cr(lit::<T>(2.0)) - s) / g);
    Ok(pre * hyp2f1(p.sigma1 / g, p.sigma2 / g, s / g, cr(g * t))?)
}

/// Both closed forms of Ω: `F((s-σ₁)/γ, (s-σ₂)/γ; s/γ; γt)` and the factored one.
pub fn omega_forms<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    check_short_time(p, t)?;
    check_lattice(s, p.gamma)?;
    let g = p.gamma;
    let direct = hyp2f1((s - p.sigma1) / g, (s - p.sigma2) / g, s / g, cr(g * t))?;
    Ok((direct, omega_factored(p, t, s)?))
}

/// Ω(1/γ, s) = Γ(s/γ)Γ((2-s)/γ) / (Γ(σ₁/γ)Γ(σ₂/γ)), `Re s < 2`.
pub fn omega_limit<T: Real>(p: &ModelParams<T>, s: Cx<T>) -> Result<Cx<T>> {
    let g = p.gamma;
    if g <= T::zero() {
        return Err(domain("omega_limit needs gamma > 0".into()));
    }
    if s.re >= lit(2.0) {
        return Err(domain(format!("omega_limit needs Re s < 2, got {s}")));
    }
    gamma_ratio(&[s / g, (cr(lit::<T>(2.0)) - s) / g], &[p.sigma1 / g, p.sigma2 / g])
}

fn check_long_time<T: Real>(p: &ModelParams<T>, t: T) -> Result<()> {
    if p.gamma <= T::zero() || !(p.gamma * t > T::one()) {
        return Err(domain(format!("U needs gamma > 0 and gamma t > 1, got gamma = {}, t = {t}", p.gamma)));
    }
    Ok(())
}

/// U(t,s) as printed, for `γt > 1`:
/// `(γt)^{(σ₁-s)/γ} Γ(s/γ)Γ(1-(s-σ₂)/γ) / (Γ(σ₁/γ)Γ(1-(σ₁-σ₂)/γ)) · F(1-σ₁/γ, (s-σ₁)/γ; 1+(σ₂-σ₁)/γ; 1/(γt))`.
///
/// Not conjugate-symmetric when θ > 1; see [`u_real`].
pub fn u_closed<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    check_long_time(p, t)?;
    u_with_roots(p.gamma, p.sigma1, p.sigma2, t, s)
}

fn u_with_roots<T: Real>(g: T, s1: Cx<T>, s2: Cx<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    let one = cr(T::one());
    let gt = g * t;
    let pre = pow_pos(gt, (s1 - s) / g);
    let ratio = gamma_ratio(&[s / g, one - (s - s2) / g], &[s1 / g, one - (s1 - s2) / g])?;
    let f = hyp2f1(one - s1 / g, (s - s1) / g, one + (s2 - s1) / g, cr(T::one() / gt))?;
    Ok(pre * ratio * f)
}

/// Conjugate-symmetric continuation `(U(s) + conj U(conj s)) / 2`; equals U when θ <= 1.
pub fn u_real<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    check_long_time(p, t)?;
    let a = u_with_roots(p.gamma, p.sigma1, p.sigma2, t, s)?;
    if p.sigma2.im == T::zero() {
        return Ok(a);
    }
    let b = u_with_roots(p.gamma, p.sigma1, p.sigma2, t, s.conj())?.conj();
    Ok((a + b) * lit::<T>(0.5))
}

fn check_negative<T: Real>(p: &ModelParams<T>, t: T) -> Result<()> {
    let g = p.gamma;
    if g >= T::zero() || !(t > T::zero()) || !(-g * t < T::one()) {
        return Err(domain(format!("need gamma < 0 and 0 < -gamma t < 1, got gamma = {g}, t = {t}")));
    }
    Ok(())
}

/// R(t,s) = (|γ|t)^{-s/γ} γt Γ(1-(s-σ₁)/γ)Γ(1-(s-σ₂)/γ) / (Γ(σ₁/γ)Γ(σ₂/γ)Γ(1-s/γ))
/// · F(1-σ₁/γ, 1-σ₂/γ; 2-s/γ; γt)/Γ(2-s/γ).
///
/// Solves the functional equation with `R(0,s) = 0`.
pub fn injection<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    let (log, factor) = injection_log(p, t, s)?;
    Ok(log.exp() * factor)
}

/// [`injection`] as `exp(log) · factor`; the split keeps `x^{-s} R(t,s)` finite
/// far out on a contour where both factors overflow separately.
pub fn injection_log<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    check_negative(p, t)?;
    let g = p.gamma;
    let one = cr(T::one());
    let two = cr(lit::<T>(2.0));
    let c3 = two - s / g;
    let num = [one - (s - p.sigma1) / g, one - (s - p.sigma2) / g];
    let near_pole = crate::special::gamma::nearest_pole(c3).is_some_and(|(_, d)| d < lit(1e-3));
    let (lr, fr, f) = if near_pole {
        let (lr, fr) = ln_gamma_ratio(&num, &[p.sigma1 / g, p.sigma2 / g, one - s / g])?;
        (lr, fr, hyp2f1_reg(one - p.sigma1 / g, one - p.sigma2 / g, c3, cr(g * t))?)
    } else {
        let (lr, fr) = ln_gamma_ratio(&num, &[p.sigma1 / g, p.sigma2 / g, one - s / g, c3])?;
        (lr, fr, hyp2f1(one - p.sigma1 / g, one - p.sigma2 / g, c3, cr(g * t))?)
    };
    let log = -s / g * (-g * t).ln() + lr;
    Ok((log, fr * f * (g * t)))
}

/// Ω₁(t,s) = R(t,s) / (e^{2iπs/γ} - 1).
pub fn omega1<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    check_lattice(s, p.gamma)?;
    let r = injection(p, t, s)?;
    let e = (ci::<T>() * s * (T::TAU() / p.gamma)).exp() - cr(T::one());
    Ok(r / e)
}

/// Ω₂(t,s) = (i/2π) Ω(t,s).
pub fn omega2<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    check_negative(p, t)?;
    Ok(ci::<T>() / T::TAU() * omega(p, t, s)?)
}

/// Combination reproduced by the tilted contour integral: 2πi(Ω₁ + Ω₂).
///
/// Regular at `s = -mγ`, where it is evaluated as a circle mean.
pub fn u2_contour_form<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    check_negative(p, t)?;
    let f = |z: Cx<T>| -> Result<Cx<T>> { Ok((omega1(p, t, z)? + omega2(p, t, z)?) * ci::<T>() * T::TAU()) };
    if near_lattice(s, p.gamma) {
        return circle_mean(f, s, p.gamma.abs() * lit(1e-2));
    }
    f(s)
}

/// Complex solution with `W(0,s) = 1`: Ω - 2πiΩ₁ = -2πi(Ω₁ + Ω₂).
pub fn u2_unit<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    Ok(-u2_contour_form(p, t, s)?)
}

/// Conjugate-symmetric solution for `γ < 0`: Ω - π cot(πs/γ) R.
///
/// Regular at `s = -mγ`; `U₂(0,s) = 1`; its inverse transform is the real part
/// of the inverse transform of [`u2_unit`].
pub fn u2<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>) -> Result<Cx<T>> {
    check_negative(p, t)?;
    let g = p.gamma;
    if near_lattice(s, g) {
        // the poles of Ω and of cot cancel
        return circle_mean(
            |z| {
                let w = z / g;
                Ok(omega(p, t, z)? - cot_pi(w) * injection(p, t, z)? * T::PI())
            },
            s,
            g.abs() * lit(1e-2),
        );
    }
    let w = s / g;
    let r = injection(p, t, s)?;
    let cot = cot_pi(w);
    Ok(omega(p, t, s)? - cot * r * T::PI())
}

fn near_lattice<T: Real>(s: Cx<T>, g: T) -> bool {
    let w = s / g;
    (w - cr(w.re.round())).norm() < lit(1e-3) && w.re.round() <= T::zero()
}

/// Mean over a circle around `s`; exact for functions regular inside it.
fn circle_mean<T: Real, F>(f: F, s: Cx<T>, rad: T) -> Result<Cx<T>>
where
    F: Fn(Cx<T>) -> Result<Cx<T>>,
{
    let n = 32;
    let mut acc = cr(T::zero());
    for k in 0..n {
        let phi = T::TAU() * T::from_usize(k).unwrap() / T::from_usize(n).unwrap() + lit(0.1);
        acc += f(s + c(phi.cos(), phi.sin()) * rad)?;
    }
    Ok(acc / T::from_usize(n).unwrap())
}

impl<T: Real> MellinSolution<T> {
    pub fn new(kind: SolutionKind, params: ModelParams<T>, t: T) -> Self {
        Self { kind, params, t }
    }

    pub fn eval(&self, s: Cx<T>) -> Result<Cx<T>> {
        let (p, t) = (&self.params, self.t);
        match self.kind {
            SolutionKind::Omega => omega(p, t, s),
            SolutionKind::U => u_closed(p, t, s),
            SolutionKind::U2 => u2(p, t, s),
            SolutionKind::Omega1 => omega1(p, t, s),
            SolutionKind::Omega2 => omega2(p, t, s),
        }
    }

    /// Same object at another time (used by finite differences in t).
    pub fn at(&self, t: T) -> Self {
        Self { t, ..*self }
    }

    pub fn validity(&self) -> Validity {
        let g = self.params.gamma.to_f64_lossy();
        let s2 = self.params.sigma2.re.to_f64_lossy();
        match self.kind {
            SolutionKind::Omega => Validity { t_min: 0.0, t_max: 1.0 / g.abs(), t_min_open: false, strip_re_min: None },
            SolutionKind::U => {
                Validity { t_min: 1.0 / g, t_max: f64::INFINITY, t_min_open: true, strip_re_min: Some(0.0) }
            }
            SolutionKind::U2 | SolutionKind::Omega1 | SolutionKind::Omega2 => {
                Validity { t_min: 0.0, t_max: -1.0 / g, t_min_open: true, strip_re_min: Some((1.0 + g).max(s2 + g)) }
            }
        }
    }

    /// Poles with `re_min < Re s < re_max`.
    pub fn pole_set(&self, re_min: T, re_max: T) -> Vec<Pole<T>> {
        pole_set(self, re_min, re_max)
    }
}

/// Relative functional-equation residual
/// `|(W(t+h,s)-W(t-h,s))/(2h) - Φ(s)W(t,s+γ)| / max(1,|W(t,s)|)`.
pub fn fe_residual<T: Real>(sol: &MellinSolution<T>, s: Cx<T>, h: T) -> Result<T> {
    let p = sol.params;
    let dt = (sol.at(sol.t + h).eval(s)? - sol.at(sol.t - h).eval(s)?) / (h + h);
    let rhs = p.phi(s)? * sol.eval(s + cr(p.gamma))?;
    let w = sol.eval(s)?;
    Ok((dt - rhs).norm() / w.norm().max(T::one()))
}

/// Result of the power-series oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T: Real> {
    pub value: Cx<T>,
    /// Geometric bound on the omitted tail.
    pub tail: T,
    pub terms: usize,
}

/// Default and hard cap for the number of series terms.
pub const SERIES_DEFAULT_TERMS: usize = 80;
pub const SERIES_MAX_TERMS: usize = 500;

/// `Σ tⁿ/n! Π_{j<n} Φ(s+jγ)`, the formal power-series solution with `W(0,s)=1`.
pub fn series_oracle<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>, n_terms: usize) -> Result<SeriesValue<T>> {
    let g = p.gamma;
    if !((g * t).abs() < T::one()) {
        return Err(domain(format!("series oracle needs |gamma t| < 1, got {}", (g * t).to_f64_lossy())));
    }
    let cap = n_terms.min(SERIES_MAX_TERMS);
    let one = cr(T::one());
    let mut term = one;
    // compensated summation keeps the oracle independent of summation order effects
    let mut sum = one;
    let mut comp = cr(T::zero());
    let eps = T::epsilon() * lit(0.5);
    let mut small = 0;
    for n in 1..=cap {
        let arg = s + cr(g * T::from_usize(n - 1).unwrap());
        term = term * p.phi(arg)? * t / T::from_usize(n).unwrap();
        let y = term - comp;
        let tmp = sum + y;
        comp = (tmp - sum) - y;
        sum = tmp;
        if term.norm() <= eps * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(SeriesValue { value: sum, tail: term.norm(), terms: n });
            }
        } else {
            small = 0;
        }
    }
    let ratio = (g * t).abs();
    let tail = term.norm() * ratio / (T::one() - ratio);
    if tail > lit::<T>(1e-12) * sum.norm().max(T::one()) {
        return Err(Error::NonConvergence { what: format!("series oracle at t = {t}, s = {s}"), terms: cap });
    }
    Ok(SeriesValue { value: sum, tail, terms: cap })
}

/// A residue stored as `exp(log) * factor`, so that series terms with huge
/// coefficients and tiny powers can be combined without overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogResidue<T: Real> {
    pub location: Cx<T>,
    pub log: Cx<T>,
    pub factor: Cx<T>,
}

impl<T: Real> LogResidue<T> {
    pub fn value(&self) -> Cx<T> {
        self.log.exp() * self.factor
    }

    /// Residue of `x^{-s} W(s)`: `value · x^{-location}`, given `ln x`.
    pub fn term(&self, ln_x: T) -> Cx<T> {
        (self.log - self.location * ln_x).exp() * self.factor
    }
}

/// Residue of U(t,·) at `s = -mγ`.
pub fn u_residue_left<T: Real>(p: &ModelParams<T>, t: T, m: usize) -> Result<Cx<T>> {
    Ok(u_residue_left_log(p, t, m)?.value())
}

/// [`u_residue_left`] in log form.
pub fn u_residue_left_log<T: Real>(p: &ModelParams<T>, t: T, m: usize) -> Result<LogResidue<T>> {
    check_long_time(p, t)?;
    let g = p.gamma;
    let one = cr(T::one());
    let mm = T::from_usize(m).unwrap();
    let sp = cr(-mm * g);
    let sign = if m.is_multiple_of(2) { T::one() } else { -T::one() };
    let (lr, fr) = ln_gamma_ratio(
        &[one - (sp - p.sigma2) / g],
        &[p.sigma1 / g, one - (p.sigma1 - p.sigma2) / g, cr(mm + T::one())],
    )?;
    let f = hyp2f1(one - p.sigma1 / g, (sp - p.sigma1) / g, one + (p.sigma2 - p.sigma1) / g, cr(T::one() / (g * t)))?;
    let log = (p.sigma1 - sp) / g * (g * t).ln() + lr + f.ln();
    Ok(LogResidue { location: sp, log, factor: fr * (g * sign) })
}

/// Residue of U(t,·) at `s = σ₂ + (m+1)γ`.
pub fn u_residue_right<T: Real>(p: &ModelParams<T>, t: T, m: usize) -> Result<Cx<T>> {
    Ok(u_residue_right_log(p, t, m)?.value())
}

/// [`u_residue_right`] in log form.
pub fn u_residue_right_log<T: Real>(p: &ModelParams<T>, t: T, m: usize) -> Result<LogResidue<T>> {
    check_long_time(p, t)?;
    u_residue_right_roots(p.gamma, p.sigma1, p.sigma2, t, m)
}

fn u_residue_right_roots<T: Real>(g: T, s1: Cx<T>, s2: Cx<T>, t: T, m: usize) -> Result<LogResidue<T>> {
    let one = cr(T::one());
    let mm = T::from_usize(m).unwrap();
    let sp = s2 + cr((mm + T::one()) * g);
    let sign = if m.is_multiple_of(2) { T::one() } else { -T::one() };
    let (lr, fr) = ln_gamma_ratio(&[sp / g], &[s1 / g, one - (s1 - s2) / g, cr(mm + T::one())])?;
    let f = hyp2f1(one - s1 / g, (sp - s1) / g, one + (s2 - s1) / g, cr(T::one() / (g * t)))?;
    let log = (s1 - sp) / g * (g * t).ln() + lr + f.ln();
    Ok(LogResidue { location: sp, log, factor: fr * (-g * sign) })
}

/// Residue of [`u_real`] at `σ_ℓ + (m+1)γ` (`ℓ = 1` only exists when θ > 1).
pub fn u_real_residue_right<T: Real>(p: &ModelParams<T>, t: T, ell: usize, m: usize) -> Result<Cx<T>> {
    check_long_time(p, t)?;
    let r = u_residue_right_roots(p.gamma, p.sigma1, p.sigma2, t, m)?.value();
    if p.sigma2.im == T::zero() {
        return if ell == 2 { Ok(r) } else { Err(domain("sigma_1 poles are absent when theta <= 1".into())) };
    }
    let half: T = lit(0.5);
    Ok(if ell == 2 { r * half } else { r.conj() * half })
}

/// Residue of R(t,·) at `σ_ℓ + (m+1)γ` (`γ < 0`).
pub fn injection_residue<T: Real>(p: &ModelParams<T>, t: T, ell: usize, m: usize) -> Result<Cx<T>> {
    check_negative(p, t)?;
    let g = p.gamma;
    let one = cr(T::one());
    let two = cr(lit::<T>(2.0));
    let (sl, so) = if ell == 1 { (p.sigma1, p.sigma2) } else { (p.sigma2, p.sigma1) };
    let mm = T::from_usize(m).unwrap();
    let sp = sl + cr((mm + T::one()) * g);
    let other = one - (sp - so) / g;
    if let Some((_, d)) = crate::special::gamma::nearest_pole(other) {
        if d < lit(1e-6) {
            return Err(Error::DegenerateConnection(format!(
                "pole families of sigma_1 and sigma_2 coincide at s = {sp} (double pole)"
            )));
        }
    }
    let sign = if m.is_multiple_of(2) { T::one() } else { -T::one() };
    let pre = pow_pos(-g * t, -sp / g) * (g * t) * (-g * sign) * rgamma(cr(mm + T::one()));
    let ratio = gamma_ratio(&[other], &[p.sigma1 / g, p.sigma2 / g, one - sp / g])?;
    let f = hyp2f1_reg(one - p.sigma1 / g, one - p.sigma2 / g, two - sp / g, cr(g * t))?;
    Ok(pre * ratio * f)
}

/// Residue of [`u2`] at `σ_ℓ + (m+1)γ`.
pub fn u2_residue<T: Real>(p: &ModelParams<T>, t: T, ell: usize, m: usize) -> Result<Cx<T>> {
    let g = p.gamma;
    let sl = if ell == 1 { p.sigma1 } else { p.sigma2 };
    let sp = sl + cr((T::from_usize(m).unwrap() + T::one()) * g);
    let w = sp / g;
    let cot = cot_pi(w);
    Ok(-cot * injection_residue(p, t, ell, m)? * T::PI())
}

fn push_pole<T: Real>(out: &mut Vec<Pole<T>>, loc: Cx<T>, residue: Option<Cx<T>>) {
    let tol: T = lit(1e-9);
    if let Some(q) = out.iter_mut().find(|q| (q.location - loc).norm() < tol) {
        q.multiplicity += 1;
        q.residue = None;
        return;
    }
    out.push(Pole { location: loc, residue, multiplicity: 1 });
}

/// Poles of `sol` inside the strip `re_min < Re s < re_max`, with residues where
/// closed forms exist. Coincident lattice points are merged (residue dropped).
pub fn pole_set<T: Real>(sol: &MellinSolution<T>, re_min: T, re_max: T) -> Vec<Pole<T>> {
    let p = sol.params;
    let g = p.gamma;
    let t = sol.t;
    let mut out = Vec::new();
    let inside = |z: Cx<T>| z.re > re_min && z.re < re_max;
    let span = ((re_max - re_min).abs() / g.abs()).to_usize().unwrap_or(0) + 2;
    let lim = span + ((re_max.abs() + re_min.abs() + lit(4.0)) / g.abs()).to_usize().unwrap_or(0);
    match sol.kind {
        SolutionKind::Omega | SolutionKind::Omega2 => {
            for m in 0..=lim {
                let z = cr(-g * T::from_usize(m).unwrap());
                if inside(z) {
                    push_pole(&mut out, z, None);
                }
            }
        }
        SolutionKind::U => {
            for m in 0..=lim {
                let z = cr(-g * T::from_usize(m).unwrap());
                if inside(z) {
                    push_pole(&mut out, z, u_residue_left(&p, t, m).ok());
                }
                let z = p.sigma2 + cr(g * T::from_usize(m + 1).unwrap());
                if inside(z) {
                    push_pole(&mut out, z, u_residue_right(&p, t, m).ok());
                }
            }
        }
        SolutionKind::U2 | SolutionKind::Omega1 => {
            for m in 0..=lim {
                for ell in [1usize, 2] {
                    let sl = if ell == 1 { p.sigma1 } else { p.sigma2 };
                    let z = sl + cr(g * T::from_usize(m + 1).unwrap());
                    if inside(z) {
                        let res = if sol.kind == SolutionKind::U2 {
                            u2_residue(&p, t, ell, m).ok()
                        } else {
                            injection_residue(&p, t, ell, m)
                                .ok()
                                .map(|r| r / ((ci::<T>() * z * (T::TAU() / g)).exp() - cr(T::one())))
                        };
                        push_pole(&mut out, z, res);
                    }
                }
                if sol.kind == SolutionKind::Omega1 {
                    let z = cr(-g * T::from_usize(m).unwrap());
                    if inside(z) {
                        push_pole(&mut out, z, None);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.location.re.partial_cmp(&b.location.re).unwrap().then(a.location.im.partial_cmp(&b.location.im).unwrap())
    });
    out
}
