//! Integration paths in the complex plane, the auxiliary functions V, Ṽ, V₂ and
//! the contour-integral representations of the Mellin-domain solutions.
//!
//! Every path is the graph `Re σ = g(Im σ)` traversed upwards. Poles that a
//! representation needs on one side of the path but that lie on the other are
//! handled by adding a small circle around them, so the path shape never
//! depends on `s`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::quad::{adaptive, circle_integral, semi_infinite, QuadResult, Tol};
use crate::scalar::{c, ci, cr, lit, Cx, Real};
use crate::special::ln_gamma_ratio;

/// Default truncation length for infinite path pieces.
pub const V_MAX: f64 = 1e4;

/// One straight piece `start + direction·u`, `0 <= u <= length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment<T: Real> {
    pub start: Cx<T>,
    /// Unit vector.
    pub direction: Cx<T>,
    /// `None` for an infinite ray.
    pub length: Option<T>,
    /// Traversed towards `start` (an incoming ray from infinity).
    pub inbound: bool,
}

/// Which side an infinite bend heads to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PathKind<T: Real> {
    VerticalLine(T),
    /// Vertical on `|Im σ| <= height`, then rays at 45° to `side`.
    Bent {
        sigma0: T,
        height: T,
        side: Side,
    },
    /// Vertical for `Im σ < 0`, `Re σ = σ₀ + tilt·Im σ` above.
    TiltedC {
        sigma0: T,
        tilt: T,
    },
}

/// A path made of straight segments, traversed from `Im = -∞` to `Im = +∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourPath<T: Real> {
    pub kind: PathKind<T>,
    pub segments: Vec<Segment<T>>,
}

impl<T: Real> ContourPath<T> {
    pub fn vertical(s0: T) -> Self {
        let start = cr(s0);
        Self {
            kind: PathKind::VerticalLine(s0),
            segments: vec![
                Segment { start, direction: c(T::zero(), -T::one()), length: None, inbound: true },
                Segment { start, direction: ci(), length: None, inbound: false },
            ],
        }
    }

    /// The contour 𝒞: vertical for `|Im σ| <= 1`, `Re σ -> -∞` beyond.
    pub fn bent_c(sigma0: T) -> Self {
        Self::bent(sigma0, T::one(), Side::Left)
    }

    pub fn bent(sigma0: T, height: T, side: Side) -> Self {
        let r = T::FRAC_1_SQRT_2();
        let dx = if side == Side::Left { -r } else { r };
        let lo = c(sigma0, -height);
        let hi = c(sigma0, height);
        Self {
            kind: PathKind::Bent { sigma0, height, side },
            segments: vec![
                Segment { start: lo, direction: c(dx, -r), length: None, inbound: true },
                Segment { start: lo, direction: ci(), length: Some(height + height), inbound: false },
                Segment { start: hi, direction: c(dx, r), length: None, inbound: false },
            ],
        }
    }

    /// The tilted contour; `tilt < 0` sends the upper half to `Re σ -> -∞`.
    pub fn tilted(sigma0: T, tilt: T) -> Self {
        let start = cr(sigma0);
        let n = (tilt * tilt + T::one()).sqrt();
        Self {
            kind: PathKind::TiltedC { sigma0, tilt },
            segments: vec![
                Segment { start, direction: c(T::zero(), -T::one()), length: None, inbound: true },
                Segment { start, direction: c(tilt / n, T::one() / n), length: None, inbound: false },
            ],
        }
    }

    /// `Re σ` of the path at height `Im σ = y`.
    pub fn re_at(&self, y: T) -> T {
        match self.kind {
            PathKind::VerticalLine(s0) => s0,
            PathKind::Bent { sigma0, height, side } => {
                let over = (y.abs() - height).max(T::zero());
                if side == Side::Left {
                    sigma0 - over
                } else {
                    sigma0 + over
                }
            }
            PathKind::TiltedC { sigma0, tilt } => {
                if y < T::zero() {
                    sigma0
                } else {
                    sigma0 + tilt * y
                }
            }
        }
    }

    /// Whether `z` lies strictly to the left of the (upward) path.
    pub fn is_left(&self, z: Cx<T>) -> bool {
        z.re < self.re_at(z.im)
    }

    /// Horizontal distance from `z` to the path, a cheap proximity measure.
    pub fn horizontal_gap(&self, z: Cx<T>) -> T {
        (z.re - self.re_at(z.im)).abs()
    }

    /// `∫ f(σ) dσ` along the path.
    pub fn integrate<F>(&self, mut f: F, tol: Tol<T>, u_max: T) -> Result<QuadResult<T>>
    where
        F: FnMut(Cx<T>) -> Result<Cx<T>>,
    {
        let mut total = cr(T::zero());
        let mut error = T::zero();
        let mut l1 = T::zero();
        let mut evals = 0;
        for seg in &self.segments {
            let mut g = |u: T| -> Result<Cx<T>> { Ok(f(seg.start + seg.direction * u)? * seg.direction) };
            let r = match seg.length {
                Some(len) => adaptive(&mut g, T::zero(), len, tol)?,
                None => semi_infinite(&mut g, T::zero(), T::one(), tol, u_max)?,
            };
            if seg.inbound {
                total -= r.value;
            } else {
                total += r.value;
            }
            error += r.error;
            l1 += r.l1;
            evals += r.evals;
        }
        Ok(QuadResult { value: total, error, l1, evals })
    }
}

/// The three auxiliary functions solving `V(s+γ) = -((s-σ₁)(s-σ₂)/s) V(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AuxKind {
    /// `γ^{s/γ} Γ((s-σ₁)/γ) / (Γ(s/γ) Γ(1-(s-σ₂)/γ))`.
    V,
    /// `(-γ)^{s/γ} Γ((s-σ₁)/γ) Γ((s-σ₂)/γ) / Γ(s/γ)`, with `log(-γ) = log γ - iπ` for γ > 0.
    Vtilde,
    /// `γ^{s/γ} Γ(1-s/γ) / (Γ(1-(s-σ₁)/γ) Γ(1-(s-σ₂)/γ))`, with `log γ = log|γ| + iπ` for γ < 0.
    V2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxV<T: Real> {
    pub kind: AuxKind,
    pub params: ModelParams<T>,
}

impl<T: Real> AuxV<T> {
    pub fn new(kind: AuxKind, params: ModelParams<T>) -> Self {
        Self { kind, params }
    }

    fn log_base(&self) -> Cx<T> {
        let g = self.params.gamma;
        let l = g.abs().ln();
        match self.kind {
            AuxKind::V | AuxKind::V2 => {
                if g > T::zero() {
                    cr(l)
                } else {
                    c(l, T::PI())
                }
            }
            AuxKind::Vtilde => {
                if g > T::zero() {
                    c(l, -T::PI())
                } else {
                    cr(l)
                }
            }
        }
    }

    fn gamma_args(&self, s: Cx<T>) -> (Vec<Cx<T>>, Vec<Cx<T>>) {
        let p = &self.params;
        let g = p.gamma;
        let one = cr(T::one());
        match self.kind {
            AuxKind::V => (vec![(s - p.sigma1) / g], vec![s / g, one - (s - p.sigma2) / g]),
            AuxKind::Vtilde => (vec![(s - p.sigma1) / g, (s - p.sigma2) / g], vec![s / g]),
            AuxKind::V2 => (vec![one - s / g], vec![one - (s - p.sigma1) / g, one - (s - p.sigma2) / g]),
        }
    }

    /// `(log, factor)` with `V(s) = exp(log)·factor`.
    pub fn ln_eval(&self, s: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        let (num, den) = self.gamma_args(s);
        let (lr, f) = ln_gamma_ratio(&num, &den)?;
        Ok((lr + self.log_base() * s / self.params.gamma, f))
    }

    pub fn eval(&self, s: Cx<T>) -> Result<Cx<T>> {
        let (l, f) = self.ln_eval(s)?;
        Ok(l.exp() * f)
    }

    /// Poles of V: the families that the contour representations keep on the left.
    fn pole_families(&self) -> Vec<Cx<T>> {
        let p = &self.params;
        match self.kind {
            AuxKind::V => vec![p.sigma1],
            AuxKind::Vtilde => vec![p.sigma1, p.sigma2],
            AuxKind::V2 => vec![cr(p.gamma)],
        }
    }
}

/// The integrand shared by all three representations, with `s` fixed:
/// `(-t)^{(σ-s)/γ} V(σ) / (γ V(s) Γ(1+(σ-s)/γ) (e^{-2iπ(σ-s)/γ} - 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourIntegrand<T: Real> {
    pub aux: AuxV<T>,
    pub t: T,
    pub s: Cx<T>,
    ln_vs: Cx<T>,
    f_vs: Cx<T>,
}

impl<T: Real> ContourIntegrand<T> {
    pub fn new(aux: AuxV<T>, t: T, s: Cx<T>) -> Result<Self> {
        let (ln_vs, f_vs) = aux.ln_eval(s)?;
        if f_vs.norm() == T::zero() {
            return Err(Error::Domain(format!("auxiliary function vanishes at s = {s}")));
        }
        Ok(Self { aux, t, s, ln_vs, f_vs })
    }

    pub fn eval(&self, sigma: Cx<T>) -> Result<Cx<T>> {
        let g = self.aux.params.gamma;
        let d = (sigma - self.s) / g;
        let log_mt = c(self.t.ln(), -T::PI());
        let (lv, fv) = self.aux.ln_eval(sigma)?;
        let (lr, fr) = ln_gamma_ratio(&[], &[cr(T::one()) + d])?;
        // 1/(e^w - 1) written so that large |Re w| cannot overflow
        let w = c(T::zero(), -T::TAU()) * d;
        let (lw, fw) = if w.re > T::zero() {
            (-w, cr(T::one()) / (cr(T::one()) - (-w).exp()))
        } else {
            (cr(T::zero()), cr(T::one()) / (w.exp() - cr(T::one())))
        };
        let log = d * log_mt + lv - self.ln_vs + lr + lw;
        Ok(log.exp() * fv * fr * fw / (self.f_vs * g))
    }

    /// Poles of the integrand that must lie left and right of the path.
    fn required_sides(&self, path: &ContourPath<T>) -> (Vec<Cx<T>>, Vec<Cx<T>>) {
        let g = self.aux.params.gamma;
        let mut left = Vec::new();
        let mut right = Vec::new();
        let walk = |base: Cx<T>, dir: T, want_left: bool, out: &mut Vec<Cx<T>>| {
            // each family moves towards its required side, so stop once safely there
            for m in 0..10_000usize {
                let z = base + cr(dir * T::from_usize(m).unwrap());
                if path.is_left(z) == want_left && path.horizontal_gap(z) > g.abs() * lit(2.0) {
                    break;
                }
                out.push(z);
            }
        };
        for base in self.aux.pole_families() {
            walk(base, -g.abs(), true, &mut left);
        }
        if self.aux.kind == AuxKind::V2 {
            // s + mγ sits on the left for γ < 0
            walk(self.s, g, true, &mut left);
        } else {
            walk(self.s, g, false, &mut right);
        }
        (left, right)
    }
}

/// Integral of `integrand` along `path` plus circle corrections for poles on the
/// wrong side. Returns the value of the full representation (prefactor included).
pub fn integrate_with_detours<T: Real>(
    integrand: &ContourIntegrand<T>,
    path: &ContourPath<T>,
    tol: Tol<T>,
) -> Result<Cx<T>> {
    let (left, right) = integrand.required_sides(path);
    let mut all: Vec<Cx<T>> = left.iter().chain(right.iter()).copied().collect();
    let g = integrand.aux.params.gamma;
    for base in integrand.aux.pole_families() {
        for m in 0..4usize {
            all.push(base - cr(g.abs() * T::from_usize(m).unwrap()));
        }
    }
    for m in 0..4usize {
        all.push(integrand.s + cr(g * T::from_usize(m).unwrap()));
    }
    let mut correction = cr(T::zero());
    let mut done: Vec<Cx<T>> = Vec::new();
    let tiny: T = lit(1e-9);
    for (z, want_left) in left.iter().map(|&z| (z, true)).chain(right.iter().map(|&z| (z, false))) {
        if done.iter().any(|&q| (q - z).norm() < tiny) {
            continue;
        }
        done.push(z);
        let gap = path.horizontal_gap(z);
        if gap < lit(1e-3) {
            return Err(Error::PoleProximity {
                arg: format!("path through Re = {}", path.re_at(z.im)),
                pole: format!("{z}"),
                dist: gap.to_f64_lossy(),
            });
        }
        if path.is_left(z) == want_left {
            continue;
        }
        let nearest = all.iter().map(|&q| (q - z).norm()).filter(|&d| d > tiny).fold(g.abs(), |a, d| a.min(d));
        let radius = nearest * lit(0.3);
        let loop_val = circle_integral(|w| integrand.eval(w), z, radius, 64)?;
        // CCW adds a pole to the left side; CW moves it to the right
        if want_left {
            correction += loop_val;
        } else {
            correction -= loop_val;
        }
    }
    let main = path.integrate(|w| integrand.eval(w), tol, lit(V_MAX))?;
    Ok(main.value + correction)
}

fn contour_tol<T: Real>() -> Tol<T> {
    Tol::new(lit(1e-14), lit(1e-11))
}

/// U(t,s) from its integral over the bent contour (γ > 0, γt > 1).
pub fn contour_u<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>, path: &ContourPath<T>) -> Result<Cx<T>> {
    if p.gamma <= T::zero() || !(p.gamma * t > T::one()) {
        return Err(Error::Domain(format!("contour_u needs gamma > 0 and gamma t > 1, got t = {t}")));
    }
    let sigma0 = match path.kind {
        PathKind::Bent { sigma0, side: Side::Left, .. } => sigma0,
        _ => return Err(Error::InvalidParameter("contour_u needs a left-bent path".into())),
    };
    if sigma0 <= p.sigma1.re {
        return Err(Error::InvalidParameter(format!("sigma0 = {sigma0} must exceed Re sigma_1")));
    }
    let f = ContourIntegrand::new(AuxV::new(AuxKind::V, *p), t, s)?;
    integrate_with_detours(&f, path, contour_tol())
}

/// `σ₀` for [`contour_u`]: in `(Re σ₁, Re σ₁ + γ)`, as far as possible from the
/// lattices `s + mγ` and `σ₁ - mγ`.
pub fn default_sigma0_u<T: Real>(p: &ModelParams<T>, s: Cx<T>) -> T {
    let lo = p.sigma1.re;
    let poles: Vec<T> = (0..8).map(|m| s.re + p.gamma * T::from_usize(m).unwrap()).collect();
    farthest_from(lo, lo + p.gamma, &poles)
}

/// Point of `(lo, hi)` maximising the distance to every entry of `avoid` (and to the ends).
fn farthest_from<T: Real>(lo: T, hi: T, avoid: &[T]) -> T {
    let n = 64;
    let mut best = (lo + hi) * lit(0.5);
    let mut best_gap = -T::one();
    for k in 1..n {
        let x = lo + (hi - lo) * T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
        let gap = avoid.iter().fold((x - lo).min(hi - x), |g, &a| g.min((x - a).abs()));
        if gap > best_gap {
            best_gap = gap;
            best = x;
        }
    }
    best
}

/// Ω(t,s) from its integral over `Re σ = σ₀`, closed by rays bending to
/// `Re σ -> +∞` (γ > 0, γt < 1).
pub fn contour_omega<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>, s0: T) -> Result<Cx<T>> {
    if p.gamma <= T::zero() || !(t > T::zero()) || !(p.gamma * t < T::one()) {
        return Err(Error::Domain(format!("contour_omega needs gamma > 0 and 0 < gamma t < 1, got t = {t}")));
    }
    if s0 <= T::zero() {
        return Err(Error::InvalidParameter(format!("sigma0 = {s0} must be positive")));
    }
    let path = ContourPath::bent(s0, T::one(), Side::Right);
    let f = ContourIntegrand::new(AuxV::new(AuxKind::Vtilde, *p), t, s)?;
    integrate_with_detours(&f, &path, contour_tol())
}

/// Upper bound on the tilt of [`ContourPath::tilted`] for `-γt < τ`:
/// `π / log τ` when `τ < 1`, unbounded otherwise.
pub fn tilt_bound<T: Real>(tau: T) -> T {
    if tau < T::one() {
        T::PI() / tau.ln()
    } else {
        T::infinity()
    }
}

/// Default tilt `2π / log(-γt)`, inside [`tilt_bound`] for `τ = 1.05·(-γt)`.
pub fn default_tilt<T: Real>(p: &ModelParams<T>, t: T) -> T {
    T::TAU() / (-p.gamma * t).ln()
}

/// The combination 2πi(Ω₁ + Ω₂) from the tilted-contour integral (γ < 0).
pub fn contour_u2<T: Real>(p: &ModelParams<T>, t: T, s: Cx<T>, path: &ContourPath<T>) -> Result<Cx<T>> {
    let g = p.gamma;
    if g >= T::zero() || !(t > T::zero()) || !(-g * t < T::one()) {
        return Err(Error::Domain(format!("contour_u2 needs gamma < 0 and 0 < -gamma t < 1, got t = {t}")));
    }
    let (sigma0, tilt) = match path.kind {
        PathKind::TiltedC { sigma0, tilt } => (sigma0, tilt),
        _ => return Err(Error::InvalidParameter("contour_u2 needs a tilted path".into())),
    };
    let bound = tilt_bound(-g * t * lit(1.05));
    if !(tilt < bound) || tilt >= T::zero() {
        return Err(Error::TiltViolation { tilt: tilt.to_f64_lossy(), bound: bound.min(T::zero()).to_f64_lossy() });
    }
    if sigma0 <= T::zero() {
        return Err(Error::InvalidParameter(format!("sigma0 = {sigma0} must be positive")));
    }
    let f = ContourIntegrand::new(AuxV::new(AuxKind::V2, *p), t, s)?;
    integrate_with_detours(&f, path, contour_tol())
}

/// `σ₀` for [`contour_u2`]: right of `Re s` and of the origin, off the lattice `s + mγ`.
pub fn default_sigma0_u2<T: Real>(p: &ModelParams<T>, s: Cx<T>) -> T {
    let lo = s.re.max(T::zero());
    let k = p.gamma.abs();
    let poles: Vec<T> = (0..4).map(|m| s.re + k * T::from_usize(m).unwrap()).collect();
    farthest_from(lo, lo + k, &poles)
}

/// Result of a numerical inverse Mellin transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseMellin<T: Real> {
    /// Complex value; the imaginary part is zero for real densities.
    pub value: Cx<T>,
    pub error: T,
}

/// `(1/2π) ∫ x^{-(s₀+iv)} W(s₀+iv) dv`; `W` must decay integrably on the line.
pub fn inverse_mellin<T: Real, W>(w: W, s0: T, x: T, tol: T) -> Result<InverseMellin<T>>
where
    W: FnMut(Cx<T>) -> Result<Cx<T>>,
{
    inverse_mellin_on(w, &ContourPath::vertical(s0), x, tol)
}

/// `(1/2πi) ∫_path x^{-s} W(s) ds` along any path.
pub fn inverse_mellin_on<T: Real, W>(mut w: W, path: &ContourPath<T>, x: T, tol: T) -> Result<InverseMellin<T>>
where
    W: FnMut(Cx<T>) -> Result<Cx<T>>,
{
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("inverse Mellin needs x > 0, got {x}")));
    }
    let lx = x.ln();
    let scale = T::TAU();
    let q = Tol::new(tol * scale * lit(0.1), lit(1e-12));
    let r = path.integrate(|s| Ok((-s * lx).exp() * w(s)?), q, lit(V_MAX))?;
    Ok(InverseMellin { value: r.value / c(T::zero(), scale), error: r.error / scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mellin::{omega, u2, u2_contour_form, u_closed};
    use crate::special::cgamma;
    use proptest::prelude::*;

    fn rel(a: Cx<f64>, b: Cx<f64>) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn path_geometry() {
        let p = ContourPath::bent_c(0.7);
        assert_eq!(p.re_at(0.5), 0.7);
        assert_eq!(p.re_at(3.0), -1.3);
        assert_eq!(p.re_at(-3.0), -1.3);
        assert!(p.is_left(c(0.5, 0.0)));
        let q = ContourPath::tilted(1.0, -2.0);
        assert_eq!(q.re_at(-5.0), 1.0);
        assert_eq!(q.re_at(1.0), -1.0);
        assert_eq!(ContourPath::vertical(0.3).segments.len(), 1 + 1);
    }

    #[test]
    fn inverse_mellin_of_known_pairs() {
        let r = inverse_mellin(cgamma, 1.0, 1.0, 1e-10).unwrap();
        assert!((r.value.re - (-1f64).exp()).abs() < 1e-9);
        assert!(r.value.im.abs() < 1e-10);
        let bent = ContourPath::bent(1.0, 1.0, Side::Left);
        let r = inverse_mellin_on(cgamma, &bent, 2.0, 1e-10).unwrap();
        assert!((r.value.re - (-2f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn contour_u_reproduces_closed_form() {
        let p = ModelParams::new(1.0, 0.75).unwrap();
        let s = cr(1.0);
        let v = contour_u(&p, 2.0, s, &ContourPath::bent_c(default_sigma0_u(&p, s))).unwrap();
        assert!(rel(v, u_closed(&p, 2.0, s).unwrap()) < 1e-8, "{v}");
        let p = ModelParams::new(1.0, 2.0).unwrap();
        let s = c(0.5, 0.5);
        let v = contour_u(&p, 1.5, s, &ContourPath::bent_c(default_sigma0_u(&p, s))).unwrap();
        assert!(rel(v, u_closed(&p, 1.5, s).unwrap()) < 1e-8, "{v}");
    }

    #[test]
    fn contour_omega_reproduces_closed_form() {
        let p = ModelParams::new(1.0, 0.75).unwrap();
        let v = contour_omega(&p, 0.1, cr(1.2), 0.6).unwrap();
        assert!(rel(v, omega(&p, 0.1, cr(1.2)).unwrap()) < 1e-8, "{v}");
        let p = ModelParams::new(1.0, 2.0).unwrap();
        let v = contour_omega(&p, 0.5, cr(2.0), 1.5).unwrap();
        assert!(rel(v, omega(&p, 0.5, cr(2.0)).unwrap()) < 1e-8, "{v}");
        // W(t,s) = 1 + tΦ(s) + O(t²)
        let v = contour_omega(&p, 1e-3, cr(2.0), 1.5).unwrap();
        assert!((v - cr(1.0) - p.phi(cr(2.0)).unwrap() * 1e-3).norm() < 1e-5);
    }

    #[test]
    fn contour_u2_reproduces_closed_form() {
        for (theta, t, s) in [(0.75, 0.3, 2.0), (2.0, 0.5, 1.5)] {
            let p = ModelParams::new(-1.0, theta).unwrap();
            let s = cr(s);
            let path = ContourPath::tilted(default_sigma0_u2(&p, s), default_tilt(&p, t));
            let v = contour_u2(&p, t, s, &path).unwrap();
            let closed = u2_contour_form(&p, t, s).unwrap();
            assert!(rel(v, closed) < 1e-8, "theta {theta}: {v} vs {closed}");
            // the real solution differs from the contour combination by iπR
            assert!(u2(&p, t, s).unwrap().norm() > 0.0);
        }
    }

    #[test]
    fn tilt_violation_is_reported() {
        let p = ModelParams::new(-1.0, 0.75).unwrap();
        let e = contour_u2(&p, 0.3, cr(2.0), &ContourPath::tilted(2.5, -0.5));
        assert!(matches!(e, Err(Error::TiltViolation { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn reflection_identity(kind in 0usize..3, theta in 0.2f64..4.0, g in 0.3f64..2.0,
                               re in -4.0f64..4.0, im in -6.0f64..6.0) {
            let (kind, gamma) = match kind {
                0 => (AuxKind::V, g),
                1 => (AuxKind::Vtilde, g),
                _ => (AuxKind::V2, -g),
            };
            let p = ModelParams::new(gamma, theta).unwrap();
            let s = c(re, im);
            let aux = AuxV::new(kind, p);
            let (Ok(a), Ok(b)) = (aux.eval(s + cr(gamma)), aux.eval(s)) else { return Ok(()) };
            prop_assume!(b.norm() > 1e-200 && b.norm() < 1e200 && s.norm() > 1e-3);
            let rhs = -(s - p.sigma1) * (s - p.sigma2) / s * b;
            prop_assert!((a - rhs).norm() <= 1e-10 * rhs.norm().max(a.norm()));
        }
    }
}
