//! Gauss hypergeometric function ₂F₁(a, b; c; z) with complex parameters.
//!
//! Routing, in order:
//!
//! | region                               | method                                   |
//! |--------------------------------------|------------------------------------------|
//! | `a` or `b` a non-positive integer    | terminating sum                          |
//! | `|z| <= 0.6`                         | direct series or Euler transformation;   |
//! |                                      | `z -> 1-z` connection if both cancel     |
//! | `|z/(z-1)| <= 0.6`                   | Pfaff transformation (either parameter)  |
//! | `|1-z| <= 0.6`, `c-a-b` non-integer  | `z -> 1-z` connection                    |
//! | `|1-z| <= 0.6`, `c-a-b` an integer   | logarithmic `z -> 1-z` connection        |
//! | `|z| >= 1/0.6`, `a-b` non-integer    | `z -> 1/z` connection                    |
//! | anything else                        | Taylor continuation of the ODE from 0    |
//!
//! The last route covers the remaining integer-gap cases (`a-b` at large `|z|`,
//! and near-integer `c-a-b`): the hypergeometric equation
//! `z(1-z)w'' + (c-(a+b+1)z)w' - ab w = 0` is re-expanded around successive
//! points on the segment `[0, z]`, each step taking half the distance to the
//! nearest singular point, so every local series converges at ratio 1/2.
//! Principal branch throughout; `z` real and `> 1` is on the cut and refused.

use crate::error::{Error, Result};
use crate::scalar::{cr, lit, Cx, Real};
use crate::special::gamma::{digamma, gamma_ratio, nearest_pole, rgamma, EPS_POLE};

/// Maximum number of series terms before `NonConvergence`.
pub const MAX_TERMS: usize = 5000;

/// Radius used by the direct series and by both transformations.
const R_DIRECT: f64 = 0.6;

/// Distance to an integer below which connection formulas are not used.
const CONNECTION_GAP: f64 = 1e-3;

/// `c-a-b` this close to an integer takes the logarithmic connection formula.
const INTEGER_GAP: f64 = 1e-13;

/// Parameters of one ₂F₁ evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params<T: Real> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub c: Cx<T>,
    pub z: Cx<T>,
}

impl<T: Real> Hyp2F1Params<T> {
    pub fn new(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Self {
        Self { a, b, c, z }
    }

    pub fn eval(&self) -> Result<Cx<T>> {
        hyp2f1(self.a, self.b, self.c, self.z)
    }
}

/// Which side of `Re(c-a-b) = 0` the z -> 1 limit was taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Z1Regime {
    /// `F(a,b;c;1)` is finite and equals the Gauss value.
    Regular,
    /// `F ~ coefficient * (1-z)^{c-a-b}`; the coefficient is returned.
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Z1Limit<T: Real> {
    pub value: Cx<T>,
    pub regime: Z1Regime,
}

fn dist_to_integer<T: Real>(z: Cx<T>) -> T {
    (z - cr(z.re.round())).norm()
}

fn nonpositive_integer<T: Real>(z: Cx<T>) -> Option<usize> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        z.re.abs().to_usize()
    } else {
        None
    }
}

fn check_c<T: Real>(c: Cx<T>) -> Result<()> {
    if let Some((n, d)) = nearest_pole(c) {
        if d < lit(EPS_POLE) {
            return Err(Error::PoleProximity { arg: format!("c = {c}"), pole: format!("{n}"), dist: d.to_f64_lossy() });
        }
    }
    Ok(())
}

/// Direct Gauss series. Stops after three consecutive terms below
/// `eps * |sum|`; `NonConvergence` after [`MAX_TERMS`].
pub fn hyp2f1_series<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<Cx<T>> {
    Ok(series_with_magnitude(a, b, c, z)?.0)
}

/// Direct series together with the largest term modulus (cancellation gauge).
fn series_with_magnitude<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<(Cx<T>, T)> {
    let one = cr(T::one());
    let mut term = one;
    let mut sum = one;
    let mut peak = T::one();
    let mut small = 0;
    let eps = T::epsilon() * lit(0.5);
    for n in 0..MAX_TERMS {
        let nn = cr(T::from_usize(n).unwrap());
        term = term * (a + nn) * (b + nn) / ((c + nn) * (nn + one)) * z;
        sum += term;
        peak = peak.max(term.norm());
        if term.norm() <= eps * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok((sum, peak));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence { what: format!("2F1 series a={a} b={b} c={c} z={z}"), terms: MAX_TERMS })
}

/// Loss factor `peak / |sum|` above which an alternative series is tried.
const CANCELLATION: f64 = 1e3;

/// `pre * F(a, b; c; w)` by direct series, or `alt_pre * F(a2, b2; c; w)` when
/// the first suffers more cancellation than the second. Returns the value and
/// its loss factor.
#[allow(clippy::too_many_arguments)]
fn least_cancelling<T: Real>(
    pre: Cx<T>,
    (a, b): (Cx<T>, Cx<T>),
    alt_pre: impl FnOnce() -> Cx<T>,
    (a2, b2): (Cx<T>, Cx<T>),
    c: Cx<T>,
    w: Cx<T>,
) -> Result<(Cx<T>, T)> {
    let (f, peak) = series_with_magnitude(a, b, c, w)?;
    let loss = peak / f.norm();
    if loss <= lit(CANCELLATION) {
        return Ok((pre * f, loss));
    }
    let (g, peak2) = series_with_magnitude(a2, b2, c, w)?;
    let loss2 = peak2 / g.norm();
    if loss2 < loss {
        Ok((alt_pre() * g, loss2))
    } else {
        Ok((pre * f, loss))
    }
}

/// `|1-z|` up to which the `z -> 1-z` connection backs up a cancelling direct series.
const R_CONNECTION_BACKUP: f64 = 0.95;

/// ₂F₁(a, b; c; z), principal branch.
pub fn hyp2f1<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<Cx<T>> {
    check_c(c)?;
    let one = cr(T::one());
    if z.norm() == T::zero() {
        return Ok(one);
    }
    let rd: T = lit(R_DIRECT);
    if let Some(m) = nonpositive_integer(a).or_else(|| nonpositive_integer(b)) {
        if m < MAX_TERMS {
            return terminating(a, b, c, z, m);
        }
    }
    if z.im == T::zero() && z.re > T::one() {
        return Err(Error::Domain(format!("2F1 argument z = {z} lies on the branch cut [1, inf)")));
    }
    if z.norm() <= rd {
        // Euler's transformation rescues large negative parameters
        let (f, loss) = least_cancelling(one, (a, b), || (one - z).powc(c - a - b), (c - a, c - b), c, z)?;
        // a parameter with a large imaginary part cancels in both; it drops out of
        // the term ratios of the 1-z series
        if loss > lit(CANCELLATION)
            && (one - z).norm() <= lit(R_CONNECTION_BACKUP)
            && dist_to_integer(c - a - b) > lit(CONNECTION_GAP)
        {
            if let Ok((g, loss2)) = one_minus_z_with_loss(a, b, c, z) {
                if loss2 < loss {
                    return Ok(g);
                }
            }
        }
        return Ok(f);
    }
    let w = z / (z - one);
    if w.norm() <= rd {
        return Ok(least_cancelling((one - z).powc(-a), (a, c - b), || (one - z).powc(-b), (b, c - a), c, w)?.0);
    }
    let gap: T = lit(CONNECTION_GAP);
    if (one - z).norm() <= rd && dist_to_integer(c - a - b) > gap {
        return one_minus_z(a, b, c, z);
    }
    if (one - z).norm() <= rd && dist_to_integer(c - a - b) <= lit(INTEGER_GAP) {
        let m = (c - a - b).re.round();
        if m >= T::zero() {
            return one_minus_z_log(a, b, c, z, m.to_usize().unwrap());
        }
        // Euler's transformation turns a negative gap into a positive one
        let f = one_minus_z_log(c - a, c - b, c, z, (-m).to_usize().unwrap())?;
        return Ok((one - z).powc(c - a - b) * f);
    }
    if z.norm() >= T::one() / rd && dist_to_integer(a - b) > gap {
        return reciprocal_z(a, b, c, z);
    }
    continuation(a, b, c, z)
}

/// ₂F₁(a, b; c; z)/Γ(c), entire in `c`.
pub fn hyp2f1_reg<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<Cx<T>> {
    if let Some((n, d)) = nearest_pole(c) {
        if d < lit(EPS_POLE) {
            // F/Γ(c) at c = -k equals (a)_{k+1}(b)_{k+1} z^{k+1}/(k+1)! F(a+k+1, b+k+1; k+2; z)
            let k = n.abs().to_usize().unwrap();
            let one = cr(T::one());
            let mut pre = one;
            for j in 0..=k {
                let jj = cr(T::from_usize(j).unwrap());
                pre = pre * (a + jj) * (b + jj) * z / (jj + one);
            }
            let kk = cr(T::from_usize(k + 1).unwrap());
            return Ok(pre * hyp2f1(a + kk, b + kk, kk + one, z)?);
        }
    }
    Ok(hyp2f1(a, b, c, z)? * rgamma(c))
}

fn terminating<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>, m: usize) -> Result<Cx<T>> {
    let one = cr(T::one());
    let mut term = one;
    let mut sum = one;
    for n in 0..m {
        let nn = cr(T::from_usize(n).unwrap());
        term = term * (a + nn) * (b + nn) / ((c + nn) * (nn + one)) * z;
        sum += term;
    }
    Ok(sum)
}

fn one_minus_z<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<Cx<T>> {
    Ok(one_minus_z_with_loss(a, b, c, z)?.0)
}

/// `z -> 1-z` connection with its loss factor (largest scaled term over the result).
fn one_minus_z_with_loss<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<(Cx<T>, T)> {
    let one = cr(T::one());
    let w = one - z;
    let g1 = gamma_ratio(&[c, c - a - b], &[c - a, c - b])?;
    let g2 = gamma_ratio(&[c, a + b - c], &[a, b])?;
    let mut out = cr(T::zero());
    let mut peak = T::zero();
    if g1.norm() != T::zero() {
        let (f, pk) = series_with_magnitude(a, b, a + b - c + one, w)?;
        out += g1 * f;
        peak = peak.max(g1.norm() * pk);
    }
    if g2.norm() != T::zero() {
        let pre = g2 * w.powc(c - a - b);
        let (f, pk) = series_with_magnitude(c - a, c - b, c - a - b + one, w)?;
        out += pre * f;
        peak = peak.max(pre.norm() * pk);
    }
    Ok((out, peak / out.norm()))
}

/// `z -> 1-z` connection for `c = a + b + m`, `m` a non-negative integer:
///
/// `F = Γ(m)Γ(c)/(Γ(a+m)Γ(b+m)) Σ_{k<m} (a)_k(b)_k/(k!(1-m)_k) w^k
///    - Γ(c)/(Γ(a)Γ(b)) (-w)^m Σ_k (a+m)_k(b+m)_k/(k!(k+m)!) w^k
///      [ln w - ψ(k+1) - ψ(k+m+1) + ψ(a+k+m) + ψ(b+k+m)]`, `w = 1-z`.
fn one_minus_z_log<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>, m: usize) -> Result<Cx<T>> {
    let one = cr(T::one());
    let w = one - z;
    let mm = cr(T::from_usize(m).unwrap());
    let mut out = cr(T::zero());
    if m > 0 {
        let g = gamma_ratio(&[mm, c], &[a + mm, b + mm])?;
        if g.norm() != T::zero() {
            let mut term = one;
            let mut sum = one;
            for k in 0..m - 1 {
                let kk = cr(T::from_usize(k).unwrap());
                term = term * (a + kk) * (b + kk) / ((kk + one) * (kk + one - mm)) * w;
                sum += term;
            }
            out += g * sum;
        }
    }
    let g = gamma_ratio(&[c], &[a, b])?;
    if g.norm() == T::zero() {
        return Ok(out);
    }
    let lw = w.ln();
    let mut psi_k1 = digamma(one)?;
    let mut psi_km1 = digamma(mm + one)?;
    let mut psi_a = digamma(a + mm)?;
    let mut psi_b = digamma(b + mm)?;
    // k = 0 coefficient 1/m!
    let mut term = one;
    for j in 1..=m {
        term /= T::from_usize(j).unwrap();
    }
    let mut sum = cr(T::zero());
    let eps = T::epsilon() * lit(0.5);
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let piece = term * (lw - psi_k1 - psi_km1 + psi_a + psi_b);
        sum += piece;
        if piece.norm() <= eps * sum.norm() {
            small += 1;
            if small >= 3 {
                let sign = if m.is_multiple_of(2) { T::one() } else { -T::one() };
                return Ok(out - g * w.powi(m as i32) * sum * sign);
            }
        } else {
            small = 0;
        }
        let kk = cr(T::from_usize(k).unwrap());
        term = term * (a + mm + kk) * (b + mm + kk) / ((kk + one) * (kk + mm + one)) * w;
        psi_k1 += one / (kk + one);
        psi_km1 += one / (kk + mm + one);
        psi_a += one / (a + mm + kk);
        psi_b += one / (b + mm + kk);
    }
    Err(Error::NonConvergence { what: format!("2F1 logarithmic connection at z = {z}"), terms: MAX_TERMS })
}

fn reciprocal_z<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<Cx<T>> {
    let one = cr(T::one());
    let w = one / z;
    let mz = -z;
    let g1 = gamma_ratio(&[c, b - a], &[b, c - a])?;
    let g2 = gamma_ratio(&[c, a - b], &[a, c - b])?;
    let mut out = cr(T::zero());
    if g1.norm() != T::zero() {
        out += g1 * mz.powc(-a) * hyp2f1_series(a, one - c + a, one - b + a, w)?;
    }
    if g2.norm() != T::zero() {
        out += g2 * mz.powc(-b) * hyp2f1_series(b, one - c + b, one - a + b, w)?;
    }
    Ok(out)
}

/// Value and derivative of the local Taylor solution at distance `h`.
fn taylor_step<T: Real>(
    a: Cx<T>,
    b: Cx<T>,
    c: Cx<T>,
    z0: Cx<T>,
    w0: Cx<T>,
    dw0: Cx<T>,
    h: Cx<T>,
) -> Result<(Cx<T>, Cx<T>)> {
    let one = cr(T::one());
    let two = cr(lit::<T>(2.0));
    let p0 = z0 * (one - z0);
    let p1 = one - two * z0;
    let q0 = c - (a + b + one) * z0;
    let q1 = -(a + b + one);
    let ab = a * b;
    // coefficients c_k of w(z0 + h) = sum c_k h^k
    let mut ck = w0;
    let mut ck1 = dw0;
    let mut val = w0 + dw0 * h;
    let mut der = dw0;
    let mut hk = h; // h^k for k = 1
    let eps = T::epsilon() * lit(0.5);
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = cr(T::from_usize(k).unwrap());
        let k1 = kf + one;
        let k2 = kf + two;
        let ck2 = -((p1 * kf + q0) * k1 * ck1 + (-(kf * (kf - one)) + q1 * kf - ab) * ck) / (p0 * k2 * k1);
        // term c_{k+2} h^{k+2} and its derivative (k+2) c_{k+2} h^{k+1}
        let dterm = ck2 * k2 * hk;
        hk *= h;
        let term = ck2 * hk;
        val += term;
        der += dterm;
        if term.norm() <= eps * val.norm() && dterm.norm() <= eps * der.norm() {
            small += 1;
            if small >= 3 {
                return Ok((val, der));
            }
        } else {
            small = 0;
        }
        ck = ck1;
        ck1 = ck2;
    }
    Err(Error::NonConvergence { what: format!("2F1 ODE continuation step at z0={z0}"), terms: MAX_TERMS })
}

fn continuation<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: Cx<T>) -> Result<Cx<T>> {
    let one = cr(T::one());
    let half: T = lit(0.5);
    let dir = z / z.norm();
    let mut zeta = dir * half;
    let mut w = hyp2f1_series(a, b, c, zeta)?;
    let mut dw = a * b / c * hyp2f1_series(a + one, b + one, c + one, zeta)?;
    for _ in 0..10_000 {
        let remaining = z - zeta;
        let left = remaining.norm();
        if left == T::zero() {
            return Ok(w);
        }
        let rho = zeta.norm().min((one - zeta).norm());
        let step = (rho * half).min(left);
        if rho < lit(1e-14) {
            return Err(Error::Domain(format!("continuation path for z = {z} runs into z = 1")));
        }
        let h = remaining / left * step;
        let (nw, ndw) = taylor_step(a, b, c, zeta, w, dw, h)?;
        w = nw;
        dw = ndw;
        zeta = if step == left { z } else { zeta + h };
    }
    Err(Error::NonConvergence { what: format!("2F1 continuation to z = {z}"), terms: 10_000 })
}

/// Limit of ₂F₁ as `z -> 1-`: the Gauss value when `Re(c-a-b) > 0`, otherwise the
/// coefficient of the `(1-z)^{c-a-b}` singular factor.
pub fn hyp2f1_limit_z1<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>) -> Result<Z1Limit<T>> {
    let s = c - a - b;
    if s.re.abs() < lit(EPS_POLE) {
        return Err(Error::BalancedCase(s.re.to_f64_lossy()));
    }
    if (nonpositive_integer(a).is_some() || nonpositive_integer(b).is_some()) && s.re > T::zero() {
        // terminating series: F(a,b;c;1) is the Chu-Vandermonde value
        return Ok(Z1Limit { value: gamma_ratio(&[c, s], &[c - a, c - b])?, regime: Z1Regime::Regular });
    }
    if s.re > T::zero() {
        Ok(Z1Limit { value: gamma_ratio(&[c, s], &[c - a, c - b])?, regime: Z1Regime::Regular })
    } else {
        Ok(Z1Limit { value: gamma_ratio(&[c, -s], &[a, b])?, regime: Z1Regime::Singular })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c as cx;
    use crate::special::gamma::cgamma;
    use approx::assert_relative_eq;

    fn f(a: f64, b: f64, c: f64, z: f64) -> Cx<f64> {
        hyp2f1(cr(a), cr(b), cr(c), cr(z)).unwrap()
    }

    #[test]
    fn elementary_values() {
        assert_eq!(f(0.0, 3.3, 1.7, 0.9), cr(1.0));
        assert_relative_eq!(f(1.0, 1.0, 2.0, 0.5).re, -(0.5f64.ln()) / 0.5, max_relative = 1e-14);
        assert_relative_eq!(f(0.5, 2.0, 2.0, 0.3).re, 0.7f64.powf(-0.5), max_relative = 1e-14);
    }

    #[test]
    fn integer_gap_near_one() {
        // mpmath at 30 digits
        let rel = |a: Cx<f64>, b: Cx<f64>| (a - b).norm() / b.norm();
        assert!(rel(f(1.5, 1.5, 2.0, 0.99999), cr(127_320.362_142_348_74)) < 1e-12);
        assert!(rel(f(1.5, 1.5, 2.0, 0.7), cr(3.753_398_783_716_253)) < 1e-13);
        assert!(rel(f(2.0, 4.0, 2.0, 0.99999), cr(1.000_000_000_018_204_1e20)) < 1e-12);
        let v = hyp2f1(cx(0.3, 0.4), cx(0.7, -0.4), cr(3.0), cr(0.95)).unwrap();
        assert!(rel(v, cx(1.178_277_137_438_319_8, 0.083_562_185_814_781_653)) < 1e-13, "{v}");
        assert_relative_eq!(f(1.0, 1.0, 2.0, 0.999).re, -(0.001f64.ln()) / 0.999, max_relative = 1e-14);
    }

    #[test]
    fn every_route_reproduces_log_identity() {
        // F(1,1;2;z) = -ln(1-z)/z, integer gaps everywhere
        for z in [
            cx(0.3, 0.1),
            cx(-0.9, 0.0),
            cx(0.95, 0.0),
            cx(0.999, 0.0),
            cx(0.3, 0.8),
            cx(-4.0, 1.0),
            cx(3.0, 0.5),
            cx(1.2, -0.01),
        ] {
            let got = hyp2f1(cr(1.0), cr(1.0), cr(2.0), z).unwrap();
            let want = -(cr(1.0) - z).ln() / z;
            assert!((got - want).norm() / want.norm() < 1e-12, "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn connection_formulas_agree_with_continuation() {
        let (a, b, c) = (cx(0.3, 0.2), cx(-1.7, 0.4), cx(1.1, -0.3));
        for z in [cx(0.8, 0.1), cx(0.7, -0.05), cx(-2.5, 0.3), cx(2.0, 1.0)] {
            let routed = hyp2f1(a, b, c, z).unwrap();
            let cont = continuation(a, b, c, z).unwrap();
            assert!((routed - cont).norm() / cont.norm() < 1e-11, "z={z}: {routed} vs {cont}");
        }
    }

    #[test]
    fn reference_values() {
        // mpmath hyp2f1 at 30 digits
        let v = hyp2f1(cx(0.5, 1.0), cx(-0.25, 0.0), cx(1.5, -2.0), cx(0.9, 0.0)).unwrap();
        let want = cx(1.0635631410705151626, -0.077641289374295274947);
        assert!((v - want).norm() < 1e-13, "{v}");
        let v = hyp2f1(cr(1.5), cr(2.5), cr(2.0), cr(0.998)).unwrap();
        let want = cr(212312.22968782324341);
        assert!((v - want).norm() / want.norm() < 1e-11, "{v}");
    }

    #[test]
    fn regularized_at_nonpositive_c() {
        let a = cr(0.7);
        let b = cr(1.3);
        let z = cr(0.4);
        let at = hyp2f1_reg(a, b, cr(-2.0), z).unwrap();
        let near = hyp2f1_reg(a, b, cr(-2.0 + 1e-7), z).unwrap();
        assert!((at - near).norm() < 1e-5 * at.norm());
    }

    #[test]
    fn limit_z1_examples() {
        let l = hyp2f1_limit_z1(cr(0.0), cr(1.3), cr(2.0)).unwrap();
        assert_eq!(l.regime, Z1Regime::Regular);
        assert_relative_eq!(l.value.re, 1.0, max_relative = 1e-14);
        let l = hyp2f1_limit_z1(cr(0.25), cr(0.25), cr(1.0)).unwrap();
        assert_relative_eq!(l.value.re, 1.1803405990160962, max_relative = 1e-12);
        assert!(matches!(hyp2f1_limit_z1(cr(0.5), cr(0.5), cr(1.0)), Err(Error::BalancedCase(_))));
    }

    #[test]
    fn cut_and_pole_refused() {
        assert!(matches!(hyp2f1(cr(0.5), cr(0.5), cr(1.0), cr(2.0)), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1(cr(0.5), cr(0.5), cr(-1.0), cr(0.2)), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn large_negative_parameter_avoids_cancellation() {
        // mpmath at 50 digits
        for (m, want) in
            [(60.0, 0.202_234_305_291_999), (120.0, 0.144_322_500_104_488_43), (200.0, 0.112_207_424_665_168_45)]
        {
            let v = f(0.5, -m - 0.5, 2.0, 0.5);
            assert!((v.re - want).abs() < 1e-12 * want, "m={m}: {v}");
        }
    }

    #[test]
    fn large_imaginary_parameter_avoids_cancellation() {
        // mpmath at 40 digits; the direct series peaks near e^{|b|/2} here
        for (b, want) in [
            (cx(0.5, 100.0), cx(0.113_087_604_177_670_1, 0.111_474_208_317_402_62)),
            (cx(0.25, -180.0), cx(0.084_178_016_956_787_975, -0.083_787_258_406_428_372)),
        ] {
            let v = hyp2f1(cr(0.5), b, cr(2.0), cr(0.5)).unwrap();
            assert!((v - want).norm() < 1e-11 * want.norm(), "b={b}: {v}");
        }
    }

    /// Direct series summed with compensation, an independent check for `|z| <= 0.5`.
    fn compensated_series(a: Cx<f64>, b: Cx<f64>, c: Cx<f64>, z: Cx<f64>) -> Cx<f64> {
        let (mut sum, mut comp, mut term) = (cr(0.0), cr(0.0), cr(1.0));
        for n in 0..200 {
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            let k = n as f64;
            term = term * (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        }
        sum
    }

    fn cplx(re: f64, im: f64) -> Cx<f64> {
        cx(re, im)
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(2_000))]
        #[test]
        fn contiguous_relation_in_c(
            ar in -3.0f64..3.0, ai in -1.0f64..1.0, br in -3.0f64..3.0, bi in -1.0f64..1.0,
            cre in 1.6f64..4.0, cim in -1.0f64..1.0, r in 0.0f64..3.0, phi in -3.1f64..3.1,
        ) {
            let (a, b, c) = (cplx(ar, ai), cplx(br, bi), cplx(cre, cim));
            let z = cplx(r * phi.cos(), r * phi.sin());
            // off the cut [1, inf) and away from the singular point
            proptest::prop_assume!((z.re < 1.0 || z.im.abs() > 0.05) && (z - 1.0).norm() > 0.05);
            let (Ok(fm), Ok(f0), Ok(fp)) = (hyp2f1(a, b, c - 1.0, z), hyp2f1(a, b, c, z), hyp2f1(a, b, c + 1.0, z)) else {
                return Err(proptest::test_runner::TestCaseError::fail("evaluation failed"));
            };
            let t1 = c * (c - 1.0) * (z - 1.0) * fm;
            let t2 = c * (c - 1.0 - (c * 2.0 - a - b - 1.0) * z) * f0;
            let t3 = (c - a) * (c - b) * z * fp;
            let scale = t1.norm().max(t2.norm()).max(t3.norm());
            proptest::prop_assert!((t1 + t2 + t3).norm() <= 1e-8 * scale, "z = {}: {} of {}", z, (t1 + t2 + t3).norm(), scale);
        }

        #[test]
        fn matches_compensated_series_inside_half_disc(
            ar in -5.0f64..5.0, ai in -2.0f64..2.0, br in -5.0f64..5.0, bi in -2.0f64..2.0,
            cre in 0.5f64..5.0, cim in -2.0f64..2.0, r in 0.0f64..0.5, phi in -3.15f64..3.15,
        ) {
            let (a, b, c) = (cplx(ar, ai), cplx(br, bi), cplx(cre, cim));
            let z = cplx(r * phi.cos(), r * phi.sin());
            let want = compensated_series(a, b, c, z);
            let got = hyp2f1(a, b, c, z).unwrap();
            proptest::prop_assert!((got - want).norm() <= 1e-10 * want.norm().max(1.0), "{} vs {}", got, want);
        }

        #[test]
        fn gauss_value_in_the_regular_regime(
            ar in -3.0f64..3.0, ai in -1.0f64..1.0, br in -3.0f64..3.0, bi in -1.0f64..1.0, gap in 0.1f64..3.0, cim in -1.0f64..1.0,
        ) {
            let (a, b) = (cplx(ar, ai), cplx(br, bi));
            let c = a + b + cplx(gap, cim);
            proptest::prop_assume!(c.re > 0.2 || c.im.abs() > 0.2);
            proptest::prop_assume!((c - a).re > 0.2 || (c - a).im.abs() > 0.2);
            proptest::prop_assume!((c - b).re > 0.2 || (c - b).im.abs() > 0.2);
            let lim = hyp2f1_limit_z1(a, b, c).unwrap();
            proptest::prop_assert_eq!(lim.regime, Z1Regime::Regular);
            let want = cgamma(c).unwrap() * cgamma(c - a - b).unwrap() / (cgamma(c - a).unwrap() * cgamma(c - b).unwrap());
            proptest::prop_assert!((lim.value - want).norm() <= 1e-8 * want.norm().max(1e-300), "{} vs {}", lim.value, want);
        }
    }
}
