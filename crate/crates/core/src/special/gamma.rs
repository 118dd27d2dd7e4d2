//! Complex Gamma function.
//!
//! Lanczos approximation (g = 7, nine coefficients) on `Re z >= 1/2`, reflection
//! `Γ(z)Γ(1-z) = π / sin(πz)` on the left half plane. The direct product form is
//! used while `|Im z| <= 20` and `Re z <= 140`; beyond that the value is
//! assembled from the log-gamma so intermediate powers cannot overflow.

use crate::error::{Error, Result};
use crate::scalar::{c, cr, lit, Cx, Real};

/// Distance to a non-positive integer below which Γ refuses to evaluate.
pub const EPS_POLE: f64 = 1e-8;

/// `|Im z|` above which the log-gamma route is used.
pub const LOG_SWITCH_IM: f64 = 20.0;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Nearest non-positive integer to `z` and the distance to it, if `Re z < 1/2`.
pub fn nearest_pole<T: Real>(z: Cx<T>) -> Option<(T, T)> {
    if z.re > lit(0.5) {
        return None;
    }
    let n = z.re.round().min(T::zero());
    Some((n, (z - cr(n)).norm()))
}

fn check_pole<T: Real>(z: Cx<T>) -> Result<()> {
    if let Some((n, d)) = nearest_pole(z) {
        if d < lit(EPS_POLE) {
            return Err(Error::PoleProximity { arg: format!("{z}"), pole: format!("{n}"), dist: d.to_f64_lossy() });
        }
    }
    Ok(())
}

/// `sin(πz)` with the real part reduced modulo 2 first.
pub fn sin_pi<T: Real>(z: Cx<T>) -> Cx<T> {
    let two: T = lit(2.0);
    let r = z.re - two * (z.re / two).round();
    (c(r, z.im) * T::PI()).sin()
}

/// `cos(πz)` with the real part reduced modulo 2 first.
pub fn cos_pi<T: Real>(z: Cx<T>) -> Cx<T> {
    let two: T = lit(2.0);
    let r = z.re - two * (z.re / two).round();
    (c(r, z.im) * T::PI()).cos()
}

/// `cot(πz)`, finite for any `|Im z|` (tends to `∓i` as `Im z → ±∞`).
pub fn cot_pi<T: Real>(z: Cx<T>) -> Cx<T> {
    if z.im.abs() < T::one() {
        return cos_pi(z) / sin_pi(z);
    }
    let one = cr(T::one());
    let i = c(T::zero(), T::one());
    let two_pi_i = c(T::zero(), T::TAU());
    if z.im > T::zero() {
        // q = e^{2iπz} is small
        let q = (two_pi_i * z).exp();
        i * (q + one) / (q - one)
    } else {
        let q = (-two_pi_i * z).exp();
        i * (one + q) / (one - q)
    }
}

/// A branch of `log sin(πz)` that stays finite for large `|Im z|`.
fn ln_sin_pi<T: Real>(z: Cx<T>) -> Cx<T> {
    let two: T = lit(2.0);
    let r = z.re - two * (z.re / two).round();
    let w = c(r, z.im) * T::PI();
    if w.im.abs() < lit(LOG_SWITCH_IM) {
        return w.sin().ln();
    }
    let i = c(T::zero(), T::one());
    if w.im > T::zero() {
        // sin w = e^{-iw} (1 - e^{2iw}) / (-2i)
        -i * w - c(T::zero(), -two).ln() + (cr(T::one()) - (i * w * two).exp()).ln()
    } else {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
        i * w - c(T::zero(), two).ln() + (cr(T::one()) - (-i * w * two).exp()).ln()
    }
}

fn lanczos_sum<T: Real>(zm1: Cx<T>) -> Cx<T> {
    let mut a = cr(lit::<T>(LANCZOS[0]));
    for (k, &p) in LANCZOS.iter().enumerate().skip(1) {
        a += cr(lit::<T>(p)) / (zm1 + cr(T::from_usize(k).unwrap()));
    }
    a
}

fn lgamma_right<T: Real>(z: Cx<T>) -> Cx<T> {
    let zm1 = z - cr(T::one());
    let t = zm1 + cr(lit::<T>(LANCZOS_G + 0.5));
    let half_ln_2pi: T = lit(0.918_938_533_204_672_741_78);
    cr(half_ln_2pi) + (zm1 + cr(lit::<T>(0.5))) * t.ln() - t + lanczos_sum(zm1).ln()
}

/// A logarithm of Γ(z). The real part is exact; the imaginary part is a branch
/// of `arg Γ(z)` (principal for `Re z >= 1/2`, otherwise defined modulo 2π).
pub fn lgamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    check_pole(z)?;
    Ok(lgamma_unchecked(z))
}

fn lgamma_unchecked<T: Real>(z: Cx<T>) -> Cx<T> {
    if z.re >= lit(0.5) {
        lgamma_right(z)
    } else {
        cr(T::PI().ln()) - ln_sin_pi(z) - lgamma_right(cr(T::one()) - z)
    }
}

fn gamma_right_direct<T: Real>(z: Cx<T>) -> Cx<T> {
    let zm1 = z - cr(T::one());
    let t = zm1 + cr(lit::<T>(LANCZOS_G + 0.5));
    let sqrt_2pi: T = lit(2.506_628_274_631_000_502_4);
    (t.ln() * (zm1 + cr(lit::<T>(0.5))) - t).exp() * lanczos_sum(zm1) * sqrt_2pi
}

fn use_direct<T: Real>(z: Cx<T>) -> bool {
    z.im.abs() <= lit(LOG_SWITCH_IM) && z.re.abs() <= lit(140.0)
}

/// Γ(z). Errors with `PoleProximity` within [`EPS_POLE`] of a non-positive integer.
pub fn cgamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    check_pole(z)?;
    if !use_direct(z) {
        return Ok(lgamma_unchecked(z).exp());
    }
    if z.re >= lit(0.5) {
        Ok(gamma_right_direct(z))
    } else {
        let one = cr(T::one());
        Ok(cr(T::PI()) / (sin_pi(z) * gamma_right_direct(one - z)))
    }
}

/// 1/Γ(z), an entire function; exactly representable zeros at the poles of Γ.
pub fn rgamma<T: Real>(z: Cx<T>) -> Cx<T> {
    let one = cr(T::one());
    if !use_direct(z) {
        if z.re >= lit(0.5) {
            return (-lgamma_right(z)).exp();
        }
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        return sin_pi(z) * (lgamma_right(one - z)).exp() / T::PI();
    }
    if z.re >= lit(0.5) {
        one / gamma_right_direct(z)
    } else {
        sin_pi(z) * gamma_right_direct(one - z) / T::PI()
    }
}

/// Γ(a)Γ(b).../(Γ(c)Γ(d)...) evaluated through log-gamma sums.
///
/// Denominator poles give an exact zero; numerator poles are errors.
pub fn gamma_ratio<T: Real>(num: &[Cx<T>], den: &[Cx<T>]) -> Result<Cx<T>> {
    let (log, factor) = ln_gamma_ratio(num, den)?;
    if factor.norm() == T::zero() {
        return Ok(factor);
    }
    Ok(log.exp() * factor)
}

/// Split form `(log, factor)` of a Γ-ratio with `ratio = exp(log) * factor`.
///
/// Denominator arguments within [`EPS_POLE`] of a pole contribute `1/Γ` to
/// `factor` directly, so `factor` may be exactly zero.
pub fn ln_gamma_ratio<T: Real>(num: &[Cx<T>], den: &[Cx<T>]) -> Result<(Cx<T>, Cx<T>)> {
    for &z in num {
        check_pole(z)?;
    }
    let mut acc = Cx::new(T::zero(), T::zero());
    let mut factor = cr(T::one());
    for &z in den {
        if let Some((_, d)) = nearest_pole(z) {
            if d < lit(EPS_POLE) {
                factor *= rgamma(z);
                continue;
            }
        }
        acc -= lgamma_unchecked(z);
    }
    for &z in num {
        acc += lgamma_unchecked(z);
    }
    Ok((acc, factor))
}

/// Digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    check_pole(z)?;
    let one = cr(T::one());
    if z.re < lit(0.5) {
        return Ok(digamma(one - z)? - cot_pi(z) * T::PI());
    }
    // shift to |z| >= 10, then the asymptotic series
    let mut acc = cr(T::zero());
    let mut w = z;
    while w.norm() < lit(10.0) {
        acc -= one / w;
        w += one;
    }
    let w2 = one / (w * w);
    // Bernoulli terms B_{2k}/(2k) for k = 1..7
    let coef = [1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0];
    let mut series = cr(T::zero());
    for &b in coef.iter().rev() {
        series = (series + cr(lit::<T>(b))) * w2;
    }
    Ok(acc + w.ln() - one / (w + w) - series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rel(a: Cx<f64>, b: Cx<f64>) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn digamma_reference_values() {
        // mpmath at 30 digits
        let d = digamma(c(0.3, 2.0)).unwrap();
        assert!(rel(d, c(0.687_523_593_749_103_97, 1.672_730_211_056_628_6)) < 1e-14, "{d}");
        assert!(rel(digamma(cr(-2.5)).unwrap(), cr(1.103_156_640_645_243_2)) < 1e-14);
        assert!(rel(digamma(c(12.0, -3.0)).unwrap(), c(2.475_522_888_235_460_4, -0.255_038_601_835_298_74)) < 1e-14);
        assert!(rel(digamma(cr(1.0)).unwrap(), cr(-0.577_215_664_901_532_9)) < 1e-15);
        assert!(digamma(cr(-3.0)).is_err());
    }

    #[test]
    fn elementary_values() {
        assert_relative_eq!(cgamma(cr(1.0)).unwrap().re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(cgamma(cr(0.5)).unwrap().re, std::f64::consts::PI.sqrt(), max_relative = 1e-14);
        let g = cgamma(c(1.0, 1.0)).unwrap();
        let pi = std::f64::consts::PI;
        assert_relative_eq!(g.norm(), (pi / pi.sinh()).sqrt(), max_relative = 1e-13);
        assert_relative_eq!(cgamma(cr(6.0)).unwrap().re, 120.0, max_relative = 1e-13);
    }

    #[test]
    fn matches_extended_precision_reference() {
        // mpmath, 30 digits
        let cases = [
            ((0.3, 4.0), (0.001164643684811490564, 0.0033525598880352024374)),
            ((-2.7, 0.5), (-0.32094773931236760128, 0.00071666356914676512812)),
            ((10.0, 30.0), (-8.5429315061699318786e-7, -6.586002584109200444e-7)),
            ((-20.5, 3.0), (5.4423042777253346055e-23, -1.5696186469392754635e-23)),
            ((1.0, 100.0), (-1.5142531804977559698e-67, -2.7908215556174776333e-69)),
            ((45.0, -10.0), (8.2269948008692170525e53, -2.9000088513603024273e53)),
        ];
        for ((x, y), (gr, gi)) in cases {
            let g = cgamma(c(x, y)).unwrap();
            assert!(rel(g, c(gr, gi)) < 1e-12, "Γ({x}+{y}i) = {g}");
        }
    }

    #[test]
    fn log_gamma_real_part_far_up() {
        let l = lgamma(c(3.0, 150.0)).unwrap();
        assert_relative_eq!(l.re, -222.17381114807218044, max_relative = 1e-13);
        assert_relative_eq!(l.im, 605.50173026384897887, max_relative = 1e-13);
    }

    #[test]
    fn poles_are_refused_and_reciprocal_vanishes() {
        assert!(matches!(cgamma(cr(-3.0)), Err(Error::PoleProximity { .. })));
        assert!(matches!(cgamma(c(0.0, 1e-9)), Err(Error::PoleProximity { .. })));
        assert!(cgamma(c(-3.0, 1e-6)).is_ok());
        assert!(rgamma(cr(-3.0)).norm() < 1e-14);
        assert!(rgamma(cr(0.0)).norm() < 1e-15);
    }

    #[test]
    fn ratio_with_denominator_pole_is_zero() {
        let r = gamma_ratio(&[cr(0.5)], &[cr(-2.0)]).unwrap();
        assert_eq!(r.norm(), 0.0);
        let r = gamma_ratio(&[c(2.0, 40.0)], &[c(1.0, 40.0)]).unwrap();
        assert!(rel(r, c(1.0, 40.0)) < 1e-12);
    }

    #[test]
    fn single_precision_instantiation() {
        let g = cgamma(Cx::<f32>::new(4.0, 0.0)).unwrap();
        assert!((g.re - 6.0).abs() < 1e-4);
    }

    #[test]
    fn cot_pi_is_finite_far_from_the_axis() {
        let z = c(0.3, 0.7);
        assert!((cot_pi(z) - cos_pi(z) / sin_pi(z)).norm() < 1e-14);
        let z = c(0.3, -2.5);
        assert!((cot_pi(z) - cos_pi(z) / sin_pi(z)).norm() < 1e-14);
        assert!((cot_pi(c(0.25, 500.0)) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((cot_pi(c(0.25, -500.0)) - c(0.0, 1.0)).norm() < 1e-15);
    }

    fn off_poles(z: Cx<f64>) -> bool {
        z.im.abs() > 1e-3 || z.re > 0.5 || (z.re - z.re.round()).abs() > 1e-3
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(10_000))]
        #[test]
        fn recurrence(re in -20.0f64..20.0, im in -50.0f64..50.0) {
            let z = c(re, im);
            proptest::prop_assume!(off_poles(z) && off_poles(z + 1.0));
            let lhs = cgamma(z + 1.0).unwrap();
            let rhs = z * cgamma(z).unwrap();
            proptest::prop_assert!(rel(lhs, rhs) <= 1e-12, "{} vs {}", lhs, rhs);
        }

        #[test]
        fn reflection(re in -20.0f64..20.0, im in -50.0f64..50.0) {
            let z = c(re, im);
            proptest::prop_assume!(off_poles(z) && off_poles(cr(1.0) - z));
            let lhs = cgamma(z).unwrap() * cgamma(cr(1.0) - z).unwrap();
            let rhs = cr(std::f64::consts::PI) / sin_pi(z);
            proptest::prop_assert!(rel(lhs, rhs) <= 1e-10, "{} vs {}", lhs, rhs);
        }
    }
}
