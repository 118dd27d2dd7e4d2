//! Quadrature kernels for complex-valued integrands of a real parameter.
//!
//! * [`adaptive`]: globally adaptive Gauss–Kronrod (7/15) on a finite interval.
//! * [`semi_infinite`]: `∫_a^∞` as a chain of doubling panels, stopped by an
//!   envelope-based tail bound.
//! * [`tanh_sinh`]: double-exponential rule for endpoint singularities.
//! * [`circle_integral`]: trapezoid rule on a circle (spectrally accurate for
//!   analytic integrands).
//! * [`extrapolate`], [`richardson`]: limits of sequences with known error exponents.
//!
//! Every routine sums in a fixed order, so results are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::scalar::{c, cr, lit, Cx, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T: Real> {
    pub value: Cx<T>,
    /// Error estimate (absolute).
    pub error: T,
    /// `∫|f|`, used as a scale for relative tolerances and tail envelopes.
    pub l1: T,
    pub evals: usize,
}

/// Absolute/relative tolerance and an evaluation budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol<T: Real> {
    pub abs: T,
    pub rel: T,
    pub max_evals: usize,
}

impl<T: Real> Tol<T> {
    pub fn new(abs: T, rel: T) -> Self {
        Self { abs, rel, max_evals: 400_000 }
    }

    fn target(&self, value: Cx<T>) -> T {
        self.abs.max(self.rel * value.norm())
    }
}

/// One 15-point Kronrod panel: (value, error estimate, ∫|f|).
pub fn gk15<T: Real, F>(f: &mut F, a: T, b: T) -> Result<(Cx<T>, T, T)>
where
    F: FnMut(T) -> Result<Cx<T>>,
{
    let half: T = lit(0.5);
    let mid = (a + b) * half;
    let hw = (b - a) * half;
    let fc = f(mid)?;
    let mut rk = fc * lit::<T>(WGK[7]);
    let mut rg = fc * lit::<T>(WG[3]);
    let mut l1 = fc.norm() * lit::<T>(WGK[7]);
    for j in 0..7 {
        let dx = hw * lit::<T>(XGK[j]);
        let f1 = f(mid - dx)?;
        let f2 = f(mid + dx)?;
        let s = f1 + f2;
        rk += s * lit::<T>(WGK[j]);
        l1 += (f1.norm() + f2.norm()) * lit::<T>(WGK[j]);
        if j % 2 == 1 {
            rg += s * lit::<T>(WG[j / 2]);
        }
    }
    let val = rk * hw;
    let err = ((rk - rg) * hw).norm();
    Ok((val, err, l1 * hw.abs()))
}

/// Vector form of [`gk15`]: `f` returns `n` values per node, nodes are
/// evaluated in parallel and summed in node order. Returns (value, error, ∫|f|)
/// per component.
pub fn gk15_vec<T: Real, F>(f: &F, n: usize, a: T, b: T) -> Result<Vec<(Cx<T>, T, T)>>
where
    F: Fn(T) -> Result<Vec<Cx<T>>> + Sync,
{
    use rayon::prelude::*;
    let half: T = lit(0.5);
    let mid = (a + b) * half;
    let hw = (b - a) * half;
    // node order: centre, then (mid - dx_j, mid + dx_j) for j = 0..7
    let xs: Vec<T> = std::iter::once(mid)
        .chain((0..7).flat_map(|j| {
            let dx = hw * lit::<T>(XGK[j]);
            [mid - dx, mid + dx]
        }))
        .collect();
    let vals = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    if vals.iter().any(|v| v.len() != n) {
        return Err(Error::QuadratureFailure(format!("integrand returned a vector of the wrong length (want {n})")));
    }
    (0..n)
        .map(|k| {
            let fc = vals[0][k];
            let mut rk = fc * lit::<T>(WGK[7]);
            let mut rg = fc * lit::<T>(WG[3]);
            let mut l1 = fc.norm() * lit::<T>(WGK[7]);
            for j in 0..7 {
                let (f1, f2) = (vals[1 + 2 * j][k], vals[2 + 2 * j][k]);
                rk += (f1 + f2) * lit::<T>(WGK[j]);
                l1 += (f1.norm() + f2.norm()) * lit::<T>(WGK[j]);
                if j % 2 == 1 {
                    rg += (f1 + f2) * lit::<T>(WG[j / 2]);
                }
            }
            Ok((rk * hw, ((rk - rg) * hw).norm(), l1 * hw.abs()))
        })
        .collect()
}

#[derive(Clone, Copy)]
struct Panel<T: Real> {
    a: T,
    b: T,
    val: Cx<T>,
    err: T,
    l1: T,
}

/// Globally adaptive Gauss–Kronrod on `[a, b]`, bisecting the panel with the
/// largest error estimate until the total estimate meets `tol`.
pub fn adaptive<T: Real, F>(mut f: F, a: T, b: T, tol: Tol<T>) -> Result<QuadResult<T>>
where
    F: FnMut(T) -> Result<Cx<T>>,
{
    if a == b {
        return Ok(QuadResult { value: cr(T::zero()), error: T::zero(), l1: T::zero(), evals: 0 });
    }
    let (val, err, l1) = gk15(&mut f, a, b)?;
    let mut panels = vec![Panel { a, b, val, err, l1 }];
    let mut evals = 15;
    let min_width = (b - a).abs() * lit(1e-12);
    loop {
        let total: Cx<T> = panels.iter().fold(cr(T::zero()), |acc, p| acc + p.val);
        let total_err = panels.iter().fold(T::zero(), |acc, p| acc + p.err);
        let total_l1 = panels.iter().fold(T::zero(), |acc, p| acc + p.l1);
        // rounding floor: tolerances below eps·∫|f| cannot be met
        let floor = total_l1 * T::epsilon() * lit(50.0);
        if total_err <= tol.target(total).max(floor) {
            return Ok(QuadResult { value: total, error: total_err, l1: total_l1, evals });
        }
        if evals + 30 > tol.max_evals {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {:e} above target {:e} after {evals} evaluations",
                total_err.to_f64_lossy(),
                tol.target(total).to_f64_lossy()
            )));
        }
        let (k, _) =
            panels
                .iter()
                .enumerate()
                .fold((0usize, -T::one()), |best, (i, p)| if p.err > best.1 { (i, p.err) } else { best });
        let p = panels[k];
        let m = (p.a + p.b) * lit(0.5);
        if (p.b - p.a).abs() < min_width {
            return Err(Error::QuadratureFailure(format!(
                "panel [{:e}, {:e}] cannot be refined further",
                p.a.to_f64_lossy(),
                p.b.to_f64_lossy()
            )));
        }
        let (v1, e1, l1a) = gk15(&mut f, p.a, m)?;
        let (v2, e2, l1b) = gk15(&mut f, m, p.b)?;
        evals += 30;
        panels[k] = Panel { a: p.a, b: m, val: v1, err: e1, l1: l1a };
        panels.insert(k + 1, Panel { a: m, b: p.b, val: v2, err: e2, l1: l1b });
    }
}

/// `∫_a^∞ f(u) du` over panels of doubling width starting at `w0`.
///
/// Stops once the ∫|f| of the last panel, extrapolated geometrically, bounds the
/// remaining tail below `tol.abs / 10`; `SlowDecay` if `u_max` is reached first.
pub fn semi_infinite<T: Real, F>(mut f: F, a: T, w0: T, tol: Tol<T>, u_max: T) -> Result<QuadResult<T>>
where
    F: FnMut(T) -> Result<Cx<T>>,
{
    let mut lo = a;
    let mut width = w0;
    let mut total = cr(T::zero());
    let mut error = T::zero();
    let mut l1 = T::zero();
    let mut evals = 0;
    let mut prev_env: Option<T> = None;
    let ten: T = lit(10.0);
    loop {
        let hi = lo + width;
        let panel_tol = Tol { abs: tol.abs / ten, rel: tol.rel, max_evals: tol.max_evals };
        let r = adaptive(&mut f, lo, hi, panel_tol)?;
        total += r.value;
        error += r.error;
        l1 += r.l1;
        evals += r.evals;
        if let Some(pe) = prev_env {
            let ratio = if pe > T::zero() { r.l1 / pe } else { T::zero() };
            let scale = tol.abs.max(tol.rel * total.norm());
            let tail = if ratio < lit(0.9) { r.l1 * ratio / (T::one() - ratio) } else { T::infinity() };
            if tail <= scale / ten || r.l1 == T::zero() {
                return Ok(QuadResult { value: total, error: error + tail, l1, evals });
            }
        }
        prev_env = Some(r.l1);
        lo = hi;
        if lo - a >= u_max {
            return Err(Error::SlowDecay(format!(
                "tail envelope {:e} still above tolerance at distance {:e}",
                r.l1.to_f64_lossy(),
                (lo - a).to_f64_lossy()
            )));
        }
        width = width + width;
    }
}

/// Tanh-sinh quadrature on `[a, b]`; the integrand is never evaluated at the endpoints.
///
/// `f` receives `(x, distance to a, distance to b)` so that endpoint-singular
/// factors can be formed without cancellation.
pub fn tanh_sinh<T: Real, F>(mut f: F, a: T, b: T, tol: Tol<T>) -> Result<QuadResult<T>>
where
    F: FnMut(T, T, T) -> Result<Cx<T>>,
{
    let len = b - a;
    let half_pi = T::FRAC_PI_2();
    // nodes whose distance to an endpoint underflows are skipped
    let t_max: T = lit(6.0);
    let mut h = T::one();
    let mut evals = 0;
    let mut node = |t: T, evals: &mut usize| -> Result<(Cx<T>, T)> {
        let u = half_pi * t.sinh();
        let cu = u.cosh();
        let w = len * lit(0.5) * half_pi * t.cosh() / (cu * cu);
        // distance from the nearer endpoint, computed without cancellation
        let e2u = (u.abs() * lit(2.0)).exp();
        let d = len / (T::one() + e2u);
        if d <= T::zero() || !w.is_finite() || w == T::zero() {
            return Ok((cr(T::zero()), T::zero()));
        }
        let (x, da, db) = if u < T::zero() { (a + d, d, len - d) } else { (b - d, len - d, d) };
        *evals += 1;
        let v = f(x, da, db)?;
        Ok((v * w, v.norm() * w))
    };
    let (v0, n0) = node(T::zero(), &mut evals)?;
    let mut sum = v0;
    let mut l1 = n0;
    let mut k = 1usize;
    loop {
        let t = h * T::from_usize(k).unwrap();
        if t > t_max {
            break;
        }
        let (v1, n1) = node(t, &mut evals)?;
        let (v2, n2) = node(-t, &mut evals)?;
        sum += v1 + v2;
        l1 += n1 + n2;
        k += 1;
    }
    let mut estimate = sum * h;
    for level in 1..12 {
        h *= lit(0.5);
        let mut k = 1usize;
        loop {
            let t = h * T::from_usize(k).unwrap();
            if t > t_max {
                break;
            }
            let (v1, n1) = node(t, &mut evals)?;
            let (v2, n2) = node(-t, &mut evals)?;
            sum += v1 + v2;
            l1 += n1 + n2;
            k += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).norm();
        estimate = next;
        let floor = l1 * h * T::epsilon() * lit(50.0);
        if level >= 3 && diff <= tol.target(next).max(floor) {
            return Ok(QuadResult { value: next, error: diff, l1: l1 * h, evals });
        }
        if evals > tol.max_evals {
            break;
        }
    }
    Err(Error::QuadratureFailure(format!(
        "tanh-sinh did not converge on [{:e}, {:e}]",
        a.to_f64_lossy(),
        b.to_f64_lossy()
    )))
}

/// Vector-valued tanh-sinh on `[a, b]`: `f` returns `n` integrand values per node.
///
/// Nodes of each refinement level are evaluated in parallel and summed in node
/// order, so results do not depend on the thread count. Converged once every
/// component meets `tol`.
pub fn tanh_sinh_vec<T: Real, F>(f: F, n: usize, a: T, b: T, tol: Tol<T>) -> Result<Vec<QuadResult<T>>>
where
    F: Fn(T, T, T) -> Result<Vec<Cx<T>>> + Sync,
{
    use rayon::prelude::*;
    let len = b - a;
    let half_pi = T::FRAC_PI_2();
    let t_max: T = lit(6.0);
    let eval_level = |ts: Vec<T>| -> Result<Vec<(Vec<Cx<T>>, T)>> {
        let out: Vec<Result<(Vec<Cx<T>>, T)>> = ts
            .par_iter()
            .map(|&t| {
                let u = half_pi * t.sinh();
                let cu = u.cosh();
                let w = len * lit(0.5) * half_pi * t.cosh() / (cu * cu);
                let d = len / (T::one() + (u.abs() * lit(2.0)).exp());
                if d <= T::zero() || !w.is_finite() || w == T::zero() {
                    return Ok((vec![cr(T::zero()); n], T::zero()));
                }
                let (x, da, db) = if u < T::zero() { (a + d, d, len - d) } else { (b - d, len - d, d) };
                Ok((f(x, da, db)?, w))
            })
            .collect();
        out.into_iter().collect()
    };
    let nodes = |h: T, step: usize, first: usize| -> Vec<T> {
        let mut ts = Vec::new();
        let mut k = first;
        loop {
            let t = h * T::from_usize(k).unwrap();
            if t > t_max {
                break;
            }
            ts.push(t);
            if k > 0 {
                ts.push(-t);
            }
            k += step;
        }
        ts
    };
    let mut sums = vec![cr(T::zero()); n];
    let mut l1 = vec![T::zero(); n];
    let mut evals = 0;
    let mut absorb = |vals: Vec<(Vec<Cx<T>>, T)>, sums: &mut Vec<Cx<T>>, l1: &mut Vec<T>| {
        for (v, w) in vals {
            evals += 1;
            for k in 0..n {
                sums[k] += v[k] * w;
                l1[k] += v[k].norm() * w;
            }
        }
    };
    let mut h = T::one();
    absorb(eval_level(nodes(h, 1, 0))?, &mut sums, &mut l1);
    let mut estimate: Vec<Cx<T>> = sums.iter().map(|&v| v * h).collect();
    for level in 1..12 {
        h *= lit(0.5);
        absorb(eval_level(nodes(h, 2, 1))?, &mut sums, &mut l1);
        let next: Vec<Cx<T>> = sums.iter().map(|&v| v * h).collect();
        let diffs: Vec<T> = next.iter().zip(&estimate).map(|(x, y)| (*x - *y).norm()).collect();
        estimate = next;
        let done = (0..n).all(|k| {
            let floor = l1[k] * h * T::epsilon() * lit(50.0);
            diffs[k] <= tol.target(estimate[k]).max(floor)
        });
        if level >= 3 && done {
            return Ok((0..n)
                .map(|k| QuadResult { value: estimate[k], error: diffs[k], l1: l1[k] * h, evals })
                .collect());
        }
    }
    Err(Error::QuadratureFailure(format!(
        "vector tanh-sinh did not converge on [{:e}, {:e}]",
        a.to_f64_lossy(),
        b.to_f64_lossy()
    )))
}

/// Counter-clockwise `∮ f(z) dz` over `|z - center| = radius` with `n` nodes.
pub fn circle_integral<T: Real, F>(mut f: F, center: Cx<T>, radius: T, n: usize) -> Result<Cx<T>>
where
    F: FnMut(Cx<T>) -> Result<Cx<T>>,
{
    let mut acc = cr(T::zero());
    let nn = T::from_usize(n).unwrap();
    for k in 0..n {
        let phi = T::TAU() * T::from_usize(k).unwrap() / nn;
        let e = c(phi.cos(), phi.sin());
        acc += f(center + e * radius)? * c(T::zero(), radius) * e;
    }
    Ok(acc * (T::TAU() / nn))
}

/// Limit `L` of samples `v_i ≈ L + Σ_k c_k h_i^{p_k}`, solved exactly through the
/// first `exponents.len() + 1` samples.
pub fn extrapolate<T: Real>(hs: &[T], values: &[T], exponents: &[T]) -> Result<T> {
    let n = exponents.len() + 1;
    if hs.len() < n || values.len() < n {
        return Err(Error::InvalidParameter(format!(
            "extrapolation with {} exponents needs {n} samples",
            exponents.len()
        )));
    }
    let rows: Vec<Vec<T>> = hs[..n]
        .iter()
        .map(|&h| std::iter::once(T::one()).chain(exponents.iter().map(|&p| h.powf(p))).collect())
        .collect();
    Ok(solve_square(rows, values[..n].to_vec())?[0])
}

/// Solves the square system `Σ_k rows[i][k] x_k = rhs[i]` by Gaussian elimination
/// with partial pivoting.
pub fn solve_square<T: Real>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Result<Vec<T>> {
    let n = rhs.len();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter(format!("system is not {n}x{n}")));
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        let d = m[col][col];
        if d == T::zero() {
            return Err(Error::InvalidParameter("singular linear system".into()));
        }
        for row in col + 1..n {
            let factor = m[row][col] / d;
            for k in col..n {
                let v = m[col][k];
                m[row][k] -= factor * v;
            }
            let r = rhs[col];
            rhs[row] -= factor * r;
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

/// Classic Richardson: samples at `h_i = ratio^{-i}` with error terms `h, h², …, h^order`.
pub fn richardson<T: Real>(values: &[T], ratio: T, order: usize) -> Result<T> {
    let hs: Vec<T> = (0..values.len()).map(|i| ratio.powi(-(i as i32))).collect();
    let exps: Vec<T> = (1..=order).map(|k| T::from_usize(k).unwrap()).collect();
    let n = order + 1;
    if values.len() < n {
        return Err(Error::InvalidParameter(format!("order {order} needs {n} samples")));
    }
    let off = values.len() - n;
    extrapolate(&hs[off..], &values[off..], &exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn tol(abs: f64) -> Tol<f64> {
        Tol::new(abs, 1e-13)
    }

    #[test]
    fn gauss_kronrod_polynomials_and_oscillation() {
        let r = adaptive(|x: f64| Ok(cr(x.powi(7))), 0.0, 2.0, tol(1e-14)).unwrap();
        assert_relative_eq!(r.value.re, 32.0, max_relative = 1e-14);
        let r = adaptive(|x: f64| Ok(c(x.cos(), x.sin())), 0.0, 50.0, tol(1e-12)).unwrap();
        assert_relative_eq!(r.value.re, 50f64.sin(), epsilon = 1e-11);
        assert_relative_eq!(r.value.im, 1.0 - 50f64.cos(), epsilon = 1e-11);
    }

    #[test]
    fn semi_infinite_exponential_and_algebraic() {
        let r = semi_infinite(|u: f64| Ok(cr((-u).exp())), 0.0, 1.0, tol(1e-13), 1e4).unwrap();
        assert_relative_eq!(r.value.re, 1.0, max_relative = 1e-12);
        let r = semi_infinite(|u: f64| Ok(cr(1.0 / (1.0 + u).powi(4))), 0.0, 1.0, tol(1e-10), 1e6).unwrap();
        assert_relative_eq!(r.value.re, 1.0 / 3.0, max_relative = 1e-8);
        let e = semi_infinite(|u: f64| Ok(cr(1.0 / (1.0 + u))), 0.0, 1.0, tol(1e-10), 1e3);
        assert!(matches!(e, Err(Error::SlowDecay(_))));
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        // ∫_0^1 x^{-1/2} dx = 2, ∫_0^1 log(x) dx = -1
        let r = tanh_sinh(|_x: f64, da, _| Ok(cr(da.powf(-0.5))), 0.0, 1.0, tol(1e-12)).unwrap();
        assert_relative_eq!(r.value.re, 2.0, max_relative = 1e-11);
        let r = tanh_sinh(|_x: f64, da, _| Ok(cr(da.ln())), 0.0, 1.0, tol(1e-12)).unwrap();
        assert_relative_eq!(r.value.re, -1.0, max_relative = 1e-11);
        // (1-x)^{-0.9} on [0,1] has integral 10
        let r = tanh_sinh(|_x: f64, _, db| Ok(cr(db.powf(-0.9))), 0.0, 1.0, tol(1e-9)).unwrap();
        assert_relative_eq!(r.value.re, 10.0, max_relative = 1e-8);
    }

    #[test]
    fn circle_rule_gives_residues() {
        let z0 = c(0.3, -0.2);
        let v = circle_integral(|z: Cx<f64>| Ok(z.exp() / (z - z0)), c(0.0, 0.0), 1.0, 64).unwrap();
        let expected = c(0.0, std::f64::consts::TAU) * z0.exp();
        assert!((v - expected).norm() < 1e-13);
        let v = circle_integral(|z: Cx<f64>| Ok(z.exp()), c(0.0, 0.0), 1.0, 64).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn extrapolation_recovers_non_integer_exponents() {
        let f = |h: f64| 2.0 + 3.0 * h.powf(0.5) - h.powf(1.5);
        let hs: Vec<f64> = (0..3).map(|i| 0.1 / 2f64.powi(i)).collect();
        let vs: Vec<f64> = hs.iter().map(|&h| f(h)).collect();
        assert_relative_eq!(extrapolate(&hs, &vs, &[0.5, 1.5]).unwrap(), 2.0, max_relative = 1e-12);
        let vs: Vec<f64> = (0..5).map(|i| 1.0 + 0.5f64.powi(i) + 0.25f64.powi(i)).collect();
        assert_relative_eq!(richardson(&vs, 2.0, 2).unwrap(), 1.0, max_relative = 1e-12);
    }

    proptest! {
        #[test]
        fn adaptive_matches_antiderivative(a in -3.0f64..3.0, w in 0.1f64..5.0, k in 0.1f64..4.0) {
            let b = a + w;
            let r = adaptive(|x: f64| Ok(cr((k * x).sin())), a, b, tol(1e-13)).unwrap();
            let exact = ((k * a).cos() - (k * b).cos()) / k;
            prop_assert!((r.value.re - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn vector_tanh_sinh_matches_scalar() {
        let f = |x: f64, db: f64| vec![cr(x.powf(-0.5)), cr(db.ln())];
        let r = tanh_sinh_vec(|x, _, db| Ok(f(x, db)), 2, 0.0, 1.0, Tol::new(1e-11, 1e-11)).unwrap();
        assert_relative_eq!(r[0].value.re, 2.0, max_relative = 1e-10);
        assert_relative_eq!(r[1].value.re, -1.0, max_relative = 1e-10);
    }

    #[test]
    fn vector_panel_matches_scalar() {
        let mut g = |x: f64| -> Result<Cx<f64>> { Ok(cr(x.exp())) };
        let (want, _, _) = gk15(&mut g, 0.0, 2.0).unwrap();
        let f = |x: f64| -> Result<Vec<Cx<f64>>> { Ok(vec![cr(x.exp()), c(0.0, x * x)]) };
        let r = gk15_vec(&f, 2, 0.0, 2.0).unwrap();
        assert_eq!(r[0].0, want);
        assert!((r[1].0.im - 8.0 / 3.0).abs() < 1e-14 && r[1].1 < 1e-12);
    }

    #[test]
    fn square_solve() {
        let x = solve_square(vec![vec![2.0, 1.0], vec![1.0, 3.0]], vec![3.0, 5.0]).unwrap();
        assert_relative_eq!(x[0], 0.8, max_relative = 1e-14);
        assert_relative_eq!(x[1], 1.4, max_relative = 1e-14);
    }
}
