//! Physical-space invariants of ω after blow-up.

use gfrag_core::physical::omega::OmegaDensity;
use gfrag_core::Params;

/// Least-squares `(a, b)` in `y ≈ a cos φ + b sin φ`, with the worst relative residual.
fn fit_oscillation(phis: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let (mut cc, mut ss, mut cs, mut yc, mut ys_) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&f, &y) in phis.iter().zip(ys) {
        let (s, c) = f.sin_cos();
        cc += c * c;
        ss += s * s;
        cs += c * s;
        yc += y * c;
        ys_ += y * s;
    }
    let det = cc * ss - cs * cs;
    let a = (yc * ss - ys_ * cs) / det;
    let b = (ys_ * cc - yc * cs) / det;
    let amp = a.hypot(b);
    let worst = phis.iter().zip(ys).map(|(&f, &y)| (y - a * f.cos() - b * f.sin()).abs() / amp).fold(0.0, f64::max);
    (a, b, worst)
}

fn wrap(d: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    (d + tau / 2.0).rem_euclid(tau) - tau / 2.0
}

#[test]
fn large_x_oscillation_follows_the_complex_root() {
    for (g, theta, t) in [(1.0, 2.0, 2.0), (1.0, 4.0, 1.5), (2.0, 2.0, 1.0)] {
        let p = Params::new(g, theta).unwrap();
        let w = OmegaDensity::new(&p, t).unwrap();
        let (re, zeta) = (p.sigma2.re + g, p.sigma2.im);
        let xs: Vec<f64> = (0..=40).map(|k| 10f64.powf(2.0 + 2.0 * k as f64 / 40.0)).collect();
        let phis: Vec<f64> = xs.iter().map(|x| zeta * x.ln()).collect();
        let scaled = |f: &dyn Fn(f64) -> f64| -> Vec<f64> { xs.iter().map(|&x| f(x) * x.powf(re)).collect() };
        let measured = scaled(&|x| w.eval(x).unwrap());
        let leading = scaled(&|x| w.large_x_leading(x).unwrap());
        let (a, b, worst) = fit_oscillation(&phis, &measured);
        let (a0, b0, _) = fit_oscillation(&phis, &leading);
        // a fixed envelope exponent leaves only the O(x^{-γ}) corrections
        assert!(worst < 0.05, "g={g} th={theta}: residual {worst}");
        let dphase = wrap(b.atan2(a) - b0.atan2(a0));
        assert!(dphase.abs() <= 0.1, "g={g} th={theta}: phase off by {dphase}");
        let ratio = a.hypot(b) / a0.hypot(b0);
        assert!((ratio - 1.0).abs() < 0.05, "g={g} th={theta}: amplitude ratio {ratio}");
    }
}
