//! Mellin-domain invariants over randomised parameters.

use std::f64::consts::PI;

use gfrag_core::mellin::{fe_residual, omega, omega_forms, series_oracle, u2, u_closed, SolutionKind};
use gfrag_core::scalar::{c, rel_err};
use gfrag_core::{Error, Params, Solution, C64};
use proptest::prelude::*;

const GAMMAS: [f64; 5] = [0.5, 1.0, 2.0, -0.5, -1.0];

fn strip_point() -> impl Strategy<Value = C64> {
    (0.3f64..3.5, -2.0f64..2.0).prop_map(|(re, im)| c(re, im))
}

/// Keeps `s` and `s+γ` away from the lattice `-mγ`, where Ω has poles by design.
fn off_lattice(s: C64, g: f64) -> bool {
    [s, s + g].iter().all(|z| {
        let w = *z / g;
        (w - c(w.re.round(), 0.0)).norm() > 0.05
    })
}

fn not_a_pole<T>(r: &gfrag_core::Result<T>) -> bool {
    !matches!(r, Err(Error::PoleProximity { .. }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn omega_satisfies_functional_equation(gi in 0usize..5, theta in 0.2f64..4.0, frac in 0.05f64..0.95, s in strip_point()) {
        let g = GAMMAS[gi];
        prop_assume!(off_lattice(s, g));
        let p = Params::new(g, theta).unwrap();
        let t_end = 1.0 / g.abs();
        let t = frac * t_end;
        let sol = Solution::new(SolutionKind::Omega, p, t);
        let r = fe_residual(&sol, s, 1e-4 * t.min(t_end - t));
        prop_assume!(not_a_pole(&r));
        let r = r.unwrap();
        prop_assert!(r <= 1e-5, "residual {r:e} at g={g} th={theta} t={t} s={s}");
    }

    #[test]
    fn long_time_solutions_satisfy_functional_equation(gi in 0usize..5, theta in 0.2f64..4.0, gt in 1.05f64..4.0, s in strip_point()) {
        let g = GAMMAS[gi];
        let p = Params::new(g, theta).unwrap();
        let (kind, t, h) = if g > 0.0 {
            (SolutionKind::U, gt / g, 1e-4 * (gt - 1.0) / g)
        } else {
            // U₂ lives on the same interval as Ω for γ < 0
            let t = (gt - 1.0) / 3.0 / g.abs();
            (SolutionKind::U2, t, 1e-4 * t.min(1.0 / g.abs() - t))
        };
        let r = fe_residual(&Solution::new(kind, p, t), s, h);
        prop_assume!(not_a_pole(&r));
        let r = r.unwrap();
        prop_assert!(r <= 1e-5, "{kind:?} residual {r:e} at g={g} th={theta} t={t} s={s}");
    }

    #[test]
    fn omega_matches_series_oracle(gi in 0usize..5, theta in 0.2f64..4.0, gt in 0.01f64..0.8, s in strip_point()) {
        let g = GAMMAS[gi];
        prop_assume!(off_lattice(s, g));
        let p = Params::new(g, theta).unwrap();
        let t = gt / g.abs();
        let w = omega(&p, t, s);
        prop_assume!(not_a_pole(&w));
        let oracle = series_oracle(&p, t, s, 500).unwrap().value;
        let e = rel_err(w.unwrap(), oracle);
        prop_assert!(e <= 1e-9, "rel err {e:e} at g={g} th={theta} t={t} s={s}");
    }

    #[test]
    fn omega_forms_agree(gi in 0usize..5, theta in 0.2f64..4.0, frac in 0.01f64..0.99, s in strip_point()) {
        let g = GAMMAS[gi];
        prop_assume!(off_lattice(s, g));
        let p = Params::new(g, theta).unwrap();
        let r = omega_forms(&p, frac / g.abs(), s);
        prop_assume!(not_a_pole(&r));
        let (a, b) = r.unwrap();
        prop_assert!(rel_err(a, b) <= 1e-9, "{a} vs {b}");
    }
}

/// Least-squares fit of `y = a + b v + k ln v`; returns `b`.
#[allow(clippy::needless_range_loop)] // index form mirrors the elimination
fn fit_rate(vs: &[f64], ys: &[f64]) -> f64 {
    let rows: Vec<[f64; 3]> = vs.iter().map(|&v| [1.0, v, v.ln()]).collect();
    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for (r, &y) in rows.iter().zip(ys) {
        for i in 0..3 {
            rhs[i] += r[i] * y;
            for j in 0..3 {
                m[i][j] += r[i] * r[j];
            }
        }
    }
    // Gaussian elimination; the 3x3 normal matrix is well conditioned on [10, 200]
    for col in 0..3 {
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for j in col..3 {
                m[row][j] -= f * m[col][j];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let tail: f64 = (i + 1..3).map(|j| m[i][j] * x[j]).sum();
        x[i] = (rhs[i] - tail) / m[i][i];
    }
    x[1]
}

#[test]
fn u_decays_like_exp_minus_pi_v_over_gamma() {
    // (γ, θ, t, v_max); for γ = 1/2 the modulus leaves the f64 range beyond v ≈ 110
    for (g, theta, t, v_max) in
        [(1.0, 0.75, 2.0, 200.0), (1.0, 2.0, 1.5, 200.0), (2.0, 0.75, 1.0, 200.0), (0.5, 0.75, 4.0, 100.0)]
    {
        let p = Params::new(g, theta).unwrap();
        for s0 in [0.5, 1.0] {
            let vs: Vec<f64> = (0..=38).map(|k| 10.0 + 5.0 * k as f64).filter(|&v| v <= v_max).collect();
            let mut ys = vec![];
            for &v in &vs {
                for sign in [1.0, -1.0] {
                    let u = u_closed(&p, t, c(s0, sign * v)).unwrap().norm();
                    assert!(u > 0.0 && u.is_finite(), "g={g} th={theta} v={v}");
                    if sign > 0.0 {
                        ys.push(u.ln());
                    } else {
                        // conjugate symmetry only for real roots; the rate is the same either way
                        assert!(u.ln() < -PI * v / g + 20.0, "g={g} th={theta} v=-{v}: {}", u.ln());
                    }
                }
            }
            // the modulus dips at near-zeros of the hypergeometric factor; the bound
            // concerns the upper envelope, taken monotone from the right
            for i in (0..ys.len() - 1).rev() {
                ys[i] = ys[i].max(ys[i + 1]);
            }
            let rate = fit_rate(&vs, &ys);
            assert!((rate + PI / g).abs() < 0.01 * PI / g, "g={g} th={theta} s0={s0}: rate {rate}");
            // what is left after removing the exponential grows at most polynomially
            let z0 = ys[0] + PI * vs[0] / g;
            for (&v, &y) in vs.iter().zip(&ys) {
                let z = y + PI * v / g;
                assert!(z - z0 <= 3.0 * (v / vs[0]).ln(), "g={g} th={theta} s0={s0} v={v}: {z} vs {z0}");
            }
        }
    }
}

#[test]
fn u2_has_no_poles_on_the_lattice() {
    for (g, theta, t) in [(-1.0, 0.75, 0.3), (-1.0, 2.0, 0.5), (-0.5, 0.75, 1.0)] {
        let p = Params::new(g, theta).unwrap();
        for m in 0..3 {
            let centre = c(-(m as f64) * g, 0.0);
            let ring = |r: f64| -> f64 {
                (0..64)
                    .map(|k| {
                        let phi = 2.0 * PI * k as f64 / 64.0 + 0.05;
                        u2(&p, t, centre + c(phi.cos(), phi.sin()) * r).unwrap().norm()
                    })
                    .fold(0.0, f64::max)
            };
            let (near, far) = (ring(0.01), ring(0.1));
            assert!(near <= 10.0 * far, "g={g} th={theta} m={m}: {near} vs {far}");
        }
    }
}
