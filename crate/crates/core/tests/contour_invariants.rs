//! Inverse Mellin transform: moving the line of integration.
//!
//! `U(t,·)` is used rather than Ω: for γt < 1 the transported atom contributes a
//! term `x₀^{s-1}` that does not decay along vertical lines, while `U` decays like
//! `e^{-π|Im s|/γ}` and is pole-free on `0 < Re s < Re σ₂ + γ`.

use gfrag_core::contour::inverse_mellin;
use gfrag_core::mellin::{u_closed, u_residue_right};
use gfrag_core::scalar::rel_err_strict;
use gfrag_core::{Params, C64};

fn invert(p: &Params, t: f64, s0: f64, x: f64) -> C64 {
    inverse_mellin(|s| u_closed(p, t, s), s0, x, 1e-11).unwrap().value
}

#[test]
fn inverse_transform_is_path_independent_inside_the_strip() {
    let p = Params::new(1.0, 0.75).unwrap();
    for x in [0.3, 1.0, 4.0] {
        let reference = invert(&p, 2.0, 1.0, x);
        for s0 in [0.5, 2.0] {
            let v = invert(&p, 2.0, s0, x);
            assert!(rel_err_strict(v, reference) < 1e-7, "x={x} s0={s0}: {v} vs {reference}");
        }
    }
}

#[test]
fn crossing_a_pole_moves_the_residue() {
    // first right pole at σ₂ + γ
    for (g, theta, t) in [(1.0, 0.75, 2.0), (2.0, 0.5, 1.0)] {
        let p = Params::new(g, theta).unwrap();
        let pole = p.sigma2.re + g;
        let res = u_residue_right(&p, t, 0).unwrap();
        for x in [0.5, 2.0] {
            let left = invert(&p, t, pole - 0.5, x);
            let right = invert(&p, t, pole + 0.5, x);
            // moving the line leftwards across the pole subtracts its contribution
            let jump = res * x.powf(-pole);
            let e = (left - (right - jump)).norm() / right.norm().max(jump.norm());
            assert!(e < 1e-8, "g={g} th={theta} x={x}: {left} vs {right} - {jump}");
        }
    }
}
