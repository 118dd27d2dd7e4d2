//! Measures with exact atoms and a density, and integrals against them.

use super::local::{limit_profile, transported_atom, u_density_unchecked, Atom};
use super::negative::NegativeDensity;
use super::omega::OmegaDensity;
use crate::error::{Error, Result};
use crate::mellin::{omega, omega_limit, u2, u_real};
use crate::quad::{tanh_sinh_vec, Tol};
use crate::scalar::cr;
use crate::{Params, C64};

/// Densities are treated as zero beyond this point (every density here decays
/// at least like `x^{-Re σ₂-γ}`).
pub const FAR_FIELD: f64 = 1e100;

/// Which solution a [`MeasureSolution`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SolutionFamily {
    /// u before blow-up, `γ > 0`.
    Local,
    /// The limit profile at `γt = 1`.
    Limit,
    /// ω after blow-up.
    Extended,
    /// v for `γ < 0`.
    Negative,
}

#[derive(Debug, Clone)]
enum Model {
    Local,
    Limit,
    Omega(Box<OmegaDensity>),
    Negative(Box<NegativeDensity>),
}

/// A physical solution at one time: atoms plus a density on `(0, support_upper)`.
#[derive(Debug, Clone)]
pub struct MeasureSolution {
    pub params: Params,
    pub time: f64,
    pub atoms: Vec<Atom>,
    /// Right end of the density support (`∞` when unbounded).
    pub support_upper: f64,
    model: Model,
}

impl MeasureSolution {
    /// u(t) for `γ > 0`, `0 <= γt < 1`.
    pub fn u(p: &Params, t: f64) -> Result<Self> {
        if p.gamma <= 0.0 || !(t >= 0.0) || !(p.gamma * t < 1.0) {
            return Err(Error::Domain(format!(
                "u needs gamma > 0 and 0 <= gamma t < 1, got gamma t = {}",
                p.gamma * t
            )));
        }
        let atom = transported_atom(p, t)?;
        Ok(Self { params: *p, time: t, atoms: vec![atom], support_upper: atom.location, model: Model::Local })
    }

    /// The limit profile at `t = 1/γ`.
    pub fn limit(p: &Params) -> Result<Self> {
        if p.gamma <= 0.0 {
            return Err(Error::Domain("limit profile needs gamma > 0".into()));
        }
        Ok(Self { params: *p, time: 1.0 / p.gamma, atoms: vec![], support_upper: f64::INFINITY, model: Model::Limit })
    }

    /// ω(t) for `γ > 0`, `γt > 1`.
    pub fn omega(p: &Params, t: f64) -> Result<Self> {
        let w = OmegaDensity::new(p, t)?;
        Ok(Self { params: *p, time: t, atoms: vec![], support_upper: f64::INFINITY, model: Model::Omega(Box::new(w)) })
    }

    /// v(t) for `γ < 0`, `0 < -γt < 1`.
    pub fn v(p: &Params, t: f64) -> Result<Self> {
        let d = NegativeDensity::new(p, t)?;
        let atom = d.atom();
        Ok(Self {
            params: *p,
            time: t,
            atoms: vec![atom],
            support_upper: atom.location,
            model: Model::Negative(Box::new(d)),
        })
    }

    /// The global solution w(t) for `γ > 0`, or v(t) for `γ < 0`.
    pub fn at(p: &Params, t: f64) -> Result<Self> {
        if p.gamma < 0.0 {
            return Self::v(p, t);
        }
        let gt = p.gamma * t;
        if (gt - 1.0).abs() <= super::local::JUNCTION_WINDOW {
            Self::limit(p)
        } else if gt < 1.0 {
            Self::u(p, t)
        } else {
            Self::omega(p, t)
        }
    }

    pub fn family(&self) -> SolutionFamily {
        match self.model {
            Model::Local => SolutionFamily::Local,
            Model::Limit => SolutionFamily::Limit,
            Model::Omega(_) => SolutionFamily::Extended,
            Model::Negative(_) => SolutionFamily::Negative,
        }
    }

    /// Density at `x`; zero outside `(0, support_upper]`.
    pub fn density(&self, x: f64) -> Result<f64> {
        self.density_with(x, 1e-10)
    }

    /// Density at `x` to absolute tolerance `tol` where that is adjustable.
    pub fn density_with(&self, x: f64, tol: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("x must be > 0, got {x}")));
        }
        if x > self.support_upper {
            return Ok(0.0);
        }
        match &self.model {
            Model::Local => u_density_unchecked(&self.params, self.time, x),
            Model::Limit => limit_profile(&self.params, x),
            Model::Omega(w) => w.eval_with(x, tol),
            Model::Negative(v) => Ok(v.eval_with(x, tol)?.value),
        }
    }

    /// Interior points where the density is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.model {
            Model::Negative(v) => vec![v.injection_edge()],
            _ => vec![],
        }
    }

    /// Closed-form Mellin transform of the same solution.
    pub fn mellin_closed(&self, s: C64) -> Result<C64> {
        let (p, t) = (&self.params, self.time);
        match self.model {
            Model::Local => omega(p, t, s),
            Model::Limit => omega_limit(p, s),
            Model::Omega(_) => u_real(p, t, s),
            Model::Negative(_) => u2(p, t, s),
        }
    }

    /// `∫_{(lo,hi)} g_k dμ` for `k < n`: atoms in `(lo, hi)` exactly, the density by
    /// tanh-sinh on each smooth piece (`hi = ∞` is mapped to a finite interval).
    pub fn integrate<G>(&self, g: G, n: usize, lo: f64, hi: f64, tol: f64) -> Result<Vec<C64>>
    where
        G: Fn(f64) -> Vec<C64> + Sync,
    {
        self.integrate_with_cuts(g, n, lo, hi, &[], tol)
    }

    /// [`integrate`](Self::integrate) with extra points where `g` is not smooth.
    pub fn integrate_with_cuts<G>(&self, g: G, n: usize, lo: f64, hi: f64, extra: &[f64], tol: f64) -> Result<Vec<C64>>
    where
        G: Fn(f64) -> Vec<C64> + Sync,
    {
        let mut out = vec![cr(0.0); n];
        for a in &self.atoms {
            if a.location > lo && a.location < hi {
                for (o, v) in out.iter_mut().zip(g(a.location)) {
                    *o += v * a.weight;
                }
            }
        }
        let top = hi.min(self.support_upper);
        let mut cuts = vec![lo];
        cuts.extend(self.breakpoints().into_iter().chain(extra.iter().copied()).filter(|&b| b > lo && b < top));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let q = Tol::new(tol, tol);
        let density_tol = (0.1 * tol).clamp(1e-11, 1e-8);
        if top.is_finite() {
            cuts.push(top);
        } else {
            // finite part up to X, then x = X/y on (0,1)
            let x_split = cuts.last().copied().unwrap_or(1.0).max(1.0) * 2.0;
            cuts.push(x_split);
            let r = tanh_sinh_vec(
                |y, _, _| {
                    let x = x_split / y;
                    if x > FAR_FIELD {
                        return Ok(vec![cr(0.0); n]);
                    }
                    let d = self.density_with(x, density_tol)?;
                    Ok(g(x).into_iter().map(|v| v * (d * x * (x / x_split))).collect())
                },
                n,
                0.0,
                1.0,
                q,
            )?;
            for (o, v) in out.iter_mut().zip(r) {
                *o += v.value;
            }
        }
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let len = b - a;
            let r = tanh_sinh_vec(
                |x, da, db| {
                    // nodes close to an end carry little weight and tolerate a looser density
                    let node_tol = (1e-12 * len / da.min(db)).clamp(density_tol, 1e-6);
                    let d = self.density_with(x, node_tol)?;
                    Ok(g(x).into_iter().map(|v| v * d).collect())
                },
                n,
                a,
                b,
                q,
            )?;
            for (o, v) in out.iter_mut().zip(r) {
                *o += v.value;
            }
        }
        Ok(out)
    }

    /// Numerical Mellin transform `Σ w_a x_a^{s-1} + ∫ x^{s-1} ρ(x) dx` at each `s`.
    pub fn forward_mellin(&self, s: &[C64], tol: f64) -> Result<Vec<C64>> {
        self.integrate(|x| s.iter().map(|&z| ((z - 1.0) * x.ln()).exp()).collect(), s.len(), 0.0, f64::INFINITY, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mellin::series_oracle;
    use crate::scalar::c;

    fn params(g: f64, th: f64) -> Params {
        Params::new(g, th).unwrap()
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn total_mass_matches_oracle() {
        let p = params(1.0, 2.0);
        let u = MeasureSolution::u(&p, 0.5).unwrap();
        let m = u.forward_mellin(&[cr(1.0)], 1e-12).unwrap()[0];
        let o = series_oracle(&p, 0.5, cr(1.0), 200).unwrap().value;
        assert!(rel(m, o) < 1e-9, "{m} vs {o}");
    }

    #[test]
    fn local_round_trip() {
        let p = params(1.0, 0.75);
        let u = MeasureSolution::u(&p, 0.6).unwrap();
        let s = [cr(0.5), c(1.5, 2.0), cr(3.0)];
        let m = u.forward_mellin(&s, 1e-12).unwrap();
        for (k, &z) in s.iter().enumerate() {
            assert!(rel(m[k], u.mellin_closed(z).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn negative_round_trip() {
        let p = params(-1.0, 0.75);
        let v = MeasureSolution::v(&p, 0.3).unwrap();
        let m = v.forward_mellin(&[cr(2.0)], 1e-10).unwrap()[0];
        let want = v.mellin_closed(cr(2.0)).unwrap();
        assert!(rel(m, want) < 1e-7, "{m} vs {want}");
    }

    #[test]
    fn extended_and_limit_mass() {
        let p = params(1.0, 0.75);
        for sol in [MeasureSolution::limit(&p).unwrap(), MeasureSolution::omega(&p, 2.0).unwrap()] {
            let m = sol.forward_mellin(&[cr(1.2)], 1e-10).unwrap()[0];
            let want = sol.mellin_closed(cr(1.2)).unwrap();
            assert!(rel(m, want) < 1e-7, "{:?}: {m} vs {want}", sol.family());
        }
    }
}
