//! Sign-change scanner for real densities on log-spaced grids.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Params;

/// Log-spaced grid `lo .. hi` with `per_decade` points per decade.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogGrid {
    pub lo: f64,
    pub hi: f64,
    pub per_decade: usize,
}

/// Points per decade of the default scan grid.
pub const DEFAULT_PER_DECADE: usize = 512;
/// Bisection stops at this relative bracket width.
pub const BRACKET_WIDTH: f64 = 1e-10;

impl LogGrid {
    pub fn new(lo: f64, hi: f64, per_decade: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) || per_decade == 0 {
            return Err(Error::Domain(format!("log grid needs 0 < lo < hi < inf, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi, per_decade })
    }

    /// `decades` decades upwards from `lo` at the default density.
    pub fn decades(lo: f64, decades: f64) -> Result<Self> {
        Self::new(lo, lo * 10f64.powf(decades), DEFAULT_PER_DECADE)
    }

    /// Grid points, both ends included.
    pub fn points(&self) -> Vec<f64> {
        let span = (self.hi / self.lo).log10();
        let n = ((span * self.per_decade as f64).ceil() as usize).max(1);
        let (l0, l1) = (self.lo.ln(), self.hi.ln());
        (0..=n).map(|k| (l0 + (l1 - l0) * k as f64 / n as f64).exp()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// No sign change and no value below zero.
    Nonnegative,
    /// At least one certified bracket `f(lo) f(hi) < 0`.
    Oscillates,
    /// No bracket, but negative values within tolerance of 0 (or the critical θ = 1).
    Inconclusive,
}

/// An interval on which the scanned function changes sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn is_certified(&self) -> bool {
        self.f_lo * self.f_hi < 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignReport {
    pub min_value: f64,
    pub argmin: f64,
    pub brackets: Vec<Bracket>,
    pub verdict: Verdict,
    /// Number of evaluated points (grid plus probes).
    pub points: usize,
    /// Points where evaluation failed; they are skipped.
    pub failures: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Values in `[-tol, 0)` without a bracket give `Inconclusive`.
    pub tol: f64,
    pub bracket_width: f64,
    /// θ = 1: no bracket means `Inconclusive` whatever the minimum.
    pub critical: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { tol: 1e-8, bracket_width: BRACKET_WIDTH, critical: false }
    }
}

impl ScanOptions {
    pub fn for_params(p: &Params) -> Self {
        Self { critical: p.is_critical(), ..Self::default() }
    }
}

/// Points `e^{±kπ/ζ}` inside `[lo, hi]`, `ζ = Im σ₂`, where the leading
/// oscillating term `cos(ζ ln x + φ)` of the density alternates; empty for θ <= 1.
pub fn oscillation_probes(p: &Params, lo: f64, hi: f64) -> Vec<f64> {
    let zeta = p.sigma2.im;
    if !(zeta > 0.0) || !(lo > 0.0 && hi > lo) {
        return vec![];
    }
    let step = std::f64::consts::PI / zeta;
    let k0 = (lo.ln() / step).ceil() as i64;
    let k1 = (hi.ln() / step).floor() as i64;
    (k0..=k1).map(|k| (k as f64 * step).exp()).collect()
}

/// Scans `f` on `grid` plus `probes`, brackets every sign change between
/// neighbouring points and bisects it to relative width `opts.bracket_width`.
pub fn sign_scan<F>(f: F, grid: &LogGrid, probes: &[f64], opts: ScanOptions) -> Result<SignReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let mut xs = grid.points();
    xs.extend(probes.iter().copied().filter(|&x| x >= grid.lo && x <= grid.hi));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let values: Vec<Option<f64>> = xs.par_iter().map(|&x| f(x).ok().filter(|v| v.is_finite())).collect();

    let samples: Vec<(f64, f64)> = xs.iter().zip(&values).filter_map(|(&x, v)| v.map(|v| (x, v))).collect();
    let failures = xs.len() - samples.len();
    let Some(&(argmin, min_value)) = samples.iter().min_by(|a, b| a.1.total_cmp(&b.1)) else {
        return Err(Error::Domain("sign scan: no grid point could be evaluated".into()));
    };
    let coarse: Vec<Bracket> = samples
        .windows(2)
        .filter(|w| w[0].1 * w[1].1 < 0.0)
        .map(|w| Bracket { lo: w[0].0, hi: w[1].0, f_lo: w[0].1, f_hi: w[1].1 })
        .collect();
    let brackets: Vec<Bracket> = coarse.into_par_iter().map(|b| bisect(&f, b, opts.bracket_width)).collect();

    let verdict = if !brackets.is_empty() {
        Verdict::Oscillates
    } else if opts.critical || min_value < 0.0 {
        Verdict::Inconclusive
    } else {
        Verdict::Nonnegative
    };
    Ok(SignReport { min_value, argmin, brackets, verdict, points: xs.len(), failures })
}

/// Geometric bisection; a failed or zero midpoint value ends refinement early.
fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, mut b: Bracket, width: f64) -> Bracket {
    while b.hi - b.lo > width * b.lo {
        let mid = (b.lo * b.hi).sqrt();
        match f(mid) {
            Ok(v) if v.is_finite() && v != 0.0 => {
                if v * b.f_lo < 0.0 {
                    b.hi = mid;
                    b.f_hi = v;
                } else {
                    b.lo = mid;
                    b.f_lo = v;
                }
            }
            _ => break,
        }
    }
    b
}
