//! The verification suites. Each returns a full report; evaluation errors
//! become failed cases, never aborts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::report::{Case, CaseParams, Check, Environment, VerificationReport};
use crate::error::{Error, Result};
use crate::mellin::{
    fe_residual, omega, omega_forms, omega_limit, series_oracle, u2, u_real, MellinSolution, SolutionKind,
};
use crate::physical::{
    default_ladder, global_w, limit_profile, moment_asymptotics, oscillation_probes, sign_scan, LogGrid,
    MeasureSolution, ScanOptions, SignReport,
};
use crate::scalar::{c, cr, rel_err};
use crate::{Params, C64};

/// Default seed of every suite.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Names accepted by [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SuiteName {
    MellinCore,
    Blowup,
    NonexistenceEvidence,
    Stitching,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] = [Self::MellinCore, Self::Blowup, Self::NonexistenceEvidence, Self::Stitching];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::MellinCore => "mellin-core",
            Self::Blowup => "blowup",
            Self::NonexistenceEvidence => "nonexistence-evidence",
            Self::Stitching => "stitching",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s || n.as_str().replace('-', "_") == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// Runs one suite for a single parameter pair (`mellin-core` uses the pair as a
/// one-point grid).
pub fn run_suite(name: SuiteName, p: &Params, seed: u64) -> Result<VerificationReport> {
    match name {
        SuiteName::MellinCore => suite_mellin_core(&MellinGrid {
            gammas: vec![p.gamma],
            thetas: vec![p.theta],
            seed,
            ..MellinGrid::default()
        }),
        SuiteName::Blowup => suite_blowup(p, &BLOWUP_ORDERS, seed),
        SuiteName::NonexistenceEvidence => suite_nonexistence_evidence(p, CONTROL_THETA, seed),
        SuiteName::Stitching => suite_stitching(p, seed),
    }
}

fn cp(p: &Params) -> CaseParams {
    CaseParams { gamma: p.gamma, theta: p.theta }
}

fn report(suite: &str, cases: Vec<Case>, seed: u64, grids: Vec<String>) -> Result<VerificationReport> {
    VerificationReport::new(suite, cases, Environment::new(seed, grids))
}

/// Parameter grid of [`suite_mellin_core`].
#[derive(Debug, Clone, PartialEq)]
pub struct MellinGrid {
    pub gammas: Vec<f64>,
    pub thetas: Vec<f64>,
    pub n_t: usize,
    pub n_s: usize,
    pub seed: u64,
}

impl Default for MellinGrid {
    fn default() -> Self {
        Self {
            gammas: vec![0.5, 1.0, 2.0],
            thetas: vec![0.5, 0.75, 1.0, 2.0, 4.0],
            n_t: 10,
            n_s: 10,
            seed: DEFAULT_SEED,
        }
    }
}

/// Largest `|γ|t` of the short-time cases.
pub const SHORT_TIME_MAX: f64 = 0.8;

/// Random points of the strip `0.3 <= Re s <= 3.5`, `|Im s| <= 2`.
pub fn strip_points(seed: u64, n: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| c(rng.gen_range(0.3..3.5), rng.gen_range(-2.0..2.0))).collect()
}

/// Central-difference step `1e-4·min(t, T - t)` inside the validity interval `(0, T)`.
fn fe_step(t: f64, t_end: f64) -> f64 {
    1e-4 * t.min(t_end - t)
}

/// Functional-equation residual, power-series oracle, the two closed forms of Ω,
/// conservation at `s = σ₁, σ₂` and the `t = 0` datum; `U` (γ > 0) and `U₂`
/// (γ < 0) residuals at long / negative-γ times.
pub fn suite_mellin_core(grid: &MellinGrid) -> Result<VerificationReport> {
    let pairs: Vec<(usize, f64, f64)> = grid
        .gammas
        .iter()
        .flat_map(|&g| grid.thetas.iter().map(move |&th| (g, th)))
        .enumerate()
        .map(|(i, (g, th))| (i, g, th))
        .collect();
    let per_pair: Vec<Vec<Case>> = pairs
        .par_iter()
        .map(|&(i, g, th)| match Params::new(g, th) {
            Ok(p) => mellin_cases(&p, grid, grid.seed.wrapping_add(i as u64)),
            Err(e) => vec![Case::new(
                format!("params/g={g}/th={th}"),
                CaseParams { gamma: g, theta: th },
                "parameters admissible",
                Check::Within,
                0.0,
                0.0,
                Err(e),
            )],
        })
        .collect();
    let mut cases: Vec<Case> = per_pair.into_iter().flatten().collect();
    cases.extend(mellin_examples());
    let grids = vec![
        format!("gamma={:?}", grid.gammas),
        format!("theta={:?}", grid.thetas),
        format!("|gamma| t = {SHORT_TIME_MAX} k/{} (short), 1 + 2 k/{} (long)", grid.n_t, grid.n_t),
        format!("s: {} seeded points in 0.3<=Re s<=3.5, |Im s|<=2", grid.n_s),
    ];
    report("mellin-core", cases, grid.seed, grids)
}

fn mellin_cases(p: &Params, grid: &MellinGrid, seed: u64) -> Vec<Case> {
    let pc = cp(p);
    let g = p.gamma;
    let k = g.abs();
    let ss = strip_points(seed, grid.n_s);
    let mut out = vec![];
    let tag = |name: &str, j: usize, q: usize| format!("{name}/g={g}/th={}/t{j}/s{q}", p.theta);
    for (q, &s) in ss.iter().enumerate() {
        let m = omega(p, 0.0, s).map(|w| (w - cr(1.0)).norm());
        out.push(
            Case::new(tag("omega-datum", 0, q), pc, "W(0,s) = 1", Check::Within, 0.0, 1e-14, m)
                .input("s_re", s.re)
                .input("s_im", s.im),
        );
    }
    for j in 1..=grid.n_t {
        let t = SHORT_TIME_MAX * j as f64 / grid.n_t as f64 / k;
        let sol = MellinSolution::new(SolutionKind::Omega, *p, t);
        let h = fe_step(t, 1.0 / k);
        for (q, &s) in ss.iter().enumerate() {
            let with = |c: Case| c.input("t", t).input("s_re", s.re).input("s_im", s.im);
            let m = (|| Ok(rel_err(omega(p, t, s)?, series_oracle(p, t, s, 500)?.value)))();
            out.push(with(Case::new(
                tag("omega-oracle", j, q),
                pc,
                "closed form = sum t^n/n! prod Phi(s + j gamma)",
                Check::Within,
                0.0,
                1e-9,
                m,
            )));
            out.push(with(Case::new(
                tag("omega-fe", j, q),
                pc,
                "dW/dt = Phi(s) W(t, s + gamma)",
                Check::Within,
                0.0,
                1e-5,
                fe_residual(&sol, s, h),
            )));
            let m = omega_forms(p, t, s).map(|(a, b)| rel_err(a, b));
            out.push(with(Case::new(
                tag("omega-forms", j, q),
                pc,
                "Euler transformation between the two closed forms",
                Check::Within,
                0.0,
                1e-10,
                m,
            )));
        }
        for (name, sigma) in [("sigma1", p.sigma1), ("sigma2", p.sigma2)] {
            if near_lattice(sigma, g) {
                continue;
            }
            let m = omega(p, t, sigma).map(|w| (w - cr(1.0)).norm());
            out.push(
                Case::new(
                    format!("conservation-{name}/g={g}/th={}/t{j}", p.theta),
                    pc,
                    "Phi(sigma) = 0 conserves the sigma-moment",
                    Check::Within,
                    0.0,
                    1e-10,
                    m,
                )
                .input("t", t),
            );
        }
        // long times (U, γ > 0) or the same times for U₂ (γ < 0)
        let (kind, tl, t_end) = if g > 0.0 {
            (SolutionKind::U, (1.0 + 2.0 * j as f64 / grid.n_t as f64) / g, f64::INFINITY)
        } else {
            (SolutionKind::U2, t, 1.0 / k)
        };
        let sol = MellinSolution::new(kind, *p, tl);
        let h = if t_end.is_finite() { fe_step(tl, t_end) } else { 1e-4 * (tl - 1.0 / g).min(tl) };
        let name = if g > 0.0 { "u-fe" } else { "u2-fe" };
        for (q, &s) in ss.iter().enumerate() {
            out.push(
                Case::new(
                    tag(name, j, q),
                    pc,
                    "dW/dt = Phi(s) W(t, s + gamma)",
                    Check::Within,
                    0.0,
                    1e-5,
                    fe_residual(&sol, s, h),
                )
                .input("t", tl)
                .input("s_re", s.re)
                .input("s_im", s.im),
            );
        }
        if g > 0.0 {
            // the real-density combination solves the same equation
            let sol = MellinSolution::new(SolutionKind::U, *p, tl);
            let s = ss[0];
            let m = (|| {
                let dt = (u_real(p, tl + h, s)? - u_real(p, tl - h, s)?) / (2.0 * h);
                let rhs = p.phi(s)? * u_real(p, tl, s + cr(g))?;
                Ok((dt - rhs).norm() / u_real(p, tl, s)?.norm().max(1.0))
            })();
            let _ = sol;
            out.push(
                Case::new(tag("u-real-fe", j, 0), pc, "dW/dt = Phi(s) W(t, s + gamma)", Check::Within, 0.0, 1e-5, m)
                    .input("t", tl),
            );
        }
    }
    out
}

fn near_lattice(s: C64, g: f64) -> bool {
    let w = s / g;
    w.im.abs() < 1e-6 && w.re < 0.5 && (w.re - w.re.round()).abs() < 1e-6
}

/// Fixed cases from the documented examples.
fn mellin_examples() -> Vec<Case> {
    let mut out = vec![];
    if let Ok(p) = Params::new(1.0, 2.0) {
        let sol = MellinSolution::new(SolutionKind::Omega, p, 0.5);
        let m = fe_residual(&sol, cr(2.0), 1e-4);
        out.push(
            Case::new(
                "example/fe-g1-th2-t0.5-s2",
                cp(&p),
                "dW/dt = Phi(s) W(t, s + gamma)",
                Check::Within,
                0.0,
                1e-5,
                m,
            )
            .input("t", 0.5)
            .input("s_re", 2.0),
        );
    }
    if let Ok(p) = Params::new(1.0, 0.75) {
        let m = omega(&p, 0.8, p.sigma1).map(|w| w.re);
        out.push(
            Case::new(
                "example/sigma1-moment-g1-th0.75-t0.8",
                cp(&p),
                "Phi(sigma) = 0 conserves the sigma-moment",
                Check::Within,
                1.0,
                1e-12,
                m,
            )
            .input("t", 0.8),
        );
    }
    out
}

/// Moment orders checked by [`suite_blowup`].
pub const BLOWUP_ORDERS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
/// Ladder levels `1-γt = 2^{-k}`, `k = 1..9`.
pub const LADDER_LEVELS: u32 = 9;

/// Extrapolated scaled moments against their Γ-ratio limits (1 %).
pub fn suite_blowup(p: &Params, orders: &[f64], seed: u64) -> Result<VerificationReport> {
    if p.gamma <= 0.0 {
        return Err(Error::Domain("blow-up suite needs gamma > 0".into()));
    }
    let ladder = default_ladder(p, LADDER_LEVELS);
    let cases: Vec<Case> = orders
        .par_iter()
        .map(|&r| {
            let m = moment_asymptotics(p, r, &ladder);
            let target = m.as_ref().map(|a| a.target).unwrap_or(f64::NAN);
            let limit = m.as_ref().map(|a| a.limit);
            let anchor = if r > 1.0 {
                "(1-gamma t)^((r-1)/gamma) M_r -> Gamma-ratio limit"
            } else if r == 1.0 {
                "M_1 / (-log(1-gamma t)) -> Gamma-ratio limit"
            } else {
                "bounded moment of order r < 1 -> Gamma-ratio limit"
            };
            Case::new(
                format!("moment/g={}/th={}/r={r}", p.gamma, p.theta),
                cp(p),
                anchor,
                Check::Within,
                target,
                1e-2 * target.abs(),
                limit.map_err(Error::clone),
            )
            .input("r", r)
        })
        .collect();
    let grids = vec![format!("1 - gamma t = 2^-k, k = 1..{LADDER_LEVELS}"), format!("r = {orders:?}")];
    report("blowup", cases, seed, grids)
}

/// θ of the control scans.
pub const CONTROL_THETA: f64 = 0.75;
/// Control scans must stay above this value.
pub const CONTROL_FLOOR: f64 = -1e-8;

/// Scan grids: ω on `10^-2 .. 10^6`, v on `10^-8 .. 1`.
pub fn scan_grid(p: &Params) -> LogGrid {
    let lo = if p.gamma > 0.0 { 1e-2 } else { 1e-8 };
    LogGrid::decades(lo, 8.0).expect("fixed grid is valid")
}

/// Scan times: `{1.25, 2}/γ` after blow-up, `{0.25, 0.5}/|γ|` for γ < 0.
pub fn scan_times(p: &Params) -> [f64; 2] {
    let k = p.gamma.abs();
    if p.gamma > 0.0 {
        [1.25 / k, 2.0 / k]
    } else {
        [0.25 / k, 0.5 / k]
    }
}

/// Sign scan of the density at time `t` (ω for γ > 0, v for γ < 0).
pub fn density_scan(p: &Params, t: f64) -> Result<SignReport> {
    let sol = MeasureSolution::at(p, t)?;
    let grid = scan_grid(p);
    let probes = oscillation_probes(p, grid.lo, grid.hi);
    sign_scan(|x| sol.density(x), &grid, &probes, ScanOptions::for_params(p))
}

/// Sign flips of the density between consecutive probe points `e^{-kπ/ζ}`.
pub fn probe_flips(p: &Params, t: f64) -> Result<usize> {
    let sol = MeasureSolution::at(p, t)?;
    let grid = scan_grid(p);
    let vals =
        oscillation_probes(p, grid.lo, grid.hi).into_iter().map(|x| sol.density(x)).collect::<Result<Vec<f64>>>()?;
    Ok(vals.windows(2).filter(|w| w[0] * w[1] < 0.0).count())
}

/// Certified sign changes of ω / v for θ > 1, and none for the θ = 0.75 control.
pub fn suite_nonexistence_evidence(p: &Params, control_theta: f64, seed: u64) -> Result<VerificationReport> {
    if !(p.theta > 1.0) {
        return Err(Error::Domain(format!("non-existence evidence needs theta > 1, got {}", p.theta)));
    }
    let control = Params::new(p.gamma, control_theta)?;
    let times = scan_times(p);
    let jobs: Vec<(bool, f64)> = times.iter().flat_map(|&t| [(false, t), (true, t)]).collect();
    let per_job: Vec<Vec<Case>> = jobs
        .par_iter()
        .map(|&(is_control, t)| {
            let q = if is_control { control } else { *p };
            let id = |what: &str| format!("{what}/g={}/th={}/t={t}", q.gamma, q.theta);
            let scan = density_scan(&q, t);
            let certified = scan
                .as_ref()
                .map(|r| r.brackets.iter().filter(|b| b.is_certified()).count() as f64)
                .map_err(Error::clone);
            let mut out = vec![];
            if is_control {
                let min = scan.as_ref().map(|r| r.min_value).map_err(Error::clone);
                out.push(
                    Case::new(
                        id("control-min"),
                        cp(&q),
                        "theta < 1: non-negative density",
                        Check::AtLeast,
                        CONTROL_FLOOR,
                        0.0,
                        min,
                    )
                    .input("t", t),
                );
                out.push(
                    Case::new(
                        id("control-brackets"),
                        cp(&q),
                        "theta < 1: no sign change",
                        Check::AtMost,
                        0.0,
                        0.0,
                        certified,
                    )
                    .input("t", t),
                );
            } else if q.gamma > 0.0 {
                out.push(
                    Case::new(
                        id("oscillation-brackets"),
                        cp(&q),
                        "large-x term x^(-sigma2-gamma) with complex sigma2 changes sign",
                        Check::AtLeast,
                        1.0,
                        0.0,
                        certified,
                    )
                    .input("t", t),
                );
            } else {
                let small = scan
                    .as_ref()
                    .map(|r| r.brackets.iter().filter(|b| b.is_certified() && b.hi < 1e-2).count() as f64)
                    .map_err(Error::clone);
                out.push(
                    Case::new(
                        id("oscillation-brackets-small-x"),
                        cp(&q),
                        "small-x term cos(zeta log x) changes sign",
                        Check::AtLeast,
                        1.0,
                        0.0,
                        small,
                    )
                    .input("t", t),
                );
                let flips = probe_flips(&q, t).map(|n| n as f64);
                out.push(
                    Case::new(
                        id("probe-alternation"),
                        cp(&q),
                        "density alternates at x = exp(-k pi / zeta)",
                        Check::AtLeast,
                        1.0,
                        0.0,
                        flips,
                    )
                    .input("t", t),
                );
            }
            out
        })
        .collect();
    let g = scan_grid(p);
    let grids = vec![
        format!("log:{}:{}:{} plus probes exp(+-k pi/zeta)", g.lo, g.hi, g.points().len()),
        format!("t = {times:?}"),
    ];
    report("nonexistence-evidence", per_job.into_iter().flatten().collect(), seed, grids)
}

/// Half-width of the time window around `1/γ` for the continuity check.
pub const JUNCTION_EPS: f64 = 1e-3;
/// Tolerance of the continuity and limit-profile checks.
pub const JUNCTION_TOL: f64 = 1e-4;

/// The 50-point log grid `10^-2 .. 10^2` of the junction checks.
pub fn junction_grid() -> Vec<f64> {
    (0..50).map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / 49.0)).collect()
}

/// Continuity of w across `t = 1/γ` and agreement of Ω, U with the limit
/// transform (γ > 0); absence of a pole of U₂ at `s = 0` (γ < 0).
pub fn suite_stitching(p: &Params, seed: u64) -> Result<VerificationReport> {
    let cases = if p.gamma > 0.0 { junction_cases(p) } else { cancellation_cases(p) };
    let grids = if p.gamma > 0.0 {
        vec![format!("x: 50 log points 1e-2..1e2, t = 1/gamma -+ {JUNCTION_EPS}")]
    } else {
        vec!["circles |s| = 0.01, 0.1 (64 points)".to_string()]
    };
    report("stitching", cases, seed, grids)
}

fn junction_cases(p: &Params) -> Vec<Case> {
    let pc = cp(p);
    let tb = 1.0 / p.gamma;
    let mut out: Vec<Case> = junction_grid()
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, &x)| {
            let before = global_w(p, tb - JUNCTION_EPS, x).map(|v| v.density);
            let after = global_w(p, tb + JUNCTION_EPS, x).map(|v| v.density);
            let lim = limit_profile(p, x);
            let gap = match (&before, &after) {
                (Ok(a), Ok(b)) => Ok((a - b).abs()),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            let dev = |side: &Result<f64>| match (side, &lim) {
                (Ok(a), Ok(l)) => Ok((a - l).abs()),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            let id = |w: &str| format!("{w}/g={}/th={}/x{i}", p.gamma, p.theta);
            [
                Case::new(
                    id("continuity"),
                    pc,
                    "w(1/gamma - eps) ~ w(1/gamma + eps)",
                    Check::Within,
                    0.0,
                    JUNCTION_TOL,
                    gap,
                )
                .input("x", x),
                Case::new(
                    id("limit-before"),
                    pc,
                    "u(t) -> (1 + x^gamma)^(-2/gamma) profile",
                    Check::Within,
                    0.0,
                    JUNCTION_TOL,
                    dev(&before),
                )
                .input("x", x),
                Case::new(
                    id("limit-after"),
                    pc,
                    "omega(t) -> (1 + x^gamma)^(-2/gamma) profile",
                    Check::Within,
                    0.0,
                    JUNCTION_TOL,
                    dev(&after),
                )
                .input("x", x),
            ]
            .into_iter()
        })
        .collect();

    // transforms at the junction: Ω from below, u_real from above, both → Ω(1/γ, s)
    let order = p.sigma1.re.min(1.0);
    for s in [0.5, 1.0] {
        if s >= 2.0 {
            continue;
        }
        let e = order.min(2.0 - s) / p.gamma;
        let delta = (1e-7f64.powf(1.0 / e) / p.gamma).max(1e-13 * tb);
        let lim = omega_limit(p, cr(s));
        let from = |v: Result<C64>| -> Result<f64> { Ok(rel_err(v?, lim.clone()?)) };
        out.push(
            Case::new(
                format!("omega-junction/g={}/th={}/s={s}", p.gamma, p.theta),
                pc,
                "Omega(t,s) -> Gamma(s/gamma)Gamma((2-s)/gamma)/(Gamma(sigma1/gamma)Gamma(sigma2/gamma))",
                Check::Within,
                0.0,
                1e-5,
                from(omega(p, tb - delta, cr(s))),
            )
            .input("s", s)
            .input("delta", delta),
        );
        out.push(
            Case::new(
                format!("u-junction/g={}/th={}/s={s}", p.gamma, p.theta),
                pc,
                "U(t,s) -> same limit from t > 1/gamma",
                Check::Within,
                0.0,
                1e-5,
                from(u_real(p, tb + delta, cr(s))),
            )
            .input("s", s)
            .input("delta", delta),
        );
    }
    // the limit profile is the inverse transform of the limit
    let lim = MeasureSolution::limit(p);
    for s in [0.5, 1.0, 1.5] {
        let m = (|| {
            let l = lim.clone()?;
            Ok(rel_err(l.forward_mellin(&[cr(s)], 1e-11)?[0], omega_limit(p, cr(s))?))
        })();
        out.push(
            Case::new(
                format!("limit-mellin/g={}/th={}/s={s}", p.gamma, p.theta),
                pc,
                "Mellin transform of the limit profile",
                Check::Within,
                0.0,
                1e-8,
                m,
            )
            .input("s", s),
        );
    }
    out
}

/// Radii of the pole check for U₂ at the origin.
pub const CANCELLATION_RADII: [f64; 2] = [0.01, 0.1];

/// `max_{|s|=r₁}|U₂| / max_{|s|=r₂}|U₂|` for `r₁ < r₂`: about 10 for a simple
/// pole at 0, about 1 without one.
pub fn cancellation_ratio(p: &Params, t: f64) -> Result<f64> {
    let ring = |r: f64| -> Result<f64> {
        (0..64)
            .map(|k| {
                let a = std::f64::consts::TAU * (k as f64 + 0.5) / 64.0;
                u2(p, t, c(r * a.cos(), r * a.sin())).map(|v| v.norm())
            })
            .try_fold(0.0f64, |m, v| Ok(m.max(v?)))
    };
    Ok(ring(CANCELLATION_RADII[0])? / ring(CANCELLATION_RADII[1])?)
}

fn cancellation_cases(p: &Params) -> Vec<Case> {
    let t = 0.3 / p.gamma.abs();
    vec![Case::new(
        format!("u2-no-pole-at-0/g={}/th={}", p.gamma, p.theta),
        cp(p),
        "residues of the two parts of U2 at s = -m gamma cancel",
        Check::AtMost,
        10.0,
        0.0,
        cancellation_ratio(p, t),
    )
    .input("t", t)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(SuiteName::parse(n.as_str()).unwrap(), n);
        }
        assert_eq!(SuiteName::parse("mellin_core").unwrap(), SuiteName::MellinCore);
        assert!(SuiteName::parse("nope").is_err());
    }

    #[test]
    fn strip_points_are_seeded() {
        assert_eq!(strip_points(3, 5), strip_points(3, 5));
        assert_ne!(strip_points(3, 5), strip_points(4, 5));
        assert!(strip_points(1, 50).iter().all(|s| s.re >= 0.3 && s.re < 3.5 && s.im.abs() <= 2.0));
    }

    #[test]
    fn small_mellin_grid_passes_and_is_deterministic() {
        let grid = MellinGrid { gammas: vec![1.0, -1.0], thetas: vec![0.75, 2.0], n_t: 3, n_s: 3, seed: 11 };
        let a = suite_mellin_core(&grid).unwrap();
        assert!(a.passed(), "{:?}", a.failures());
        let b = suite_mellin_core(&grid).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn cancellation_distinguishes_poles() {
        let p = Params::new(-1.0, 0.75).unwrap();
        assert!(cancellation_ratio(&p, 0.3).unwrap() < 2.0);
        // Ω alone keeps the pole at s = 0
        let ring = |r: f64| {
            (0..64)
                .map(|k| {
                    let a = std::f64::consts::TAU * (k as f64 + 0.5) / 64.0;
                    omega(&p, 0.3, c(r * a.cos(), r * a.sin())).unwrap().norm()
                })
                .fold(0.0f64, f64::max)
        };
        assert!(ring(0.01) / ring(0.1) > 5.0);
    }
}
