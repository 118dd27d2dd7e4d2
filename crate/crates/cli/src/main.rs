// `!(a < b)` is how NaN gets rejected throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gfrag_core::mellin::{omega_limit, u_real, MellinSolution, SolutionKind};
use gfrag_core::model::classify;
use gfrag_core::physical::{
    default_ladder, moment_asymptotics, oscillation_probes, sign_scan, LogGrid, MeasureSolution, ScanOptions,
};
use gfrag_core::scalar::c;
use gfrag_core::verify::{run_suite, scan_grid, SuiteName, VerificationReport, DEFAULT_SEED};
use gfrag_core::Params;

use grid::GridSpec;
use output::{write_atomic, Cell, Format, Table};

/// Evaluate, cross-check and scan the explicit solutions of the growth-fragmentation model.
#[derive(Debug, Parser)]
#[command(name = "gfrag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct ParamArgs {
    /// Growth exponent γ (non-zero, may be negative).
    #[arg(long, allow_negative_numbers = true)]
    gamma: f64,
    /// Dislocation intensity θ > 0.
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
}

#[derive(Debug, Clone, Args)]
struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Output format; defaults to the file extension, else CSV for tables and JSON for reports.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Omega,
    U,
    UReal,
    U2,
    Omega1,
    Omega2,
    Limit,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Roots of sΦ(s), inf Φ and the expected qualitative behaviour.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Mellin-domain solution on a (t, s) grid; columns t,s_re,s_im,re,im.
    EvalMellin {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "omega")]
        kind: Kind,
        /// Times: a number, list, or log:a:b:n / lin:a:b:n (ignored for `limit`).
        #[arg(long, default_value = "0.5")]
        t: String,
        /// Real parts of s.
        #[arg(long)]
        s_grid: String,
        /// Common imaginary part of s.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        s_im: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Physical solution (u, limit profile, ω or v by time); columns t,x,density,atom_location,atom_weight.
    EvalDensity {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        t: String,
        #[arg(long)]
        x_grid: String,
        /// Absolute tolerance of numerically inverted densities.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Scaled moments on the ladder 1-γt = 2^-k and their extrapolated limits (γ > 0).
    Moments {
        #[command(flatten)]
        params: ParamArgs,
        /// Moment orders r > 0.
        #[arg(long, default_value = "0.5,1,2")]
        r: String,
        #[arg(long, default_value_t = 9)]
        levels: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite; exit status 2 when any case fails.
    Suite {
        /// mellin-core, blowup, nonexistence-evidence or stitching.
        #[arg(long)]
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sign scan of the density at one time; CSV rows are the certified brackets.
    ScanSign {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        t: f64,
        /// log:a:b:n; defaults to 8 decades at 512 points per decade.
        #[arg(long)]
        x_grid: Option<String>,
        /// Values in [-tol, 0) without a bracket are reported as inconclusive.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// Exit status with a message for stderr.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

/// What a command produced.
enum Artifact {
    Table(Table),
    Json(String, Option<String>),
}

struct Outcome {
    summary: Option<String>,
    artifact: Artifact,
    code: u8,
}

impl Outcome {
    fn table(t: Table) -> Self {
        Self { summary: None, artifact: Artifact::Table(t), code: 0 }
    }
}

fn params(a: ParamArgs) -> Result<Params, Failure> {
    if !(a.gamma.is_finite() && a.gamma != 0.0) {
        return Err(usage(format!("gamma: must be finite and non-zero, got {}", a.gamma)));
    }
    if !(a.theta.is_finite() && a.theta > 0.0) {
        return Err(usage(format!("theta: must be finite and > 0, got {}", a.theta)));
    }
    Params::new(a.gamma, a.theta).map_err(|e| usage(format!("gamma/theta: {e}")))
}

fn tolerance(field: &str, tol: Option<f64>, default: f64) -> Result<f64, Failure> {
    match tol {
        None => Ok(default),
        Some(v) if v.is_finite() && v > 0.0 => Ok(v),
        Some(v) => Err(usage(format!("{field}: must be finite and > 0, got {v}"))),
    }
}

fn grid(field: &str, spec: &str) -> Result<Vec<f64>, Failure> {
    GridSpec::parse(field, spec).map(|g| g.points()).map_err(usage)
}

/// Counts evaluation failures so one warning line can summarise them.
#[derive(Default)]
struct Failures(usize);

impl Failures {
    fn num<E: std::fmt::Display>(&mut self, v: Result<f64, E>) -> Cell {
        match v {
            Ok(v) => Cell::Num(v),
            Err(e) => {
                if self.0 == 0 {
                    eprintln!("warning: evaluation failed: {e}");
                }
                self.0 += 1;
                Cell::Num(f64::NAN)
            }
        }
    }

    fn report(&self) {
        if self.0 > 1 {
            eprintln!("warning: {} evaluations failed in total (written as NaN)", self.0);
        }
    }
}

fn cmd_classify(a: ParamArgs) -> Result<Outcome, Failure> {
    let p = params(a)?;
    let r = classify(&p);
    let summary = format!(
        "regime {:?}\ninf_phi {}\nsigma1 {} {:+}i\nsigma2 {} {:+}i\nmalthusian {}\ncritical {}\n",
        r.expected_behavior, r.inf_phi, r.sigma1[0], r.sigma1[1], r.sigma2[0], r.sigma2[1], r.malthusian, r.critical
    );
    let mut t = Table::new(&[
        "gamma",
        "theta",
        "sigma1_re",
        "sigma1_im",
        "sigma2_re",
        "sigma2_im",
        "nu",
        "malthusian",
        "critical",
        "inf_phi",
        "gamma_sign",
        "expected_behavior",
    ]);
    t.push(vec![
        Cell::Num(r.gamma),
        Cell::Num(r.theta),
        Cell::Num(r.sigma1[0]),
        Cell::Num(r.sigma1[1]),
        Cell::Num(r.sigma2[0]),
        Cell::Num(r.sigma2[1]),
        Cell::Num(r.nu),
        Cell::Text(r.malthusian.to_string()),
        Cell::Text(r.critical.to_string()),
        Cell::Num(r.inf_phi),
        Cell::Text(format!("{:?}", r.gamma_sign)),
        Cell::Text(format!("{:?}", r.expected_behavior)),
    ]);
    let json = serde_json::to_string_pretty(&r).expect("plain values") + "\n";
    Ok(Outcome { summary: Some(summary), artifact: Artifact::Json(json, Some(t.to_csv())), code: 0 })
}

fn cmd_eval_mellin(a: ParamArgs, kind: Kind, t: &str, s_grid: &str, s_im: f64) -> Result<Outcome, Failure> {
    let p = params(a)?;
    if !s_im.is_finite() {
        return Err(usage("s-im: must be finite"));
    }
    let ts = if kind == Kind::Limit { vec![1.0 / p.gamma] } else { grid("t", t)? };
    let ss = grid("s-grid", s_grid)?;
    let sol_kind = match kind {
        Kind::Omega => Some(SolutionKind::Omega),
        Kind::U | Kind::UReal => Some(SolutionKind::U),
        Kind::U2 => Some(SolutionKind::U2),
        Kind::Omega1 => Some(SolutionKind::Omega1),
        Kind::Omega2 => Some(SolutionKind::Omega2),
        Kind::Limit => None,
    };
    if kind == Kind::Limit && p.gamma < 0.0 {
        return Err(usage("kind: the limit transform needs gamma > 0"));
    }
    if let Some(k) = sol_kind {
        let v = MellinSolution::new(k, p, 0.0).validity();
        for &t in &ts {
            let low_ok = if v.t_min_open { t > v.t_min } else { t >= v.t_min };
            if !(low_ok && t < v.t_max) {
                return Err(usage(format!(
                    "t: {t} is outside the validity interval ({}, {}) of {kind:?}",
                    v.t_min, v.t_max
                )));
            }
        }
    }
    let mut table = Table::new(&["t", "s_re", "s_im", "re", "im"]);
    let mut fails = Failures::default();
    for &t in &ts {
        for &sr in &ss {
            let s = c(sr, s_im);
            let w = match (kind, sol_kind) {
                (Kind::Limit, _) => omega_limit(&p, s),
                (Kind::UReal, _) => u_real(&p, t, s),
                (_, Some(k)) => MellinSolution::new(k, p, t).eval(s),
                (_, None) => unreachable!("every kind but limit has a solution kind"),
            };
            let (re, im) = (w.as_ref().map(|w| w.re).map_err(Clone::clone), w.map(|w| w.im));
            table.push(vec![Cell::Num(t), Cell::Num(sr), Cell::Num(s_im), fails.num(re), fails.num(im)]);
        }
    }
    fails.report();
    Ok(Outcome::table(table))
}

fn cmd_eval_density(a: ParamArgs, t: &str, x_grid: &str, tol: Option<f64>) -> Result<Outcome, Failure> {
    let p = params(a)?;
    let ts = grid("t", t)?;
    let xs = grid("x-grid", x_grid)?;
    let tol = tolerance("tol", tol, 1e-10)?;
    let mut table = Table::new(&["t", "x", "density", "atom_location", "atom_weight"]);
    let mut fails = Failures::default();
    for &t in &ts {
        let sol = MeasureSolution::at(&p, t).map_err(|e| usage(format!("t: {e}")))?;
        let (loc, weight) = match sol.atoms.first() {
            Some(a) => (Cell::Num(a.location), Cell::Num(a.weight)),
            None => (Cell::Empty, Cell::Empty),
        };
        for &x in &xs {
            table.push(vec![
                Cell::Num(t),
                Cell::Num(x),
                fails.num(sol.density_with(x, tol)),
                loc.clone(),
                weight.clone(),
            ]);
        }
    }
    fails.report();
    Ok(Outcome::table(table))
}

fn cmd_moments(a: ParamArgs, r: &str, levels: u32) -> Result<Outcome, Failure> {
    let p = params(a)?;
    if p.gamma < 0.0 {
        return Err(usage("gamma: moment blow-up needs gamma > 0"));
    }
    if !(1..=40).contains(&levels) {
        return Err(usage(format!("levels: must be in 1..=40, got {levels}")));
    }
    let rs = grid("r", r)?;
    let ladder = default_ladder(&p, levels);
    let mut table = Table::new(&["r", "t", "h", "moment", "scaled", "limit", "target"]);
    for &r in &rs {
        let m =
            moment_asymptotics(&p, r, &ladder).map_err(|e| Failure { code: 1, message: format!("r = {r}: {e}") })?;
        for s in &m.samples {
            table.push(vec![
                Cell::Num(r),
                Cell::Num(s.t),
                Cell::Num(s.h),
                Cell::Num(s.moment),
                Cell::Num(s.scaled),
                Cell::Num(m.limit),
                Cell::Num(m.target),
            ]);
        }
    }
    Ok(Outcome::table(table))
}

fn cmd_suite(a: ParamArgs, name: &str, seed: u64) -> Result<Outcome, Failure> {
    let p = params(a)?;
    let name = SuiteName::parse(name).map_err(|e| usage(format!("name: {e}")))?;
    let report: VerificationReport = run_suite(name, &p, seed).map_err(|e| usage(format!("gamma/theta: {e}")))?;
    let failed = report.failures().len();
    let summary = format!("{}: {} cases, {} failed\n", report.suite, report.cases.len(), failed);
    let json = report.to_json().map_err(|e| Failure { code: 1, message: e.to_string() })? + "\n";
    let csv = report.to_csv().map_err(|e| Failure { code: 1, message: e.to_string() })?;
    Ok(Outcome {
        summary: Some(summary),
        artifact: Artifact::Json(json, Some(csv)),
        code: if failed > 0 { 2 } else { 0 },
    })
}

fn cmd_scan_sign(a: ParamArgs, t: f64, x_grid: Option<&str>, tol: Option<f64>) -> Result<Outcome, Failure> {
    let p = params(a)?;
    let grid = match x_grid {
        None => scan_grid(&p),
        Some(spec) => match GridSpec::parse("x-grid", spec).map_err(usage)? {
            GridSpec::Log { lo, hi, n } if hi > lo && n >= 2 => {
                let per_decade = ((n - 1) as f64 / (hi / lo).log10()).ceil().max(1.0) as usize;
                LogGrid::new(lo, hi, per_decade).map_err(|e| usage(format!("x-grid: {e}")))?
            }
            _ => return Err(usage("x-grid: scan-sign takes log:a:b:n with a < b and n >= 2")),
        },
    };
    let sol = MeasureSolution::at(&p, t).map_err(|e| usage(format!("t: {e}")))?;
    let opts = ScanOptions { tol: tolerance("tol", tol, ScanOptions::default().tol)?, ..ScanOptions::for_params(&p) };
    let probes = oscillation_probes(&p, grid.lo, grid.hi);
    let r =
        sign_scan(|x| sol.density(x), &grid, &probes, opts).map_err(|e| Failure { code: 1, message: e.to_string() })?;
    let summary =
        format!("verdict {:?}\nbrackets {}\nmin {} at x = {}\n", r.verdict, r.brackets.len(), r.min_value, r.argmin);
    let mut table = Table::new(&["lo", "hi", "f_lo", "f_hi"]);
    for b in &r.brackets {
        table.push(vec![Cell::Num(b.lo), Cell::Num(b.hi), Cell::Num(b.f_lo), Cell::Num(b.f_hi)]);
    }
    let json = serde_json::to_string_pretty(&r).expect("plain values") + "\n";
    Ok(Outcome { summary: Some(summary), artifact: Artifact::Json(json, Some(table.to_csv())), code: 0 })
}

fn emit(out: &OutArgs, o: Outcome, summary_only_on_stdout: bool) -> Result<u8, Failure> {
    let by_ext = out.output.as_ref().and_then(|p| p.extension()).and_then(|e| match e.to_ascii_lowercase().to_str() {
        Some("json") => Some(Format::Json),
        Some("csv") => Some(Format::Csv),
        _ => None,
    });
    let natural = match o.artifact {
        Artifact::Table(_) => Format::Csv,
        Artifact::Json(..) => Format::Json,
    };
    let format = out.format.or(by_ext).unwrap_or(natural);
    let body = match (&o.artifact, format) {
        (Artifact::Table(t), Format::Csv) => t.to_csv(),
        (Artifact::Table(t), Format::Json) => t.to_json(),
        (Artifact::Json(_, Some(csv)), Format::Csv) => csv.clone(),
        (Artifact::Json(j, _), _) => j.clone(),
    };
    match &out.output {
        Some(path) => {
            write_atomic(path, &body)
                .map_err(|e| Failure { code: 1, message: format!("output: {}: {e}", path.display()) })?;
            if let Some(s) = &o.summary {
                print!("{s}");
            }
        }
        None if summary_only_on_stdout && out.format.is_none() => {
            print!("{}", o.summary.as_deref().unwrap_or_default())
        }
        None => {
            if let Some(s) = &o.summary {
                eprint!("{s}");
            }
            print!("{body}");
        }
    }
    Ok(o.code)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("GFRAG_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| usage(format!("GFRAG_THREADS: expected a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| usage(format!("GFRAG_THREADS: {e}")))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Classify { params, out } => emit(&out, cmd_classify(params)?, true),
        Command::EvalMellin { params, kind, t, s_grid, s_im, out } => {
            emit(&out, cmd_eval_mellin(params, kind, &t, &s_grid, s_im)?, false)
        }
        Command::EvalDensity { params, t, x_grid, tol, out } => {
            emit(&out, cmd_eval_density(params, &t, &x_grid, tol)?, false)
        }
        Command::Moments { params, r, levels, out } => emit(&out, cmd_moments(params, &r, levels)?, false),
        Command::Suite { name, params, seed, out } => emit(&out, cmd_suite(params, &name, seed)?, false),
        Command::ScanSign { params, t, x_grid, tol, out } => {
            emit(&out, cmd_scan_sign(params, t, x_grid.as_deref(), tol)?, false)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
