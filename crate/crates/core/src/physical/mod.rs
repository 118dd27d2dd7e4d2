//! Physical-space solutions: measures made of exact atoms plus densities.

mod law;
pub mod local;
pub mod measure;
pub mod negative;
pub mod omega;
pub mod scan;
pub mod weak;

pub use law::{AsymptoticLaw, LawKind, NamedConstant};
pub use local::{
    default_ladder, global_w, limit_constant, limit_law, limit_profile, moment_asymptotics, moment_target,
    transported_atom, u_local, Atom, Branch, GlobalValue, LocalValue, MomentAsymptotics, MomentRegime, MomentSample,
};
pub use measure::{MeasureSolution, SolutionFamily};
pub use negative::{small_x_law, NegativeDensity, SeriesPole};
pub use omega::{large_x_coefficient, large_x_law, omega_series, OmegaDensity, OmegaRoute};
pub use scan::{oscillation_probes, sign_scan, Bracket, LogGrid, ScanOptions, SignReport, Verdict};
pub use weak::{omega_pde_residual, weak_residuals, Bump, PdeResidual, WeakResidual};
