use thiserror::Error;

/// Errors shared across the library; every variant names the offending quantity.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {arg} lies within {dist:e} of the pole {pole}")]
    PoleProximity { arg: String, pole: String, dist: f64 },
    #[error("degenerate connection: {0}")]
    DegenerateConnection(String),
    #[error("balanced case: Re(c-a-b) = {0:e} is too close to 0")]
    BalancedCase(f64),
    #[error("series did not converge after {terms} terms ({what})")]
    NonConvergence { what: String, terms: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integrand decays too slowly: {0}")]
    SlowDecay(String),
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    #[error("tilt {tilt} violates the bound tilt < {bound}")]
    TiltViolation { tilt: f64, bound: f64 },
    #[error("x = {x} is within {dist:e} of the series switch point")]
    SeriesSwitchPoint { x: f64, dist: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
