//! Verification reports: one record per check, serialisable to JSON and CSV.

use serde::Serialize;

use crate::error::{Error, Result};

/// How `measured` is compared with `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `|measured - target| <= tol`.
    Within,
    /// `measured <= target`.
    AtMost,
    /// `measured >= target`.
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseParams {
    pub gamma: f64,
    pub theta: f64,
}

/// One named input of a case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub params: CaseParams,
    pub inputs: Vec<Input>,
    pub measured: f64,
    pub target: f64,
    pub tol: f64,
    pub check: Check,
    pub pass: bool,
    /// The identity or property the case exercises.
    pub anchor: String,
    /// Evaluation error, if the measurement could not be made.
    pub error: Option<String>,
}

impl Case {
    /// A case from a measurement; an `Err` becomes a failed case with `measured = NaN`.
    pub fn new(
        id: impl Into<String>,
        params: CaseParams,
        anchor: &str,
        check: Check,
        target: f64,
        tol: f64,
        measured: Result<f64>,
    ) -> Self {
        let (measured, error) = match measured {
            Ok(v) => (v, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let pass = error.is_none()
            && match check {
                Check::Within => (measured - target).abs() <= tol,
                Check::AtMost => measured <= target,
                Check::AtLeast => measured >= target,
            };
        Self { id: id.into(), params, inputs: vec![], measured, target, tol, check, pass, anchor: anchor.into(), error }
    }

    pub fn input(mut self, name: &str, value: f64) -> Self {
        self.inputs.push(Input { name: name.into(), value });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub seed: u64,
    pub grids: Vec<String>,
    pub version: String,
}

impl Environment {
    pub fn new(seed: u64, grids: Vec<String>) -> Self {
        Self { seed, grids, version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub environment: Environment,
}

/// CSV header, one row per case.
pub const CSV_HEADER: [&str; 12] =
    ["suite", "id", "gamma", "theta", "inputs", "measured", "target", "tol", "check", "pass", "anchor", "error"];

/// Round-trip formatting with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

impl VerificationReport {
    /// A report; zero cases is a structural error.
    pub fn new(suite: &str, cases: Vec<Case>, environment: Environment) -> Result<Self> {
        if cases.is_empty() {
            return Err(Error::InvalidParameter(format!("suite {suite} produced no cases")));
        }
        Ok(Self { suite: suite.into(), cases, environment })
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Case> {
        self.cases.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER).map_err(io)?;
        for c in &self.cases {
            let inputs: Vec<String> = c.inputs.iter().map(|i| format!("{}={}", i.name, fmt_f64(i.value))).collect();
            w.write_record([
                self.suite.clone(),
                c.id.clone(),
                fmt_f64(c.params.gamma),
                fmt_f64(c.params.theta),
                inputs.join(";"),
                fmt_f64(c.measured),
                fmt_f64(c.target),
                fmt_f64(c.tol),
                format!("{:?}", c.check).to_lowercase(),
                c.pass.to_string(),
                c.anchor.clone(),
                c.error.clone().unwrap_or_default(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp() -> CaseParams {
        CaseParams { gamma: 1.0, theta: 2.0 }
    }

    #[test]
    fn pass_rules() {
        assert!(Case::new("a", pp(), "x", Check::Within, 1.0, 1e-3, Ok(1.0005)).pass);
        assert!(!Case::new("a", pp(), "x", Check::Within, 1.0, 1e-3, Ok(1.002)).pass);
        assert!(Case::new("a", pp(), "x", Check::AtMost, 10.0, 0.0, Ok(3.0)).pass);
        assert!(!Case::new("a", pp(), "x", Check::AtLeast, 1.0, 0.0, Ok(0.0)).pass);
        assert!(!Case::new("a", pp(), "x", Check::Within, 0.0, 1.0, Ok(f64::NAN)).pass);
        let e = Case::new("a", pp(), "x", Check::AtMost, 1.0, 0.0, Err(Error::Domain("bad".into())));
        assert!(!e.pass && e.measured.is_nan() && e.error.as_deref() == Some("domain error: bad"));
    }

    #[test]
    fn csv_and_json_round_trip_precision() {
        let c = Case::new("c1", pp(), "a, quoted \"anchor\"", Check::Within, 0.1, 1e-9, Ok(0.1 + 1e-17))
            .input("t", 1.0 / 3.0);
        let r = VerificationReport::new("demo", vec![c], Environment::new(7, vec!["log:1:2:3".into()])).unwrap();
        let csv = r.to_csv().unwrap();
        let mut rd = csv::Reader::from_reader(csv.as_bytes());
        let row = rd.records().next().unwrap().unwrap();
        assert_eq!(row.get(4).unwrap(), "t=3.3333333333333331e-1");
        assert_eq!(row.get(5).unwrap().parse::<f64>().unwrap(), 0.1 + 1e-17);
        assert_eq!(row.get(10).unwrap(), "a, quoted \"anchor\"");
        let json: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(json["cases"][0]["inputs"][0]["value"].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(json["environment"]["seed"], 7);
        assert!(VerificationReport::new("empty", vec![], Environment::new(0, vec![])).is_err());
    }
}
