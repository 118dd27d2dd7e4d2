//! Verification suites.

pub mod report;
pub mod suites;

pub use report::{Case, CaseParams, Check, Environment, Input, VerificationReport, CSV_HEADER};
pub use suites::*;
