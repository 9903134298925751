//! Reproducible verification campaigns, reports and the `genosc` command
//! line on top of [`genosc_core`].

pub mod cli;
pub mod dirac;
pub mod eval;
pub mod report;
pub mod spectrum;
pub mod verify;
pub mod workers;

pub use report::VerificationReport;
pub use verify::{run_verify, Tolerances, VerifyConfig};
