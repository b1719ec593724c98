//! Command-line front end for `rankmetric`: one-shot reports and the
//! theorem-audit suite, which emits one certificate per claim and parameter
//! point as newline-delimited JSON.

pub mod certificate;
pub mod checks;
pub mod error;
pub mod report;
pub mod suite;

pub use certificate::{Certificate, Params, Verdict};
pub use error::{CliError, CliResult};
pub use report::{construct_and_report, BasisSpec, Kind, ReportRequest};
pub use suite::{run_suite, AnticodePoint, SuiteConfig, TowerSpec};
