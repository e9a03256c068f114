//! Scenario files, reports and the suite runner behind the `l1fixed` binary.

pub mod error;
pub mod report;
pub mod run;
pub mod schema;
pub mod suite;

pub use error::CliError;
pub use report::{Check, Report, Results, Status};
pub use run::{execute, run_scenario, Overrides};
pub use schema::{parse_scenario, Scenario, Task};
pub use suite::{run_suite, summary_table, SuiteOutcome};
