//! Seeded verification sweeps over the brackets and maps of `plie-core`,
//! reported as JSON.

pub mod config;
pub mod points;
pub mod report;
pub mod sampling;
pub mod suites;

pub use config::{ConfigError, ConfigLayer, RunConfig, Suite};
pub use report::RunReport;
pub use suites::run;
