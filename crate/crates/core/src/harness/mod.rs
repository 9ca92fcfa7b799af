//! Configuration, orchestration and the command-line front end.

pub mod cli;
pub mod config;
pub mod csv;
pub mod figures;
pub mod scenario;
pub mod sweep;
pub mod validate;

pub use config::{Overrides, ScenarioConfig};
pub use scenario::Scenario;
