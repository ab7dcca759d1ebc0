//! Library surface of the simulator CLI: configuration loading, run
//! execution, and file emission, kept separate from the binary so tests
//! can drive the full pipeline in-process.

pub mod config;
pub mod exec;
pub mod output;

pub use config::{load_config, ConfigError, ConfigInputs, LawChoice, RunConfig, ScenarioName};
pub use exec::{execute, summarize, ExecError, RunSummary, ViolationReport};
