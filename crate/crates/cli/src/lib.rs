//! Configuration files, traces, verification cases and analytic
//! comparisons for the bundled particle methods of `pm-core`.

pub mod compare;
pub mod config;
mod error;
pub mod examples;
pub mod trace;
pub mod verify;

pub use compare::{compare_analytic, ErrorReport};
pub use config::{load_instance, Instance, Loaded, RunConfig};
pub use error::CliError;
pub use trace::{run_traced, write_trace, TraceRecord};
pub use verify::{verify_builtin, Report};
