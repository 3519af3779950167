//! Graph I/O, run configuration, corpus verification and reports.

pub mod config;
pub mod format;
pub mod report;
pub mod sweep;
pub mod verify;

pub use config::RunConfig;
pub use format::{parse_graph, read_graph, serialize_graph, write_graph};
pub use report::{render, ReportFormat, CSV_HEADER};
pub use sweep::{run_sweep, SweepFamily, SweepSpec};
pub use verify::{run_verification, Summary, VerificationRecord};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "BIHOLE_WORKERS";

/// Worker count from the environment, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&w: &usize| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
