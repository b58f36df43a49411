//! Verification suites, tables, reports and diagrams behind the
//! `toric-boundary` binary.

pub mod config;
pub mod report;
pub mod suites;
pub mod svg;

use config::RunConfig;
use report::Report;

/// Runs the configured suites and assembles the report.
pub fn verify(cfg: &RunConfig) -> Report {
    let suites = suites::run(cfg);
    let config = cfg.pairs().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Report::new(cfg.seed, config, suites)
}
