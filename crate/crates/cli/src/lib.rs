//! Command-line orchestration of the verification suites and the JSON report
//! they share.

pub mod app;
pub mod report;
pub mod suites;
