//! Input loading and structure reports for the `so4` binary.

pub mod input;
pub mod report;
