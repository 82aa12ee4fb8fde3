//! Spec files, CSV reports, parallel sampling and the acceptance suite on top
//! of `levyasym-core`.

pub mod acceptance;
pub mod commands;
pub mod compare;
pub mod error;
pub mod parallel;
pub mod report;
pub mod spec_io;

pub use error::CliError;
