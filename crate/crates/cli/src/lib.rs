//! Front end for `census-core`: golden-table verification, sweeps and
//! rendering of per-prime reports.

pub mod error;
pub mod golden;
pub mod render;
pub mod sweep;
pub mod verify;

pub use error::CliError;
