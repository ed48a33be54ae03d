//! JSON file formats and the `barcof` command line over `barcof-core`.

pub mod commands;
pub mod format;
