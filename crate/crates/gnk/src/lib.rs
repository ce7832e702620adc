//! Command-line front end and file formats for `gnk-core`.

pub mod commands;
pub mod format;
pub mod manifest;
