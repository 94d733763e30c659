//! Input format, reports and subcommands of the `mfull` binary.

pub mod commands;
pub mod parse;
pub mod report;
pub mod verify;
