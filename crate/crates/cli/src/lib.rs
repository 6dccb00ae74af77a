//! Command-line front end for the `dmra` covering-array codec: the array
//! file format, the subcommands and the parameter sweep.

pub mod commands;
pub mod format;
pub mod sweep;
