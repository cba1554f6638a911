//! Command-line runner for the driven-chain simulation toolkit.
//!
//! The library side exists so the integration and acceptance suites can
//! drive exactly the code the binary runs:
//!
//! - [`config`]: layered `key = value` configuration with line-numbered
//!   errors (defaults < preset < file < subcommand < overrides).
//! - [`recipes`]: named presets pinning the parameter sets of the standard
//!   scenarios (`figure1a` … `figure7b`).
//! - [`runner`]: experiment execution and machine-readable error records.
//! - [`csv`]: deterministic CSV emission (12 significant digits, LF,
//!   header row mandatory).

pub mod config;
pub mod csv;
pub mod recipes;
pub mod runner;
