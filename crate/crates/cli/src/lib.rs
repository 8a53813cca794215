//! Command layer behind the `ddvv` binary. Each command builds a manifest,
//! runs the corresponding library calls, and returns a JSON-ready report
//! with a pass/fail/counterexample status.

pub mod commands;
pub mod manifest;
