//! Command-line front end: graph formats, certificate envelopes and the
//! subcommand implementations behind the `pinch` binary.

pub mod app;
pub mod envelope;
pub mod formats;
