//! Command-line front end and HTTP review service for `slangguard-core`.

pub mod cli;
pub mod server;
