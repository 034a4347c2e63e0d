//! Library surface of the command-line driver: the experiment
//! configuration schema, shared with the integration tests.

pub mod config;
