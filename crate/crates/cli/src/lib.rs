//! Command-line front end: expression parsing, space descriptors, run
//! configuration and JSON reports.

pub mod app;
pub mod config;
pub mod parse;
pub mod space;
pub mod suite;

pub use app::{run, Outcome};
