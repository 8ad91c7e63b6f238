//! Text formats, reports and the command-line front end for the
//! supersymmetric minimal surface toolkit.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod error;
pub mod parse;
pub mod report;
pub mod serialize;

pub use error::{Error, Result};
pub use parse::{parse_expression, parse_ode, parse_source, Source};
pub use serialize::serialize;
