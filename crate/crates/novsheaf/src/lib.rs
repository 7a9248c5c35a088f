//! File formats, random instance generators, demos and the command line
//! for [`novsheaf_core`].

// Errors wrap the core errors, which carry exact exponents.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod demo;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gen;

pub use error::{Error, Result};
