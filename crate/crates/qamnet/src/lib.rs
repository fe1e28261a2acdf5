//! File formats, experiment runners and the `qamnet` command line on top of
//! [`qamnet_core`].

pub mod cli;
pub mod error;
pub mod io;
pub mod runner;
pub mod store;

pub use error::{Error, Result};
