//! Max-Cut QAOA toolkit: graph instances, QUBO/Ising encodings, a small
//! circuit IR, a dense statevector simulator, Nelder–Mead, and the
//! variational loop that ties them together.

extern crate self as qaoa_core;

pub mod circuit;
pub mod encoding;
pub mod error;
pub mod graph;
pub mod optimizer;
pub mod qaoa;
pub mod rng;
pub mod sim;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod oracle;

pub use error::{Error, Result};
