//! Saddle-point asymptotics for Poisson arrival sums with a Lévy density on
//! `(0, 1]`, together with independent numerical oracles.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod cumulant;
pub mod density;
pub mod error;
pub mod montecarlo;
pub mod oracles;
pub mod poly;
pub mod quadrature;
pub mod saddle;
pub mod special;

pub use error::{Error, Result};
