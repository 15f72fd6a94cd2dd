//! Two-qubit entanglement and CHSH nonlocality.
//!
//! Dense 4x4 complex linear algebra, validated state types, concurrence and
//! entanglement of formation, the maximal CHSH value with its optimal
//! measurement settings, and the concurrence bound on that value.

#![no_std]
#![allow(clippy::needless_range_loop)]

#[cfg(test)]
extern crate std;

pub mod bound;
pub mod entanglement;
mod error;
pub mod nonlocality;
pub mod qmat;
pub mod shared;
pub mod states;

pub use error::{Error, Result};
