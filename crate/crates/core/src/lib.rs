#![no_std]

extern crate alloc;

pub mod arith;
pub mod characters;
pub mod checks;
pub mod error;
pub mod qseries;
pub mod renorm;
pub mod quasi_shuffle;

pub use error::{Error, Result};
