#![no_std]

extern crate alloc;

pub mod invariants;
pub mod linalg;
pub mod modp;
pub mod groebner;
pub mod poly;
pub mod presentation;
pub mod resolution;
pub mod rational;
pub mod report;

pub use rational::Rational;

#[cfg(test)]
mod testutil;
