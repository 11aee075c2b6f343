//! Fixpoint operators on finite 1- and 2-categorical models, and a checker
//! for the fixpoint, uniformity, dinaturality and coherence laws.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cat;
pub mod cli;
pub mod error;
pub mod format;
pub mod laws;
pub mod poly;
pub mod poset;
pub mod rel;

pub use error::{Error, Result};
