//! Rational power series and weighted automata over exact semirings.
//!
//! The crate is organised bottom-up: [`semiring`] supplies exact arithmetic
//! with a (partial) star, [`matrix`] lifts it to square and rectangular
//! matrices, [`series`] to truncated formal power series, [`term`] to the
//! rational expression language, and [`automata`] ties terms and series
//! together through weighted automata. [`harness`] checks the classical
//! star identities on generated instances.

pub mod automata;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod par;
pub mod semiring;
pub mod series;
pub mod term;

pub use error::{Error, Result};
