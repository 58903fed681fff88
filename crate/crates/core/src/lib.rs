//! Infinite Johnson and Kneser graphs over eventually periodic subsets of N,
//! their automorphisms, and finite oracles to cross-check them.

pub mod auto;
pub mod error;
pub mod graph;
pub mod lang;
pub mod oracle;
pub mod perm;
pub mod sample;
pub mod setalg;
pub mod suite;

pub use error::{Error, Result};
