//! Exact weight-lattice arithmetic for the classical groups, branching along
//! explicit subgroup embeddings, permutation-group transitivity tests and a
//! table-driven verifier built on top of them.

pub mod error;
pub mod rootsys;
pub mod weylchar;
pub mod embedcat;
pub mod permact;
pub mod verify;

mod ambient;

pub use error::{Error, Result};
