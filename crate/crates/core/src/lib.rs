//! Exact computations in the double tensor Hopf algebra over words:
//! Schröder trees, non-crossing partitions, antipodes, and cumulants of
//! non-commutative probability.

pub mod error;
pub mod hopf;
pub mod ncprob;
pub mod partitions;
pub mod poset;
pub mod rational;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
