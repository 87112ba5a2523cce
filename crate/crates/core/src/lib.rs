//! σ-stacks, the two-stack σ-machine, classical and bivincular pattern
//! containment, and exhaustive enumerators over small symmetric groups.

pub mod classify;
pub mod conjecture;
pub mod enumerate;
pub mod error;
pub mod machine;
pub mod pattern;
pub mod perm;
pub mod reference;
mod search;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use pattern::BivincularPattern;
pub use perm::{Occurrence, Permutation};
