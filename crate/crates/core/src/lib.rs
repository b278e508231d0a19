//! Exact verification of commutative Frobenius pairs with Möbius maps.

pub mod error;
pub mod ring;
pub mod tensor;
pub mod theory;
pub mod pair;
pub mod cobordism;
pub mod pole;
pub mod cube;
pub mod cli;

pub use error::{Error, Result};
