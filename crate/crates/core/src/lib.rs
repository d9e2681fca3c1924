//! Symbolic engine for symmetric bimonoidal intermuting categories.

pub mod arrow;
pub mod bar;
pub mod decide;
pub mod error;
pub mod parse;
pub mod random;
pub mod sai;
pub mod simplicial;
pub mod syntax;
pub mod unit;

pub use error::{Error, Result};
