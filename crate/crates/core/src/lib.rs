//! Exact two-terminal and all-terminal reliability of K4-ladders and K3-cylinders,
//! with tools for generating functions, complex zeros and critical parameters.

pub mod error;
pub mod asym;
pub mod exact;
pub mod genfunc;
pub mod graphs;
pub mod mp;
pub mod oracle;
pub mod transfer;
pub mod zeros;

pub use error::{Error, Result};
