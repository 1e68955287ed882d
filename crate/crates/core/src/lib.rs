//! Construction, canonicalization and verification of one-dimensional
//! unipolar (optical) orthogonal codes.

pub mod cli;
pub mod clique;
pub mod code_model;
pub mod correlation;
pub mod designer;
pub mod document;
pub mod edop;
pub mod error;

pub use code_model::{BinaryCode, CodeParams, Dopr, PartialDopr, StandardDopr, Wpr};
pub use designer::{DesignConfig, Family};
pub use error::{Error, Result};
