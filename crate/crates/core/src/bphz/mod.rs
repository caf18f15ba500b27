//! Forest coproduct, twisted antipode, Gaussian characters and the
//! renormalisation map.
//!
//! Everything here is exact: coefficients are rational polynomials in the
//! named pair moments, and the map produced by the coproduct/antipode/character
//! pipeline is compared coefficient-by-coefficient against its closed form.

pub mod character;
pub mod convergence;
pub mod coproduct;
pub mod renorm;

pub use character::{wick_character, Character, CharacterMode, LeafKernel, PairMomentTable};
pub use convergence::{convergence_criterion_check, ConvergenceReport};
pub use coproduct::{contract, coproduct_minus, subforests, SubforestEmbedding, TensorSum};
pub use renorm::{closed_form_m, BphzEngine};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BphzError {
    #[error("tree is outside the admissible domain: {0}")]
    OutOfScope(String),
    #[error("subforest is not embedded in the host tree")]
    BadEmbedding,
    #[error("renormalised expansion leaves the symbol space at tree {0}")]
    LeavesSymbolSpace(String),
    #[error("kernel pair ({0:?}, {1:?}) is outside the pair-moment table")]
    UnknownPair(LeafKernel, LeafKernel),
    #[error("numeric moment value missing for {0}")]
    MissingNumeric(&'static str),
}
