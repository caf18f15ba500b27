//! Exact-arithmetic layer: symbols, decorated trees, homogeneities, rules and
//! the structure group.

pub mod basis;
pub mod gamma;
pub mod kappa;
pub mod multi_index;
pub mod rule;
pub mod scalar;
pub mod symbol;
pub mod tree;

pub use gamma::FormalSum;
pub use scalar::{Moment, Rational, Scalar};
