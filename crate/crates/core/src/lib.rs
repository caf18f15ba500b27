//! Renormalisation algebra and numerical verification kit for the additive
//! stochastic heat equation with periodic boundary conditions.
//!
//! The crate is organised in four layers:
//!
//! * [`algebra`] — exact-arithmetic symbols, decorated trees, homogeneities,
//!   rules and the structure group;
//! * [`bphz`] — forest coproduct, twisted antipode, Gaussian characters and
//!   the renormalisation map, all over exact rationals;
//! * [`kernels`] — heat kernels, mollifiers, cutoff splits and the quadrature
//!   machinery behind the renormalisation constants;
//! * [`spde`] / [`model`] — noise generation, solvers, chaos integrals and the
//!   grid realisation of canonical/renormalised models.
//!
//! Data-parallel loops run on rayon when the `parallel` feature (default) is
//! enabled; every entry point also has a sequential code path used by the
//! benchmark suite and by builds with `--no-default-features`.

pub mod algebra;
pub mod bphz;
pub mod kernels;
pub mod model;
pub mod par;
pub mod spde;

pub use algebra::kappa::KappaValue;
pub use algebra::multi_index::MultiIndex;
pub use algebra::symbol::Symbol;
pub use algebra::tree::{DecoratedTree, EdgeLabel, Forest};
