//! Polynomial moments of the cutoff kernel.
//!
//! The cutoff is a plain smooth truncation of the heat kernel, so its
//! low-degree polynomial moments do not vanish; this module measures and
//! reports the defect for every monomial below a parabolic-degree bound.
//! Odd-in-`x` monomials integrate to zero by the kernel's symmetry.

use super::heat::k;
use super::quad::trapezoid_2d;
use crate::algebra::multi_index::MultiIndex;
use crate::par::Exec;

#[derive(Debug, Clone, Copy)]
pub struct MomentDefect {
    pub monomial: MultiIndex,
    pub value: f64,
}

/// `∫ K(t,x) t^{k₁} x^{k₂} dx dt` for every monomial of parabolic degree
/// `< degree_bound`.
pub fn moment_defect(degree_bound: f64, exec: Exec, n: usize) -> Vec<MomentDefect> {
    let bound = degree_bound.ceil().max(0.0) as u32;
    MultiIndex::below_degree(bound)
        .into_iter()
        .filter(|m| (m.parabolic_degree() as f64) < degree_bound)
        .map(|m| MomentDefect {
            monomial: m,
            value: trapezoid_2d(
                exec,
                |u, x| {
                    let t = u * u;
                    2.0 * u * k(t, x) * t.powi(m.k1 as i32) * x.powi(m.k2 as i32)
                },
                (1e-12, 1.0, n),
                (-1.0, 1.0, 2 * n),
            ),
        })
        .collect()
}
