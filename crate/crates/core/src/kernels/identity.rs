//! Numerical verification of the correlation identity
//! `2 ∫ G_x(z − w) G_x(−w) dw = G(z) + G(−z)`.
//!
//! The left-hand side is computed by honest quadrature: for each history lag
//! the spatial cross-correlation is integrated on a window matched to the
//! Gaussian widths, the lag integral is taken with a square-root substitution,
//! and the algebraic lag tail is extrapolated from computed slices.

use super::heat::{g, g_x};

#[derive(Debug, Clone, Copy)]
pub struct IdentityResidual {
    pub t: f64,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// `I(σ) = ∫ G_x(t+σ, x−y) G_x(σ, −y) dy`.
fn cross_slice(t: f64, x: f64, sigma: f64, nx: usize) -> f64 {
    let width = 14.0 * sigma.sqrt();
    let h = 2.0 * width / nx as f64;
    let mut acc = 0.0;
    for j in 0..=nx {
        let y = -width + j as f64 * h;
        let w = if j == 0 || j == nx { 0.5 } else { 1.0 };
        acc += w * g_x(t + sigma, x - y) * g_x(sigma, -y);
    }
    acc * h
}

/// Residual of the identity at `z = (t, x)` with `t > 0`.
pub fn kernel_identity_residual(t: f64, x: f64, n: usize) -> IdentityResidual {
    assert!(t > 0.0, "sample points need positive time");
    let sigma_cut = 200.0f64;
    let nx = 4 * n;
    // body: σ = v², v ∈ (0, √cut]
    let n_v = 8 * n;
    let v_hi = sigma_cut.sqrt();
    let h = v_hi / n_v as f64;
    let mut body = 0.0;
    for i in 0..=n_v {
        let v = (i as f64 * h).max(1e-9);
        let w = if i == 0 || i == n_v { 0.5 } else { 1.0 };
        body += w * 2.0 * v * cross_slice(t, x, v * v, nx);
    }
    body *= h;
    // tail: fit I(σ) = c₀σ^{-3/2} + c₁σ^{-5/2} + c₂σ^{-7/2}
    let ts = [sigma_cut, sigma_cut / 2.0, sigma_cut / 4.0];
    let vals: Vec<f64> = ts.iter().map(|s| cross_slice(t, x, *s, nx)).collect();
    let c = super::constants::fit_power_tail_public(&ts, &vals);
    let tail = 2.0 * c[0] / sigma_cut.sqrt()
        + (2.0 / 3.0) * c[1] / sigma_cut.powf(1.5)
        + (2.0 / 5.0) * c[2] / sigma_cut.powf(2.5);

    let lhs = 2.0 * (body + tail);
    let rhs = g(t, x) + g(-t, -x);
    IdentityResidual {
        t,
        x,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    }
}
