//! Renormalisation constants and their small-ε targets.
//!
//! Each constant is produced by two quadratures: the direct integral in
//! original coordinates and the parabolically rescaled form; the pair acts as
//! its own consistency check. The targets `A` and `B` are computed by
//! independent quadratures (with an empirically extrapolated time tail for
//! `B`) so that the closeness of `A` and `B` genuinely tests the kernel
//! identity rather than restating it.

use super::heat::{g, k, k_x};
use super::mollifier::{Mollifier, T_HALF_WIDTH, X_HALF_WIDTH};
use super::quad::{trapezoid_2d, QuadratureSpec};
use crate::bphz::PairMomentTable;
use crate::par::{map_indexed, Exec};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("epsilon {0} is below the grid capability {1}")]
    ResolutionTooCoarse(f64, f64),
    #[error("epsilon {0} is too large for the cutoff to act as the whole-line kernel")]
    EpsilonTooLarge(f64),
}

/// Smallest ε the tabulated mollifier quadratures can resolve.
pub const EPS_FLOOR: f64 = 1e-3;
/// Largest ε for which the cutoff equals the heat kernel on the rescaled
/// mollifier support.
pub const EPS_CEIL: f64 = 0.5;

#[derive(Debug, Clone, Copy)]
pub struct ConstantEval {
    /// primary value (rescaled-form quadrature)
    pub value: f64,
    pub rescaled: f64,
    pub direct: f64,
}

pub struct KernelSuite {
    pub mollifier: Mollifier,
    pub exec: Exec,
    /// base node count per unit length of the rescaled grids
    pub resolution: usize,
}

impl KernelSuite {
    pub fn new(exec: Exec) -> Self {
        KernelSuite {
            mollifier: Mollifier::new(),
            exec,
            resolution: 384,
        }
    }

    fn check_eps(&self, eps: f64) -> Result<(), KernelError> {
        if eps < EPS_FLOOR {
            return Err(KernelError::ResolutionTooCoarse(eps, EPS_FLOOR));
        }
        if eps > EPS_CEIL {
            return Err(KernelError::EpsilonTooLarge(eps));
        }
        Ok(())
    }

    /// `C¹(ε) = ∫ ρ_ε (K∗ρ_ε)`.
    pub fn constant_c1(&self, eps: f64) -> Result<ConstantEval, KernelError> {
        self.check_eps(eps)?;
        let n = self.resolution;
        let m = &self.mollifier;
        // rescaled form: (1/ε) ∫ S¹_ε(K) ρ∗ρ, with t = u²
        let rescaled = trapezoid_2d(
            self.exec,
            |u, x| {
                let t = u * u;
                let s = x * x + t;
                2.0 * u * g(t, x) * super::heat::chi(eps * eps * s) * m.rho_conv2(t, x)
            },
            (1e-12, (2.0 * T_HALF_WIDTH).sqrt(), n),
            (-2.0 * X_HALF_WIDTH, 2.0 * X_HALF_WIDTH, 2 * n),
        ) / eps;
        // direct form: ∫ K · (ρ∗ρ)_ε over the rescaled support, t = v²
        let e3 = eps * eps * eps;
        let direct = trapezoid_2d(
            self.exec,
            |v, b| {
                let a = v * v;
                2.0 * v * k(a, b) * m.rho_conv2(a / (eps * eps), b / eps) / e3
            },
            (1e-12, eps * (2.0 * T_HALF_WIDTH).sqrt(), n),
            (-eps * 2.0 * X_HALF_WIDTH, eps * 2.0 * X_HALF_WIDTH, 2 * n),
        );
        Ok(ConstantEval {
            value: rescaled,
            rescaled,
            direct,
        })
    }

    /// `C²(ε) = ∫ (∂ₓK ∗ ρ_ε)²`.
    pub fn constant_c2(&self, eps: f64) -> Result<ConstantEval, KernelError> {
        self.check_eps(eps)?;
        let m = &self.mollifier;
        let inner = 24usize;

        // direct form in original coordinates; the integrand concentrates at
        // the parabolic corner, so both grids are tied to ε
        let conv = |t: f64, x: f64| -> f64 {
            trapezoid_2d(
                Exec::Sequential,
                |s, y| k_x(t - s, x - y) * m.rho_eps(eps, s, y),
                (-T_HALF_WIDTH * eps * eps, T_HALF_WIDTH * eps * eps, inner),
                (-X_HALF_WIDTH * eps, X_HALF_WIDTH * eps, inner),
            )
        };
        let v_max = (1.0 + eps * eps).sqrt();
        let n_v = ((8.0 * v_max / (eps / 4.0)) as usize).clamp(256, 1600);
        let x_max = 1.0 + eps;
        let n_x = ((2.0 * x_max / (eps / 6.0)) as usize).clamp(256, 1600);
        let direct = trapezoid_2d(
            self.exec,
            |v, x| {
                let w = conv(v * v, x);
                2.0 * v * w * w
            },
            (1e-12, v_max, n_v),
            (-x_max, x_max, n_x),
        );

        // rescaled form: (1/ε) ∫ (S²_ε(∂ₓK) ∗ ρ)², support |t| ≲ ε⁻²
        let scaled_kernel = |t: f64, x: f64| eps * eps * k_x(eps * eps * t, eps * x);
        let conv_r = |t: f64, x: f64| -> f64 {
            trapezoid_2d(
                Exec::Sequential,
                |s, y| scaled_kernel(t - s, x - y) * m.rho(s, y),
                (-T_HALF_WIDTH, T_HALF_WIDTH, inner),
                (-X_HALF_WIDTH, X_HALF_WIDTH, inner),
            )
        };
        let w_max = (1.0 + eps * eps).sqrt() / eps;
        let n_w = ((8.0 * w_max) as usize).clamp(256, 2600);
        let xr_max = (1.0 + eps) / eps + X_HALF_WIDTH;
        let n_xr = ((8.0 * xr_max) as usize).clamp(256, 2600);
        let rescaled = trapezoid_2d(
            self.exec,
            |w, x| {
                let u = conv_r(w * w, x);
                2.0 * w * u * u
            },
            (1e-12, w_max, n_w),
            (-xr_max, xr_max, n_xr),
        ) / eps;

        Ok(ConstantEval {
            value: rescaled,
            rescaled,
            direct,
        })
    }

    /// Target `A = ∫ G ρ∗ρ` with a Richardson self-check.
    pub fn target_a(&self, spec: &QuadratureSpec) -> f64 {
        let m = &self.mollifier;
        spec.richardson(|n| {
            trapezoid_2d(
                self.exec,
                |u, x| {
                    let t = u * u;
                    2.0 * u * g(t, x) * m.rho_conv2(t, x)
                },
                (1e-12, (2.0 * T_HALF_WIDTH).sqrt(), n),
                (-2.0 * X_HALF_WIDTH, 2.0 * X_HALF_WIDTH, 2 * n),
            )
        })
        .value
    }

    /// `(G_x ∗ ρ)(t, x)` by direct quadrature over the mollifier box.
    pub fn gx_conv_rho(&self, t: f64, x: f64, inner: usize) -> f64 {
        let m = &self.mollifier;
        trapezoid_2d(
            Exec::Sequential,
            |s, y| super::heat::g_x(t - s, x - y) * m.rho(s, y),
            (-T_HALF_WIDTH, T_HALF_WIDTH, inner),
            (-X_HALF_WIDTH, X_HALF_WIDTH, inner),
        )
    }

    /// `I(t) = ∫ (G_x∗ρ)²(t, x) dx` with a Gaussian-width window.
    fn b_slice(&self, t: f64, inner: usize, nx: usize) -> f64 {
        let width = X_HALF_WIDTH + 14.0 * (t + T_HALF_WIDTH).max(1e-6).sqrt();
        let h = 2.0 * width / nx as f64;
        let mut acc = 0.0;
        for j in 0..=nx {
            let x = -width + j as f64 * h;
            let w = if j == 0 || j == nx { 0.5 } else { 1.0 };
            let v = self.gx_conv_rho(t, x, inner);
            acc += w * v * v;
        }
        acc * h
    }

    /// Target `B = ∫ (G_x∗ρ)²`, split into a finite body and an extrapolated
    /// power-law tail fitted on the numerically computed slices.
    pub fn target_b(&self, spec: &QuadratureSpec) -> f64 {
        let eval = |n: usize| {
            let inner = 20 + n / 64;
            let nx = 4 * n;
            let t_cut = 64.0f64;
            // body, part one: t ∈ [−1/4, 2], uniform
            let n1 = 2 * n;
            let h1 = (2.0 + T_HALF_WIDTH) / n1 as f64;
            let slices1 = map_indexed(self.exec, n1 + 1, |i| {
                self.b_slice(-T_HALF_WIDTH + i as f64 * h1, inner, nx)
            });
            let mut body = 0.0;
            for (i, v) in slices1.iter().enumerate() {
                let w = if i == 0 || i == n1 { 0.5 } else { 1.0 };
                body += w * v * h1;
            }
            // body, part two: t ∈ [2, 64] with t = w²
            let n2 = n;
            let (w_lo, w_hi) = (2.0f64.sqrt(), t_cut.sqrt());
            let h2 = (w_hi - w_lo) / n2 as f64;
            let slices2 = map_indexed(self.exec, n2 + 1, |i| {
                let w = w_lo + i as f64 * h2;
                2.0 * w * self.b_slice(w * w, inner, nx)
            });
            for (i, v) in slices2.iter().enumerate() {
                let w = if i == 0 || i == n2 { 0.5 } else { 1.0 };
                body += w * v * h2;
            }
            // tail: fit I(t) = c₀t^{-3/2} + c₁t^{-5/2} + c₂t^{-7/2} on three
            // computed slices and integrate the fit beyond the cut
            let ts = [t_cut, t_cut / 2.0, t_cut / 4.0];
            let vals: Vec<f64> = ts
                .iter()
                .map(|t| self.b_slice(*t, inner, nx))
                .collect();
            let coeffs = fit_power_tail(&ts, &vals);
            let tail = 2.0 * coeffs[0] / t_cut.sqrt()
                + (2.0 / 3.0) * coeffs[1] / t_cut.powf(1.5)
                + (2.0 / 5.0) * coeffs[2] / t_cut.powf(2.5);
            body + tail
        };
        spec.richardson(eval).value
    }

    /// Both targets `(A, B)`.
    pub fn asymptotic_targets(&self, spec: &QuadratureSpec) -> (f64, f64) {
        (self.target_a(spec), self.target_b(spec))
    }

    /// `∫ (K∗ρ_ε)²` in original coordinates.
    pub fn m_kk(&self, eps: f64) -> Result<f64, KernelError> {
        self.check_eps(eps)?;
        let m = &self.mollifier;
        let inner = 20usize;
        let conv = |t: f64, x: f64| -> f64 {
            trapezoid_2d(
                Exec::Sequential,
                |s, y| k(t - s, x - y) * m.rho_eps(eps, s, y),
                (-T_HALF_WIDTH * eps * eps, T_HALF_WIDTH * eps * eps, inner),
                (-X_HALF_WIDTH * eps, X_HALF_WIDTH * eps, inner),
            )
        };
        let v_max = (1.0 + eps * eps).sqrt();
        let n_v = ((8.0 * v_max / (eps / 2.0)) as usize).clamp(256, 1024);
        let x_max = 1.0 + eps;
        let n_x = ((2.0 * x_max / (eps / 3.0)) as usize).clamp(256, 1024);
        Ok(trapezoid_2d(
            self.exec,
            |v, x| {
                let w = conv(v * v, x);
                2.0 * v * w * w
            },
            (1e-12, v_max, n_v),
            (-x_max, x_max, n_x),
        ))
    }

    /// `∫ ρ_ε² = ε⁻³ ∫ ρ²`.
    pub fn m_rhorho(&self, eps: f64) -> Result<f64, KernelError> {
        self.check_eps(eps)?;
        Ok(self.mollifier.l2_norm_sq() / (eps * eps * eps))
    }

    /// Pair-moment table with numeric values at ε.
    pub fn moment_table(&self, eps: f64) -> Result<PairMomentTable, KernelError> {
        Ok(PairMomentTable::with_numerics(
            self.constant_c1(eps)?.value,
            self.constant_c2(eps)?.value,
            self.m_kk(eps)?,
            self.m_rhorho(eps)?,
        ))
    }
}

/// Solves the 3×3 Vandermonde-type system for the power-law tail fit.
pub(crate) fn fit_power_tail_public(ts: &[f64; 3], vals: &[f64]) -> [f64; 3] {
    fit_power_tail(ts, vals)
}

fn fit_power_tail(ts: &[f64; 3], vals: &[f64]) -> [f64; 3] {
    let mut a = [[0.0f64; 3]; 3];
    let mut b = [0.0f64; 3];
    for i in 0..3 {
        a[i][0] = ts[i].powf(-1.5);
        a[i][1] = ts[i].powf(-2.5);
        a[i][2] = ts[i].powf(-3.5);
        b[i] = vals[i];
    }
    // Gaussian elimination
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|i, j| a[*i][col].abs().total_cmp(&a[*j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for c in col..3 {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for c in row + 1..3 {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    x
}
