//! Heat kernel on the unit torus: image sum and spectral series, the trace
//! function `C(s) = ‖P_s‖²`, and its time integral.

use super::heat::g;
use super::quad::simpson;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PeriodicError {
    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),
}

/// Number of images kept in the sum `Σ_m G(t, x+m)`.
pub fn image_range(t: f64) -> i64 {
    (3.0 + 6.0 * t.max(0.0).sqrt()).ceil() as i64
}

/// Image-sum evaluation; the truncation error is bounded by the Gaussian tail
/// beyond the kept images.
pub fn p_image(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let range = image_range(t);
    let mut acc = 0.0;
    for m in -range..=range {
        acc += g(t, x + m as f64);
    }
    acc
}

/// Spectral evaluation `1 + 2Σ_k e^{−4π²k²t} cos(2πkx)`.
pub fn p_spectral(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let mut acc = 1.0;
    let mut k = 1.0f64;
    loop {
        let decay = (-4.0 * std::f64::consts::PI.powi(2) * k * k * t).exp();
        if decay < 1e-18 {
            break;
        }
        acc += 2.0 * decay * (2.0 * std::f64::consts::PI * k * x).cos();
        k += 1.0;
    }
    acc
}

/// Periodic heat kernel; image sum for short times, spectral series otherwise.
pub fn p(t: f64, x: f64) -> f64 {
    if t < 0.05 {
        p_image(t, x)
    } else {
        p_spectral(t, x)
    }
}

/// `C(s) = ‖P_s‖²_{L²(𝕋)} = P_{2s}(0)`.
pub fn trace_c(s: f64) -> Result<f64, PeriodicError> {
    if s <= 0.0 {
        return Err(PeriodicError::NonPositiveTime(s));
    }
    Ok(p(2.0 * s, 0.0))
}

/// `∫₀ᵗ C(s) ds`, with the square-root substitution absorbing the integrable
/// singularity at `s = 0`.
pub fn int_trace_c(t: f64, n: usize) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    simpson(
        |u| 2.0 * u * trace_c(u * u).unwrap_or(0.0),
        1e-9,
        t.sqrt(),
        n,
    )
}

/// `‖∂ₓP_τ‖²_{L²(𝕋)}` truncated below the mode cutoff (exact Parseval sum of
/// the truncated series).
pub fn grad_p_norm_sq_truncated(tau: f64, kmax: usize) -> f64 {
    let mut acc = 0.0;
    for k in 1..=kmax {
        let w = 2.0 * std::f64::consts::PI * k as f64;
        acc += 2.0 * w * w * (-2.0 * w * w * tau).exp();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_and_spectral_agree() {
        for t in [1e-3, 5e-3, 0.03, 0.1, 0.5, 1.0] {
            for x in [0.0, 0.1, 0.37, 0.5] {
                let a = p_image(t, x);
                let b = p_spectral(t, x);
                assert!((a - b).abs() < 1e-10, "t={t} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn unit_mass_on_the_torus() {
        for t in [0.01, 0.2, 1.0] {
            let mass = simpson(|x| p(t, x), 0.0, 1.0, 2048);
            assert!((mass - 1.0).abs() < 1e-9, "t = {t}: {mass}");
        }
    }

    #[test]
    fn trace_matches_direct_quadrature() {
        // C(s) = ∫ P_s(y)² dy by Chapman–Kolmogorov; checked against the
        // direct quadrature of the square
        for s in [0.01, 0.1, 0.6] {
            let direct = simpson(|y| p(s, y) * p(s, y), 0.0, 1.0, 4096);
            let semigroup = trace_c(s).unwrap();
            assert!((direct - semigroup).abs() < 1e-8, "s = {s}");
        }
        assert!(trace_c(0.0).is_err());
        assert!(trace_c(-1.0).is_err());
    }

    #[test]
    fn trace_tends_to_one() {
        assert!((trace_c(4.0).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn integrated_trace_is_finite_and_self_consistent() {
        let a = int_trace_c(1.0, 512);
        let b = int_trace_c(1.0, 1024);
        assert!(a.is_finite() && a > 0.0);
        assert!((a - b).abs() < 1e-8);
    }
}
