//! Quadrature helpers with deterministic parallel reductions.

use crate::par::{block_sum, Exec};

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64 + Sync, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Trapezoid rule on a uniform grid.
pub fn trapezoid(f: impl Fn(f64) -> f64 + Sync, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for i in 1..n {
        acc += f(a + i as f64 * h);
    }
    acc * h
}

/// 2-D tensor trapezoid with blocked parallel reduction over rows.
pub fn trapezoid_2d(
    exec: Exec,
    f: impl Fn(f64, f64) -> f64 + Sync,
    (a1, b1, n1): (f64, f64, usize),
    (a2, b2, n2): (f64, f64, usize),
) -> f64 {
    let h1 = (b1 - a1) / n1 as f64;
    let h2 = (b2 - a2) / n2 as f64;
    let row = |i: usize| -> f64 {
        let x = a1 + i as f64 * h1;
        let wx = if i == 0 || i == n1 { 0.5 } else { 1.0 };
        let mut acc = 0.0;
        for j in 0..=n2 {
            let y = a2 + j as f64 * h2;
            let wy = if j == 0 || j == n2 { 0.5 } else { 1.0 };
            acc += wy * f(x, y);
        }
        wx * acc
    };
    block_sum(exec, n1 + 1, 8, row) * h1 * h2
}

/// Declared target accuracy plus the halved-step self-consistency check.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub base_resolution: usize,
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            base_resolution: 256,
            tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// difference against the halved-step evaluation
    pub refinement_delta: f64,
    pub within_tolerance: bool,
}

impl QuadratureSpec {
    /// Evaluates `eval` at the base resolution and at double resolution,
    /// recording the Richardson-style consistency gap.
    pub fn richardson(&self, eval: impl Fn(usize) -> f64) -> QuadResult {
        let coarse = eval(self.base_resolution);
        let fine = eval(self.base_resolution * 2);
        let delta = (fine - coarse).abs();
        QuadResult {
            value: fine,
            refinement_delta: delta,
            within_tolerance: delta <= self.tolerance * (1.0 + fine.abs()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 16);
        assert!((v - 0.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn trapezoid_2d_integrates_a_product() {
        let v = trapezoid_2d(
            Exec::Sequential,
            |x, y| x * y,
            (0.0, 1.0, 64),
            (0.0, 2.0, 64),
        );
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn richardson_reports_consistency() {
        let spec = QuadratureSpec {
            base_resolution: 128,
            tolerance: 1e-8,
        };
        let r = spec.richardson(|n| simpson(|x| (x * 3.1).sin(), 0.0, 1.0, n));
        assert!(r.within_tolerance, "delta = {}", r.refinement_delta);
    }
}
