//! Compactly supported symmetric mollifier of unit mass.
//!
//! The profile is a product of standard bump functions in each variable,
//! scaled so the support sits inside the parabolic unit ball:
//! `|t| ≤ 1/4`, `|x| ≤ 1/2`, hence `√|t| + |x| ≤ 1`.

use super::quad::simpson;

pub const T_HALF_WIDTH: f64 = 0.25;
pub const X_HALF_WIDTH: f64 = 0.5;

/// `exp(-1/(1-u²))` on `(-1, 1)`, zero outside.
pub fn bump(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

#[derive(Debug, Clone)]
pub struct Mollifier {
    /// 1-D bump mass `∫ bump`
    bump_mass: f64,
    /// tabulated 1-D self-convolutions of the normalised profiles
    bt2: Table1D,
    bx2: Table1D,
}

#[derive(Debug, Clone)]
struct Table1D {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
}

impl Table1D {
    fn build(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..=n)
            .map(|i| f(lo + (hi - lo) * i as f64 / n as f64))
            .collect();
        Table1D { lo, hi, values }
    }

    fn eval(&self, x: f64) -> f64 {
        if x <= self.lo || x >= self.hi {
            return 0.0;
        }
        let n = self.values.len() - 1;
        let s = (x - self.lo) / (self.hi - self.lo) * n as f64;
        let i = (s.floor() as usize).min(n - 1);
        let w = s - i as f64;
        self.values[i] * (1.0 - w) + self.values[i + 1] * w
    }
}

impl Default for Mollifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Mollifier {
    pub fn new() -> Self {
        let bump_mass = simpson(bump, -1.0, 1.0, 2048);
        // normalised 1-D factors
        let ft = move |s: f64| bump(s / T_HALF_WIDTH) / (T_HALF_WIDTH * bump_mass);
        let fx = move |y: f64| bump(y / X_HALF_WIDTH) / (X_HALF_WIDTH * bump_mass);
        let conv = |f: &(dyn Fn(f64) -> f64 + Sync), w: f64, s: f64| {
            simpson(|u| f(u) * f(s - u), -w, w, 1024)
        };
        let bt2 = Table1D::build(-2.0 * T_HALF_WIDTH, 2.0 * T_HALF_WIDTH, 4096, |s| {
            conv(&ft, T_HALF_WIDTH, s)
        });
        let bx2 = Table1D::build(-2.0 * X_HALF_WIDTH, 2.0 * X_HALF_WIDTH, 4096, |s| {
            conv(&fx, X_HALF_WIDTH, s)
        });
        Mollifier { bump_mass, bt2, bx2 }
    }

    /// ρ(t, x)
    pub fn rho(&self, t: f64, x: f64) -> f64 {
        self.factor_t(t) * self.factor_x(x)
    }

    pub fn factor_t(&self, t: f64) -> f64 {
        bump(t / T_HALF_WIDTH) / (T_HALF_WIDTH * self.bump_mass)
    }

    pub fn factor_x(&self, x: f64) -> f64 {
        bump(x / X_HALF_WIDTH) / (X_HALF_WIDTH * self.bump_mass)
    }

    /// ρ_ε(t, x) = ε⁻³ ρ(t/ε², x/ε)
    pub fn rho_eps(&self, eps: f64, t: f64, x: f64) -> f64 {
        self.rho(t / (eps * eps), x / eps) / (eps * eps * eps)
    }

    /// self-convolution ρ∗ρ (separable, tabulated)
    pub fn rho_conv2(&self, t: f64, x: f64) -> f64 {
        self.bt2.eval(t) * self.bx2.eval(x)
    }

    /// `∫ ρ²` (exact separable quadrature)
    pub fn l2_norm_sq(&self) -> f64 {
        let it = simpson(
            |s| self.factor_t(s) * self.factor_t(s),
            -T_HALF_WIDTH,
            T_HALF_WIDTH,
            1024,
        );
        let ix = simpson(
            |y| self.factor_x(y) * self.factor_x(y),
            -X_HALF_WIDTH,
            X_HALF_WIDTH,
            1024,
        );
        it * ix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::quad::trapezoid_2d;
    use crate::par::Exec;

    #[test]
    fn unit_mass_and_symmetry() {
        let m = Mollifier::new();
        let mass = trapezoid_2d(
            Exec::Sequential,
            |t, x| m.rho(t, x),
            (-T_HALF_WIDTH, T_HALF_WIDTH, 512),
            (-X_HALF_WIDTH, X_HALF_WIDTH, 512),
        );
        assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
        assert_eq!(m.rho(0.1, 0.2), m.rho(-0.1, -0.2));
    }

    #[test]
    fn rescaled_mass_is_preserved() {
        let m = Mollifier::new();
        let eps = 0.2f64;
        let mass = trapezoid_2d(
            Exec::Sequential,
            |t, x| m.rho_eps(eps, t, x),
            (-T_HALF_WIDTH * eps * eps, T_HALF_WIDTH * eps * eps, 512),
            (-X_HALF_WIDTH * eps, X_HALF_WIDTH * eps, 512),
        );
        assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
    }

    #[test]
    fn self_convolution_has_unit_mass() {
        let m = Mollifier::new();
        let mass = trapezoid_2d(
            Exec::Sequential,
            |t, x| m.rho_conv2(t, x),
            (-2.0 * T_HALF_WIDTH, 2.0 * T_HALF_WIDTH, 512),
            (-2.0 * X_HALF_WIDTH, 2.0 * X_HALF_WIDTH, 512),
        );
        assert!((mass - 1.0).abs() < 1e-5, "mass = {mass}");
    }
}
