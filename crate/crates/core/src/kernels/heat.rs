//! Heat kernel on the line, the smooth cutoff split `G = K + R`, and the
//! parabolic rescaling operators.

/// Whole-line heat kernel, zero for `t ≤ 0`.
pub fn g(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (4.0 * std::f64::consts::PI * t).sqrt().recip() * (-x * x / (4.0 * t)).exp()
    }
}

/// ∂ₓG
pub fn g_x(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        -x / (2.0 * t) * g(t, x)
    }
}

/// ∂ₜG (equals ∂ₓₓG)
pub fn g_t(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        g(t, x) * (x * x / (4.0 * t * t) - 0.5 / t)
    }
}

fn f_exp(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        (-1.0 / u).exp()
    }
}

fn f_exp_prime(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        (-1.0 / u).exp() / (u * u)
    }
}

/// Smooth cutoff in `s = x² + |t|`: one on `s ≤ 1/2`, zero on `s ≥ 1`.
pub fn chi(s: f64) -> f64 {
    if s <= 0.5 {
        1.0
    } else if s >= 1.0 {
        0.0
    } else {
        let w = 2.0 * (s - 0.5);
        let a = f_exp(1.0 - w);
        let b = f_exp(w);
        a / (a + b)
    }
}

/// dχ/ds
pub fn chi_prime(s: f64) -> f64 {
    if !(0.5..1.0).contains(&s) {
        0.0
    } else {
        let w = 2.0 * (s - 0.5);
        let a = f_exp(1.0 - w);
        let b = f_exp(w);
        let ap = f_exp_prime(1.0 - w);
        let bp = f_exp_prime(w);
        // d/dw [a/(a+b)] = (-ap(a+b) - a(bp - ap)) / (a+b)²
        2.0 * (-(ap * b) - a * bp) / ((a + b) * (a + b))
    }
}

/// Cutoff kernel `K = G·χ(x²+|t|)`, supported in the parabolic unit ball,
/// equal to `G` on `{x² + t < 1/2, t > 0}`, even in `x`, zero for `t ≤ 0`.
pub fn k(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        let s = x * x + t.abs();
        if s >= 1.0 {
            0.0
        } else {
            g(t, x) * chi(s)
        }
    }
}

/// ∂ₓK
pub fn k_x(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        let s = x * x + t.abs();
        if s >= 1.0 {
            0.0
        } else {
            g_x(t, x) * chi(s) + g(t, x) * chi_prime(s) * 2.0 * x
        }
    }
}

/// ∂ₜK
pub fn k_t(t: f64, x: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        let s = x * x + t.abs();
        if s >= 1.0 {
            0.0
        } else {
            g_t(t, x) * chi(s) + g(t, x) * chi_prime(s)
        }
    }
}

/// Smooth remainder `R = G − K`; vanishes at the origin together with `K`'s
/// singular part and is supported (for bounded times) in `x² + |t| ≥ 1/2`.
pub fn r_smooth(t: f64, x: f64) -> f64 {
    g(t, x) - k(t, x)
}

/// ∂ₓR
pub fn r_smooth_x(t: f64, x: f64) -> f64 {
    g_x(t, x) - k_x(t, x)
}

/// Parabolic scaling `S^m_ε(F)(t,x) = ε^m F(ε²t, εx)`.
pub fn scale_parabolic(m: i32, eps: f64, f: impl Fn(f64, f64) -> f64, t: f64, x: f64) -> f64 {
    eps.powi(m) * f(eps * eps * t, eps * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_exactness_of_g_and_gx() {
        // S¹_ε(G) = G and S²_ε(G_x) = G_x
        let pts = [(0.3, 0.7), (1.2, -0.4), (0.05, 0.0), (2.0, 1.5)];
        for eps in [0.2, 0.05, 0.011] {
            for (t, x) in pts {
                let a = scale_parabolic(1, eps, g, t, x);
                assert!((a - g(t, x)).abs() <= 1e-12 * g(t, x).abs().max(1e-300));
                let b = scale_parabolic(2, eps, g_x, t, x);
                assert!((b - g_x(t, x)).abs() <= 1e-11 * g_x(t, x).abs().max(1e-300));
            }
        }
    }

    #[test]
    fn cutoff_matches_g_near_origin_and_vanishes_outside() {
        assert_eq!(k(0.1, 0.2), g(0.1, 0.2));
        assert_eq!(k(0.3, 1.1), 0.0);
        assert_eq!(k(-0.1, 0.0), 0.0);
        assert_eq!(k(0.2, 0.3), k(0.2, -0.3));
        // remainder is zero at the origin and smooth across the cutoff zone
        assert_eq!(r_smooth(1e-9, 0.0), 0.0);
        let s = 0.75f64;
        assert!(chi(s) > 0.0 && chi(s) < 1.0);
    }

    #[test]
    fn chi_prime_is_a_derivative() {
        for s in [0.55, 0.66, 0.8, 0.93] {
            let h = 1e-6;
            let num = (chi(s + h) - chi(s - h)) / (2.0 * h);
            assert!((num - chi_prime(s)).abs() < 1e-6, "s = {s}");
        }
    }

    #[test]
    fn heat_equation_holds() {
        for (t, x) in [(0.2, 0.1), (0.7, -0.9), (1.3, 0.4)] {
            let h = 1e-5;
            let num_t = (g(t + h, x) - g(t - h, x)) / (2.0 * h);
            let num_xx = (g(t, x + h) - 2.0 * g(t, x) + g(t, x - h)) / (h * h);
            assert!((num_t - num_xx).abs() < 1e-4);
            assert!((g_t(t, x) - num_t).abs() < 1e-5);
        }
    }
}
