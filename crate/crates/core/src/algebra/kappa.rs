//! Homogeneity values of the form `a + b·κ` with exact rational `a`, `b`.
//!
//! The regularisation parameter κ is carried symbolically. Comparisons are
//! lexicographic on `(a, b)`, which is the order induced by letting κ tend to
//! zero from above; every "for κ sufficiently small" statement is encoded once
//! through this order. Numeric evaluation at a concrete rational κ is also
//! provided for the checks that genuinely depend on its value.

use super::scalar::{ratio, rational_to_f64, Rational};
use num::Zero;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KappaValue {
    const_part: Rational,
    kappa_coeff: Rational,
}

impl KappaValue {
    pub fn new(const_part: Rational, kappa_coeff: Rational) -> Self {
        KappaValue {
            const_part,
            kappa_coeff,
        }
    }

    /// `a/b + (c/d)·κ` from integer pairs.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        KappaValue::new(ratio(a, b), ratio(c, d))
    }

    pub fn zero() -> Self {
        KappaValue::new(Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        KappaValue::new(ratio(n, 1), Rational::zero())
    }

    /// `n·κ`.
    pub fn kappa(n: i64) -> Self {
        KappaValue::new(Rational::zero(), ratio(n, 1))
    }

    pub fn const_part(&self) -> &Rational {
        &self.const_part
    }

    pub fn kappa_coeff(&self) -> &Rational {
        &self.kappa_coeff
    }

    pub fn is_zero(&self) -> bool {
        self.const_part.is_zero() && self.kappa_coeff.is_zero()
    }

    /// Exact value at a concrete rational κ.
    pub fn eval_at(&self, kappa: &Rational) -> Rational {
        &self.const_part + &self.kappa_coeff * kappa
    }

    pub fn eval_f64(&self, kappa: f64) -> f64 {
        rational_to_f64(&self.const_part) + rational_to_f64(&self.kappa_coeff) * kappa
    }

    pub fn scale(&self, n: i64) -> Self {
        KappaValue::new(&self.const_part * ratio(n, 1), &self.kappa_coeff * ratio(n, 1))
    }
}

impl PartialOrd for KappaValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KappaValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.const_part
            .cmp(&other.const_part)
            .then_with(|| self.kappa_coeff.cmp(&other.kappa_coeff))
    }
}

impl Add for &KappaValue {
    type Output = KappaValue;
    fn add(self, rhs: &KappaValue) -> KappaValue {
        KappaValue::new(
            &self.const_part + &rhs.const_part,
            &self.kappa_coeff + &rhs.kappa_coeff,
        )
    }
}

impl Add for KappaValue {
    type Output = KappaValue;
    fn add(self, rhs: KappaValue) -> KappaValue {
        (&self) + (&rhs)
    }
}

impl Sub for &KappaValue {
    type Output = KappaValue;
    fn sub(self, rhs: &KappaValue) -> KappaValue {
        KappaValue::new(
            &self.const_part - &rhs.const_part,
            &self.kappa_coeff - &rhs.kappa_coeff,
        )
    }
}

impl Sub for KappaValue {
    type Output = KappaValue;
    fn sub(self, rhs: KappaValue) -> KappaValue {
        (&self) - (&rhs)
    }
}

impl Neg for KappaValue {
    type Output = KappaValue;
    fn neg(self) -> KappaValue {
        KappaValue::new(-self.const_part, -self.kappa_coeff)
    }
}

impl Mul<i64> for &KappaValue {
    type Output = KappaValue;
    fn mul(self, rhs: i64) -> KappaValue {
        self.scale(rhs)
    }
}

impl fmt::Display for KappaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num::Signed;
        if self.kappa_coeff.is_zero() {
            return write!(f, "{}", self.const_part);
        }
        if self.const_part.is_zero() {
            return write!(f, "{}k", self.kappa_coeff);
        }
        if self.kappa_coeff.is_negative() {
            write!(f, "{}{}k", self.const_part, self.kappa_coeff)
        } else {
            write!(f, "{}+{}k", self.const_part, self.kappa_coeff)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_encodes_small_kappa() {
        // -3/2 - κ < -3/2 < -3/2 + κ
        let a = KappaValue::from_parts(-3, 2, -1, 1);
        let b = KappaValue::from_parts(-3, 2, 0, 1);
        let c = KappaValue::from_parts(-3, 2, 1, 1);
        assert!(a < b && b < c);
        // const part dominates regardless of κ-coefficients
        let big = KappaValue::from_parts(0, 1, -100, 1);
        assert!(b < big);
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let a = KappaValue::from_parts(-3, 2, -1, 1);
        let s = &a + &a;
        assert_eq!(s, KappaValue::from_parts(-3, 1, -2, 1));
        assert_eq!(-a.clone() + a, KappaValue::zero());
    }

    #[test]
    fn eval_is_exact() {
        let v = KappaValue::from_parts(-1, 1, -2, 1); // -1 - 2κ
        assert_eq!(v.eval_at(&ratio(1, 4)), ratio(-3, 2));
    }
}
