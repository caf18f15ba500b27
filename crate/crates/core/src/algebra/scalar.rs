//! Exact scalars: rational numbers, optionally multiplied by monomials in the
//! named Gaussian pair moments.
//!
//! Coefficients of every symbolic expansion live here. Keeping the moment
//! generators symbolic until the very end lets intermediate cancellations
//! (such as the ones between Wick pairings of opposite sign) happen exactly.

use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type Rational = BigRational;

/// Builds a rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Named Gaussian pair moments appearing as symbolic generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Moment {
    /// `∫ ρ_ε (K∗ρ_ε)` — noise/branch pairing.
    C1,
    /// `∫ (∂ₓK∗ρ_ε)²` — derivative-branch pairing.
    C2,
    /// `∫ (K∗ρ_ε)²` — branch/branch pairing.
    Kk,
    /// `∫ ρ_ε²` — noise/noise pairing.
    RhoRho,
}

impl Moment {
    pub fn name(self) -> &'static str {
        match self {
            Moment::C1 => "C1",
            Moment::C2 => "C2",
            Moment::Kk => "mKK",
            Moment::RhoRho => "mRR",
        }
    }
}

/// Multiplicative monomial in the moment generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct MomentMonomial(BTreeMap<Moment, u32>);

impl MomentMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn generator(m: Moment) -> Self {
        let mut map = BTreeMap::new();
        map.insert(m, 1);
        Self(map)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map = self.0.clone();
        for (m, p) in &other.0 {
            *map.entry(*m).or_insert(0) += p;
        }
        Self(map)
    }

    pub fn powers(&self) -> impl Iterator<Item = (Moment, u32)> + '_ {
        self.0.iter().map(|(m, p)| (*m, *p))
    }
}

impl fmt::Display for MomentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (m, p) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *p == 1 {
                write!(f, "{}", m.name())?;
            } else {
                write!(f, "{}^{}", m.name(), p)?;
            }
        }
        Ok(())
    }
}

/// Exact scalar: a rational polynomial in the moment generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    terms: BTreeMap<MomentMonomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(MomentMonomial::unit(), r);
        }
        Scalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(ratio(n, 1))
    }

    pub fn generator(m: Moment) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(MomentMonomial::generator(m), Rational::one());
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The purely rational part, if the scalar has no moment monomials.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(r) = self.terms.get(&MomentMonomial::unit()) {
                return Some(r.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MomentMonomial, &Rational)> {
        self.terms.iter()
    }

    fn insert(&mut self, mono: MomentMonomial, coeff: Rational) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Substitutes numeric values for the generators.
    pub fn eval(&self, table: &dyn Fn(Moment) -> f64) -> f64 {
        let mut acc = 0.0;
        for (mono, coeff) in &self.terms {
            let mut v = rational_to_f64(coeff);
            for (m, p) in mono.powers() {
                v *= table(m).powi(p as i32);
            }
            acc += v;
        }
        acc
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational out of f64 range")
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.insert(m, c);
        }
        out
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        for (m, c) in rhs.terms {
            self.insert(m, c);
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        Scalar { terms }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        (&self) * (&rhs)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_unit() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Exact factorial.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_arithmetic_cancels_exactly() {
        let c1 = Scalar::generator(Moment::C1);
        let kk = Scalar::generator(Moment::Kk);
        let a = (&c1 * &kk) + Scalar::from_int(3) * kk.clone();
        let b = a.clone() - a;
        assert!(b.is_zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), ratio(6, 1));
        assert_eq!(binomial(3, 5), ratio(0, 1));
        assert_eq!(factorial(5), ratio(120, 1));
    }

    #[test]
    fn eval_substitutes() {
        let s = Scalar::generator(Moment::C1) * Scalar::from_int(2) + Scalar::from_int(1);
        let v = s.eval(&|m| if m == Moment::C1 { 0.5 } else { 0.0 });
        assert_eq!(v, 2.0);
    }
}
