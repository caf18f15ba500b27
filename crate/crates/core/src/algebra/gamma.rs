//! Formal linear combinations and the structure group action.

use super::multi_index::MultiIndex;
use super::scalar::{binomial, Rational, Scalar};
use super::symbol::Symbol;
use num::One;
use std::collections::BTreeMap;
use std::fmt;

/// Finite linear combination over an ordered basis with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalSum<B: Ord + Clone> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord + Clone> FormalSum<B> {
    pub fn zero() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_basis(b: B) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, Scalar::one());
        FormalSum { terms }
    }

    pub fn term(b: B, coeff: Scalar) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(b, coeff);
        s
    }

    pub fn add_term(&mut self, b: B, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-Scalar::one()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (B, Scalar)> {
        self.terms.into_iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// Applies `f` basis-element-wise and resums.
    pub fn map_basis<C: Ord + Clone>(&self, f: impl Fn(&B) -> FormalSum<C>) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            for (nb, nc) in f(b).terms {
                out.add_term(nb, &nc * c);
            }
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&B) -> bool) -> Self {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            if keep(b) {
                out.add_term(b.clone(), c.clone());
            }
        }
        out
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "({c})*{b}")?;
        }
        Ok(())
    }
}

/// `Γ_h` applied to one symbol of `T`: the group element indexed by
/// `h = (h₁, h₂, h₃)` shifts `X₁ ↦ X₁ + h₁𝟏`, `X₂ ↦ X₂ + h₂𝟏` and
/// `I(Ξ) ↦ I(Ξ) + h₃𝟏`, leaving the sector atom untouched.
pub fn gamma_symbol(h: &[Rational; 3], symbol: &Symbol) -> FormalSum<Symbol> {
    let form = symbol
        .canonical_form()
        .unwrap_or_else(|| panic!("Γ acts on T only, got {symbol}"));
    let atom = form.atom.symbol();
    let mut out = FormalSum::zero();
    let l1 = form.poly.k1;
    let l2 = form.poly.k2;
    let m = form.i_power;
    let mut h1p: Vec<Rational> = vec![Rational::one()];
    let mut h2p = vec![Rational::one()];
    let mut h3p = vec![Rational::one()];
    for i in 1..=l1 as usize {
        h1p.push(&h1p[i - 1] * &h[0]);
    }
    for i in 1..=l2 as usize {
        h2p.push(&h2p[i - 1] * &h[1]);
    }
    for i in 1..=m as usize {
        h3p.push(&h3p[i - 1] * &h[2]);
    }
    for a in 0..=l1 {
        for b in 0..=l2 {
            for c in 0..=m {
                let coeff = binomial(l1, a)
                    * binomial(l2, b)
                    * binomial(m, c)
                    * &h1p[(l1 - a) as usize]
                    * &h2p[(l2 - b) as usize]
                    * &h3p[(m - c) as usize];
                let sym = atom
                    .mul(&Symbol::i_xi().pow(c))
                    .mul(&Symbol::x_pow(MultiIndex::new(a, b)));
                out.add_term(sym, Scalar::from_rational(coeff));
            }
        }
    }
    out
}

/// `Γ_h` extended linearly to sums supported on `T`.
pub fn gamma_action(h: &[Rational; 3], v: &FormalSum<Symbol>) -> FormalSum<Symbol> {
    v.map_basis(|s| gamma_symbol(h, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::ratio;

    fn h(a: i64, b: i64, c: i64) -> [Rational; 3] {
        [ratio(a, 1), ratio(b, 1), ratio(c, 1)]
    }

    #[test]
    fn gamma_on_i_xi() {
        // Γ_h I(Ξ) = I(Ξ) + h₃·1
        let v = gamma_symbol(&h(5, 7, 3), &Symbol::i_xi());
        assert_eq!(v.coeff(&Symbol::i_xi()), Scalar::one());
        assert_eq!(v.coeff(&Symbol::one()), Scalar::from_int(3));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn gamma_zero_is_identity() {
        let s = Symbol::parse("Xi*I(Xi)^2*X[1,1]").unwrap();
        let v = gamma_symbol(&h(0, 0, 0), &s);
        assert_eq!(v, FormalSum::from_basis(s));
    }

    #[test]
    fn group_law() {
        let s = Symbol::parse("I1(Xi)^2*I(Xi)^2*X[0,2]").unwrap();
        let a = h(1, -2, 3);
        let b = [ratio(1, 2), ratio(2, 3), ratio(-5, 7)];
        let ab = [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]];
        let lhs = gamma_action(&a, &gamma_symbol(&b, &s));
        let rhs = gamma_symbol(&ab, &s);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn triangular_and_sector_stable() {
        let s = Symbol::parse("Xi*I(Xi)^2*X[0,1]").unwrap();
        let hv = h(2, 3, -1);
        let v = gamma_symbol(&hv, &s);
        let top = s.homogeneity();
        for (b, _) in v.iter() {
            assert_eq!(b.sector(), s.sector());
            if b != &s {
                assert!(b.homogeneity() < top, "{b}");
            }
        }
    }
}
