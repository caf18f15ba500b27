//! Abstract symbols in normal form over the grammar
//! `{1, X^k, Xi, I_k(·), commutative products}`.
//!
//! Normalisation folds all polynomial factors into a single multi-index,
//! treats `1` as the empty product and identifies `I_k(X^m)` with zero. The
//! zero symbol is representable so that these identifications stay total.

use super::kappa::KappaValue;
use super::multi_index::MultiIndex;
use super::scalar::ratio;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// One `I_k(arg)` factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegralFactor {
    pub index: MultiIndex,
    pub arg: Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
struct SymbolData {
    xi_power: u32,
    poly: MultiIndex,
    integrals: BTreeMap<IntegralFactor, u32>,
}

/// A symbol in normal form; `Symbol::zero()` is the identified zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Option<SymbolData>);

/// Atom distinguishing the four sectors of the symbol space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectorAtom {
    /// function-like sector `U`
    One,
    /// sector `V_Ξ`
    Xi,
    /// sector `V_{I₁(Ξ)}`
    I1,
    /// sector `V_{I₁(Ξ)²}`
    I1Sq,
}

impl SectorAtom {
    pub const ALL: [SectorAtom; 4] = [
        SectorAtom::Xi,
        SectorAtom::I1Sq,
        SectorAtom::I1,
        SectorAtom::One,
    ];

    pub fn symbol(self) -> Symbol {
        match self {
            SectorAtom::One => Symbol::one(),
            SectorAtom::Xi => Symbol::xi(),
            SectorAtom::I1 => Symbol::i1_xi(),
            SectorAtom::I1Sq => Symbol::i1_xi().pow(2),
        }
    }

    pub fn homogeneity(self) -> KappaValue {
        self.symbol().homogeneity()
    }
}

/// Canonical decomposition `atom · I(Ξ)^m · X^k` of a symbol lying in `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalForm {
    pub atom: SectorAtom,
    pub i_power: u32,
    pub poly: MultiIndex,
}

impl CanonicalForm {
    pub fn symbol(&self) -> Symbol {
        self.atom
            .symbol()
            .mul(&Symbol::i_xi().pow(self.i_power))
            .mul(&Symbol::x_pow(self.poly))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("the zero symbol has no normal form here")]
    Zero,
}

impl Symbol {
    pub fn zero() -> Self {
        Symbol(None)
    }

    pub fn one() -> Self {
        Symbol(Some(SymbolData::default()))
    }

    pub fn xi() -> Self {
        Symbol(Some(SymbolData {
            xi_power: 1,
            ..Default::default()
        }))
    }

    pub fn x_pow(k: MultiIndex) -> Self {
        Symbol(Some(SymbolData {
            poly: k,
            ..Default::default()
        }))
    }

    /// `I_k(arg)`; collapses to zero when `arg` is zero or purely polynomial.
    pub fn integral(index: MultiIndex, arg: &Symbol) -> Self {
        match &arg.0 {
            None => Symbol::zero(),
            Some(d) if d.xi_power == 0 && d.integrals.is_empty() => Symbol::zero(),
            Some(_) => {
                let mut integrals = BTreeMap::new();
                integrals.insert(
                    IntegralFactor {
                        index,
                        arg: arg.clone(),
                    },
                    1,
                );
                Symbol(Some(SymbolData {
                    xi_power: 0,
                    poly: MultiIndex::ZERO,
                    integrals,
                }))
            }
        }
    }

    /// `I(Ξ)`.
    pub fn i_xi() -> Self {
        Symbol::integral(MultiIndex::ZERO, &Symbol::xi())
    }

    /// `I₁(Ξ)`.
    pub fn i1_xi() -> Self {
        Symbol::integral(MultiIndex::new(0, 1), &Symbol::xi())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Some(d) if d.xi_power == 0 && d.poly.is_zero() && d.integrals.is_empty())
    }

    pub fn mul(&self, other: &Symbol) -> Symbol {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => {
                let mut integrals = a.integrals.clone();
                for (f, m) in &b.integrals {
                    *integrals.entry(f.clone()).or_insert(0) += m;
                }
                Symbol(Some(SymbolData {
                    xi_power: a.xi_power + b.xi_power,
                    poly: a.poly + b.poly,
                    integrals,
                }))
            }
            _ => Symbol::zero(),
        }
    }

    pub fn pow(&self, n: u32) -> Symbol {
        let mut acc = Symbol::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn xi_power(&self) -> u32 {
        self.0.as_ref().map_or(0, |d| d.xi_power)
    }

    pub fn poly_part(&self) -> MultiIndex {
        self.0.as_ref().map_or(MultiIndex::ZERO, |d| d.poly)
    }

    pub fn integral_factors(&self) -> Vec<(IntegralFactor, u32)> {
        self.0
            .as_ref()
            .map(|d| d.integrals.iter().map(|(f, m)| (f.clone(), *m)).collect())
            .unwrap_or_default()
    }

    /// Homogeneity `|·|`; panics on the zero symbol.
    pub fn homogeneity(&self) -> KappaValue {
        let d = self.0.as_ref().expect("homogeneity of the zero symbol");
        let mut h = KappaValue::new(
            ratio(-3 * d.xi_power as i64, 2) + ratio(d.poly.parabolic_degree() as i64, 1),
            ratio(-(d.xi_power as i64), 1),
        );
        for (f, m) in &d.integrals {
            let shift = KappaValue::from_int(2 - f.index.parabolic_degree() as i64);
            let one = (f.arg.homogeneity() + shift).scale(*m as i64);
            h = h + one;
        }
        h
    }

    /// Canonical decomposition when the symbol belongs to `T`.
    pub fn canonical_form(&self) -> Option<CanonicalForm> {
        let d = self.0.as_ref()?;
        let mut i_power = 0u32;
        let mut i1_power = 0u32;
        for (f, m) in &d.integrals {
            if f.arg != Symbol::xi() {
                return None;
            }
            if f.index == MultiIndex::ZERO {
                i_power += m;
            } else if f.index == MultiIndex::new(0, 1) {
                i1_power += m;
            } else {
                return None;
            }
        }
        let atom = match (d.xi_power, i1_power) {
            (0, 0) => SectorAtom::One,
            (1, 0) => SectorAtom::Xi,
            (0, 1) => SectorAtom::I1,
            (0, 2) => SectorAtom::I1Sq,
            _ => return None,
        };
        Some(CanonicalForm {
            atom,
            i_power,
            poly: d.poly,
        })
    }

    pub fn in_t(&self) -> bool {
        self.canonical_form().is_some()
    }

    /// Membership in the function-like set `U` (equal to `V`).
    pub fn in_u(&self) -> bool {
        matches!(self.canonical_form(), Some(c) if c.atom == SectorAtom::One)
    }

    /// Membership in `U' = {I₁(Ξ)} ∪ {X^k}`.
    pub fn in_u_prime(&self) -> bool {
        match self.canonical_form() {
            Some(c) if c.i_power == 0 => match c.atom {
                SectorAtom::One => true,
                SectorAtom::I1 => c.poly.is_zero(),
                _ => false,
            },
            _ => false,
        }
    }

    pub fn sector(&self) -> Option<SectorAtom> {
        self.canonical_form().map(|c| c.atom)
    }

    /// Parses the textual grammar: `Xi`, `X[k1,k2]`, `I[k1,k2](...)`, `I(...)`,
    /// `I1(...)`, `1`, products by juxtaposition or `*`, integer powers `^n`.
    pub fn parse(input: &str) -> Result<Symbol, SymbolError> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let sym = p.product()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(SymbolError::Parse {
                pos: p.pos,
                msg: "trailing input".into(),
            });
        }
        Ok(sym)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_whitespace() || self.bytes[self.pos] == b'*')
        {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> SymbolError {
        SymbolError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn product(&mut self) -> Result<Symbol, SymbolError> {
        let mut acc = Symbol::one();
        loop {
            self.skip_ws();
            if self.pos >= self.bytes.len() || self.bytes[self.pos] == b')' {
                return Ok(acc);
            }
            let factor = self.factor()?;
            acc = acc.mul(&factor);
        }
    }

    fn factor(&mut self) -> Result<Symbol, SymbolError> {
        let base = self.atom()?;
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'^' {
            self.pos += 1;
            let n = self.integer()? as u32;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Symbol, SymbolError> {
        let rest = &self.bytes[self.pos..];
        if rest.starts_with(b"Xi") {
            self.pos += 2;
            return Ok(Symbol::xi());
        }
        if rest.starts_with(b"1") && !rest.starts_with(b"1(") {
            self.pos += 1;
            return Ok(Symbol::one());
        }
        if rest.starts_with(b"X[") {
            self.pos += 2;
            let k = self.index_body()?;
            return Ok(Symbol::x_pow(k));
        }
        if rest.starts_with(b"I[") {
            self.pos += 2;
            let k = self.index_body()?;
            let arg = self.paren_arg()?;
            return Ok(Symbol::integral(k, &arg));
        }
        if rest.starts_with(b"I1(") {
            self.pos += 2;
            let arg = self.paren_arg()?;
            return Ok(Symbol::integral(MultiIndex::new(0, 1), &arg));
        }
        if rest.starts_with(b"I(") {
            self.pos += 1;
            let arg = self.paren_arg()?;
            return Ok(Symbol::integral(MultiIndex::ZERO, &arg));
        }
        Err(self.err("expected Xi, 1, X[..], I(..), I1(..) or I[..](..)"))
    }

    fn paren_arg(&mut self) -> Result<Symbol, SymbolError> {
        if self.pos >= self.bytes.len() || self.bytes[self.pos] != b'(' {
            return Err(self.err("expected '('"));
        }
        self.pos += 1;
        let arg = self.product()?;
        if self.pos >= self.bytes.len() || self.bytes[self.pos] != b')' {
            return Err(self.err("expected ')'"));
        }
        self.pos += 1;
        Ok(arg)
    }

    fn index_body(&mut self) -> Result<MultiIndex, SymbolError> {
        let k1 = self.integer()?;
        if self.pos >= self.bytes.len() || self.bytes[self.pos] != b',' {
            return Err(self.err("expected ','"));
        }
        self.pos += 1;
        let k2 = self.integer()?;
        if self.pos >= self.bytes.len() || self.bytes[self.pos] != b']' {
            return Err(self.err("expected ']'"));
        }
        self.pos += 1;
        Ok(MultiIndex::new(k1 as u32, k2 as u32))
    }

    fn integer(&mut self) -> Result<u64, SymbolError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer overflow"))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = &self.0 else {
            return write!(f, "0");
        };
        // sector-first rendering for members of T: atom · I(Ξ)^m · X^k
        if let Some(c) = self.canonical_form() {
            let mut parts: Vec<String> = Vec::new();
            match c.atom {
                SectorAtom::One => {}
                SectorAtom::Xi => parts.push("Xi".into()),
                SectorAtom::I1 => parts.push("I1(Xi)".into()),
                SectorAtom::I1Sq => parts.push("I1(Xi)^2".into()),
            }
            if c.i_power == 1 {
                parts.push("I(Xi)".into());
            } else if c.i_power > 1 {
                parts.push(format!("I(Xi)^{}", c.i_power));
            }
            if !c.poly.is_zero() {
                parts.push(format!("X[{},{}]", c.poly.k1, c.poly.k2));
            }
            return if parts.is_empty() {
                write!(f, "1")
            } else {
                write!(f, "{}", parts.join("*"))
            };
        }
        let mut parts: Vec<String> = Vec::new();
        if d.xi_power == 1 {
            parts.push("Xi".into());
        } else if d.xi_power > 1 {
            parts.push(format!("Xi^{}", d.xi_power));
        }
        for (factor, m) in &d.integrals {
            let head = if factor.index == MultiIndex::ZERO {
                format!("I({})", factor.arg)
            } else if factor.index == MultiIndex::new(0, 1) {
                format!("I1({})", factor.arg)
            } else {
                format!("I[{},{}]({})", factor.index.k1, factor.index.k2, factor.arg)
            };
            if *m == 1 {
                parts.push(head);
            } else {
                parts.push(format!("{head}^{m}"));
            }
        }
        if !d.poly.is_zero() {
            parts.push(format!("X[{},{}]", d.poly.k1, d.poly.k2));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kappa::KappaValue;

    #[test]
    fn normal_form_rules() {
        let x = Symbol::x_pow(MultiIndex::new(1, 0));
        let y = Symbol::x_pow(MultiIndex::new(0, 2));
        assert_eq!(x.mul(&y), Symbol::x_pow(MultiIndex::new(1, 2)));
        assert_eq!(Symbol::one().mul(&x), x);
        assert!(Symbol::integral(MultiIndex::ZERO, &y).is_zero());
        assert!(Symbol::integral(MultiIndex::ZERO, &Symbol::one()).is_zero());
        assert!(!Symbol::i_xi().is_zero());
    }

    #[test]
    fn homogeneity_examples() {
        // |Ξ| = -3/2 - κ
        assert_eq!(Symbol::xi().homogeneity(), KappaValue::from_parts(-3, 2, -1, 1));
        // |1| = 0
        assert_eq!(Symbol::one().homogeneity(), KappaValue::zero());
        // |I₁(Ξ)²| = -1 - 2κ
        assert_eq!(
            Symbol::i1_xi().pow(2).homogeneity(),
            KappaValue::from_parts(-1, 1, -2, 1)
        );
        // additivity over products
        let a = Symbol::xi().mul(&Symbol::i_xi());
        assert_eq!(
            a.homogeneity(),
            Symbol::xi().homogeneity() + Symbol::i_xi().homogeneity()
        );
    }

    #[test]
    fn sector_classification() {
        assert_eq!(Symbol::one().sector(), Some(SectorAtom::One));
        assert_eq!(
            Symbol::xi().mul(&Symbol::i_xi().pow(3)).sector(),
            Some(SectorAtom::Xi)
        );
        assert_eq!(Symbol::i1_xi().pow(2).sector(), Some(SectorAtom::I1Sq));
        assert_eq!(Symbol::i1_xi().sector(), Some(SectorAtom::I1));
        // Ξ² is outside T
        assert_eq!(Symbol::xi().pow(2).sector(), None);
        // nested integrals are outside T
        let nested = Symbol::integral(MultiIndex::ZERO, &Symbol::i_xi());
        assert_eq!(nested.sector(), None);
        assert!(Symbol::i1_xi().in_u_prime());
        assert!(!Symbol::i_xi().in_u_prime());
        assert!(Symbol::x_pow(MultiIndex::new(2, 1)).in_u_prime());
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "Xi",
            "1",
            "Xi*I(Xi)",
            "Xi*I(Xi)^2*X[0,1]",
            "I1(Xi)^2*I(Xi)",
            "I[1,2](Xi*I(Xi))",
        ] {
            let sym = Symbol::parse(s).unwrap();
            let printed = sym.to_string();
            assert_eq!(Symbol::parse(&printed).unwrap(), sym, "{s} vs {printed}");
        }
        assert_eq!(Symbol::parse("Xi I(Xi)").unwrap(), Symbol::parse("Xi*I(Xi)").unwrap());
        assert!(Symbol::parse("Xj").is_err());
    }
}
