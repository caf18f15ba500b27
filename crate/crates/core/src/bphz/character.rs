//! Gaussian characters: expectation of the smooth-model realisation of a tree
//! at the origin, evaluated by Wick pairings of the leaf kernels.
//!
//! In the smooth model every noise edge carries a centred Gaussian leaf
//! factor: the mollifier on a bare noise edge, the mollified kernel (or its
//! space derivative) on an `I`/`I₁` branch. The expectation at the origin is
//! then a sum over perfect matchings of pair moments. Branches with no noise
//! below them evaluate to kernel moments against low-degree polynomials, which
//! vanish by the moment identification built into the symbol space.

use super::BphzError;
use crate::algebra::multi_index::MultiIndex;
use crate::algebra::scalar::{Moment, Scalar};
use crate::algebra::tree::{DecoratedTree, EdgeLabel, Forest};

/// Kernel attached to one Gaussian leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LeafKernel {
    /// mollifier ρ_ε
    Rho,
    /// K∗ρ_ε
    K,
    /// ∂ₓK∗ρ_ε
    Kx,
}

/// One entry of the pair-moment table.
#[derive(Debug, Clone, Copy)]
pub struct MomentEntry {
    /// symbolic generator; `None` when the moment vanishes identically
    pub moment: Option<Moment>,
    /// vanishes because the integrand is odd in the space variable
    pub vanishes_by_oddness: bool,
    /// numeric value at a concrete ε, when available
    pub numeric: Option<f64>,
}

/// Named Gaussian pair moments with parity flags and optional numerics.
#[derive(Debug, Clone)]
pub struct PairMomentTable {
    pub m_kk: MomentEntry,
    pub m_krho: MomentEntry,
    pub m_dd: MomentEntry,
    pub m_kd: MomentEntry,
    pub m_rhorho: MomentEntry,
}

impl PairMomentTable {
    /// Symbolic table: `m_Kρ = C¹`, `m_∂∂ = C²`, `m_KK`, `m_ρρ` kept as
    /// generators; `m_K∂` flagged zero by the x-parity of its integrand.
    pub fn symbolic() -> Self {
        let gen = |m| MomentEntry {
            moment: Some(m),
            vanishes_by_oddness: false,
            numeric: None,
        };
        PairMomentTable {
            m_kk: gen(Moment::Kk),
            m_krho: gen(Moment::C1),
            m_dd: gen(Moment::C2),
            m_kd: MomentEntry {
                moment: None,
                vanishes_by_oddness: true,
                numeric: None,
            },
            m_rhorho: gen(Moment::RhoRho),
        }
    }

    /// Symbolic table with numeric values attached for evaluation at some ε.
    pub fn with_numerics(c1: f64, c2: f64, m_kk: f64, m_rhorho: f64) -> Self {
        let mut t = Self::symbolic();
        t.m_krho.numeric = Some(c1);
        t.m_dd.numeric = Some(c2);
        t.m_kk.numeric = Some(m_kk);
        t.m_rhorho.numeric = Some(m_rhorho);
        t
    }

    pub fn entry(&self, a: LeafKernel, b: LeafKernel) -> Result<&MomentEntry, BphzError> {
        use LeafKernel::*;
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        match (x, y) {
            (K, K) => Ok(&self.m_kk),
            (Rho, K) => Ok(&self.m_krho),
            (Kx, Kx) => Ok(&self.m_dd),
            (K, Kx) => Ok(&self.m_kd),
            (Rho, Rho) => Ok(&self.m_rhorho),
            _ => Err(BphzError::UnknownPair(a, b)),
        }
    }

    /// Numeric lookup for a generator.
    pub fn numeric_of(&self, m: Moment) -> Result<f64, BphzError> {
        let entry = match m {
            Moment::Kk => &self.m_kk,
            Moment::C1 => &self.m_krho,
            Moment::C2 => &self.m_dd,
            Moment::RhoRho => &self.m_rhorho,
        };
        entry.numeric.ok_or(BphzError::MissingNumeric(m.name()))
    }
}

/// Evaluation mode of a character value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterMode {
    Symbolic,
    Numeric,
}

/// A character value: symbolic polynomial in the generators, or a real.
#[derive(Debug, Clone, PartialEq)]
pub enum Character {
    Symbolic(Scalar),
    Numeric(f64),
}

impl Character {
    pub fn scalar(&self) -> Option<&Scalar> {
        match self {
            Character::Symbolic(s) => Some(s),
            Character::Numeric(_) => None,
        }
    }
}

/// Classifies one branch under the root.
enum Branch {
    Gaussian(LeafKernel),
    /// deterministic branch whose value is a kernel moment against a
    /// polynomial of the given parabolic degree
    PolynomialMoment(u32),
}

fn classify_branch(
    label: EdgeLabel,
    dec: &MultiIndex,
    child: &DecoratedTree,
) -> Result<Branch, BphzError> {
    match label {
        EdgeLabel::Xi => {
            if !dec.is_zero() {
                return Err(BphzError::OutOfScope("decorated noise edge".into()));
            }
            if !child.is_single_node() || !child.node_dec().is_zero() {
                return Err(BphzError::OutOfScope("noise edge above a non-leaf".into()));
            }
            Ok(Branch::Gaussian(LeafKernel::Rho))
        }
        EdgeLabel::I | EdgeLabel::J => {
            // deterministic branch: everything below is polynomial-like, so
            // the value only involves kernel moments against polynomials of
            // at most the total decoration degree
            if child.xi_edge_count() == 0 {
                return Ok(Branch::PolynomialMoment(
                    child.total_node_dec().parabolic_degree(),
                ));
            }
            if !child.node_dec().is_zero() {
                return Err(BphzError::OutOfScope(
                    "decorated inner node under a kernel edge".into(),
                ));
            }
            let grandchildren = child.children();
            if grandchildren.len() != 1 {
                return Err(BphzError::OutOfScope(
                    "kernel edge above a compound subtree".into(),
                ));
            }
            let g = &grandchildren[0];
            if g.label != EdgeLabel::Xi || !g.dec.is_zero() || !g.child.is_single_node() {
                return Err(BphzError::OutOfScope(
                    "kernel edge not sitting on a plain noise edge".into(),
                ));
            }
            if !g.child.node_dec().is_zero() {
                return Err(BphzError::OutOfScope("decorated noise leaf".into()));
            }
            match (dec.k1, dec.k2) {
                (0, 0) => Ok(Branch::Gaussian(LeafKernel::K)),
                (0, 1) => Ok(Branch::Gaussian(LeafKernel::Kx)),
                _ => Err(BphzError::OutOfScope(format!(
                    "kernel edge decoration {dec} outside the table"
                ))),
            }
        }
    }
}

/// Character of a single tree: `E[(smooth model)(tree)](0)` as a symbolic
/// scalar. Zero when the root carries a monomial, when the Gaussian leaf count
/// is odd, or when a deterministic branch reduces to a vanishing low-degree
/// kernel moment.
pub fn wick_character(tree: &DecoratedTree, table: &PairMomentTable) -> Result<Scalar, BphzError> {
    // single node: evaluates the monomial at the origin
    if tree.is_single_node() {
        return Ok(if tree.node_dec().is_zero() {
            Scalar::one()
        } else {
            Scalar::zero()
        });
    }
    if !tree.node_dec().is_zero() {
        return Ok(Scalar::zero());
    }
    let mut leaves: Vec<LeafKernel> = Vec::new();
    for e in tree.children() {
        match classify_branch(e.label, &e.dec, &e.child)? {
            Branch::Gaussian(k) => leaves.push(k),
            Branch::PolynomialMoment(deg) => {
                // moments against polynomials of parabolic degree < 2 vanish
                // by the identification of kernel integrals of polynomials
                if deg < 2 {
                    return Ok(Scalar::zero());
                }
                return Err(BphzError::OutOfScope(format!(
                    "deterministic branch of degree {deg}"
                )));
            }
        }
    }
    if leaves.len() % 2 == 1 {
        return Ok(Scalar::zero());
    }
    Ok(matchings_sum(&leaves, table)?)
}

/// Character of a forest: product over components.
pub fn wick_character_forest(
    forest: &Forest,
    table: &PairMomentTable,
) -> Result<Scalar, BphzError> {
    let mut acc = Scalar::one();
    for t in forest.trees() {
        let c = wick_character(t, table)?;
        if c.is_zero() {
            return Ok(Scalar::zero());
        }
        acc = acc * c;
    }
    Ok(acc)
}

fn matchings_sum(leaves: &[LeafKernel], table: &PairMomentTable) -> Result<Scalar, BphzError> {
    if leaves.is_empty() {
        return Ok(Scalar::one());
    }
    let first = leaves[0];
    let mut acc = Scalar::zero();
    for j in 1..leaves.len() {
        let entry = table.entry(first, leaves[j])?;
        if entry.vanishes_by_oddness || entry.moment.is_none() {
            continue;
        }
        let rest: Vec<LeafKernel> = leaves[1..]
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j - 1)
            .map(|(_, k)| *k)
            .collect();
        let sub = matchings_sum(&rest, table)?;
        if !sub.is_zero() {
            acc += Scalar::generator(entry.moment.unwrap()) * sub;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::symbol::Symbol;
    use crate::algebra::tree::iota;

    fn tree(s: &str) -> DecoratedTree {
        iota(&Symbol::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn single_noise_is_centred() {
        let t = PairMomentTable::symbolic();
        assert!(wick_character(&tree("Xi"), &t).unwrap().is_zero());
    }

    #[test]
    fn noise_times_branch_gives_c1() {
        let t = PairMomentTable::symbolic();
        let g = wick_character(&tree("Xi*I(Xi)"), &t).unwrap();
        assert_eq!(g, Scalar::generator(Moment::C1));
    }

    #[test]
    fn four_point_wick() {
        // E[(K-leaf)³ ρ-leaf] = 3 mKK C1
        let t = PairMomentTable::symbolic();
        let g = wick_character(&tree("Xi*I(Xi)^3"), &t).unwrap();
        assert_eq!(
            g,
            Scalar::from_int(3) * Scalar::generator(Moment::Kk) * Scalar::generator(Moment::C1)
        );
    }

    #[test]
    fn derivative_pairings() {
        let t = PairMomentTable::symbolic();
        // two derivative branches pair to C2
        assert_eq!(
            wick_character(&tree("I1(Xi)^2"), &t).unwrap(),
            Scalar::generator(Moment::C2)
        );
        // mixed plain/derivative pairing is odd in x, hence zero
        assert!(wick_character(&tree("I1(Xi)*I(Xi)"), &t).unwrap().is_zero());
    }

    #[test]
    fn root_monomials_kill_the_expectation() {
        let t = PairMomentTable::symbolic();
        let s = Symbol::parse("Xi*I(Xi)*X[0,1]").unwrap();
        assert!(wick_character(&iota(&s).unwrap(), &t).unwrap().is_zero());
    }

    #[test]
    fn deterministic_branch_vanishes_by_moments() {
        let t = PairMomentTable::symbolic();
        // a bare kernel edge to an undecorated leaf: ∫K·1 = 0
        let bare = DecoratedTree::node(MultiIndex::ZERO).graft(EdgeLabel::I, MultiIndex::ZERO);
        assert!(wick_character(&bare, &t).unwrap().is_zero());
        // forest character short-circuits on it as well
        let f = Forest::from_trees(vec![bare, tree("I(Xi)^2")]);
        assert!(wick_character_forest(&f, &t).unwrap().is_zero());
    }
}
