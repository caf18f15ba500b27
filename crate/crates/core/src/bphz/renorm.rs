//! Twisted antipode and the renormalisation map, with memoised caches keyed by
//! canonical tree codes.

use super::character::PairMomentTable;
use super::coproduct::{coproduct_minus, TensorSum};
use super::BphzError;
use crate::algebra::kappa::KappaValue;
use crate::algebra::multi_index::MultiIndex;
use crate::algebra::scalar::{Moment, Scalar};
use crate::algebra::symbol::{SectorAtom, Symbol};
use crate::algebra::tree::{iota, iota_inverse, DecoratedTree, Forest, ScalingAssignment};
use crate::algebra::FormalSum;
use std::collections::HashMap;
use std::sync::RwLock;

/// Shared evaluation engine; all caches are internally synchronised, results
/// are independent of call order.
#[derive(Default)]
pub struct BphzEngine {
    coproducts: RwLock<HashMap<String, TensorSum>>,
    antipodes: RwLock<HashMap<String, FormalSum<Forest>>>,
    characters: RwLock<HashMap<String, Scalar>>,
}

impl BphzEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Memoised forest coproduct.
    pub fn coproduct(&self, tree: &DecoratedTree) -> TensorSum {
        if let Some(hit) = self.coproducts.read().unwrap().get(tree.code()) {
            return hit.clone();
        }
        let value = coproduct_minus(tree);
        self.coproducts
            .write()
            .unwrap()
            .insert(tree.code().to_string(), value.clone());
        value
    }

    /// Twisted antipode on a tree of non-positive homogeneity.
    ///
    /// Satisfies `Â₋τ = −M⋅(Â₋ ⊗ id)(Δ⁻τ − τ⊗𝟏)`; the recursion terminates
    /// because every remaining left factor has strictly fewer edges or a
    /// strictly smaller node decoration.
    pub fn twisted_antipode(
        &self,
        tree: &DecoratedTree,
    ) -> Result<FormalSum<Forest>, BphzError> {
        let scaling = ScalingAssignment::standard();
        if tree.is_single_node() && tree.node_dec().is_zero() {
            // the empty-forest unit
            return Ok(FormalSum::from_basis(Forest::empty()));
        }
        if tree.homogeneity(&scaling) > KappaValue::zero() {
            return Err(BphzError::OutOfScope(format!(
                "twisted antipode called on positive-homogeneity tree {}",
                tree.code()
            )));
        }
        self.antipode_inner(tree)
    }

    fn antipode_inner(&self, tree: &DecoratedTree) -> Result<FormalSum<Forest>, BphzError> {
        if let Some(hit) = self.antipodes.read().unwrap().get(tree.code()) {
            return Ok(hit.clone());
        }
        let mut delta = self.coproduct(tree);
        // remove the group-like boundary term τ ⊗ 𝟏
        let unit = DecoratedTree::node(MultiIndex::ZERO);
        delta.add_term((Forest::single(tree.clone()), unit), -Scalar::one());

        let mut acc: FormalSum<Forest> = FormalSum::zero();
        let own_edges = tree.edge_count();
        let own_dec = tree.total_node_dec().parabolic_degree();
        for ((left, right), coeff) in delta.iter() {
            for t in left.trees() {
                let smaller = t.edge_count() < own_edges
                    || (t.edge_count() == own_edges
                        && t.total_node_dec().parabolic_degree() < own_dec);
                if !smaller {
                    return Err(BphzError::OutOfScope(format!(
                        "antipode recursion did not shrink at {}",
                        t.code()
                    )));
                }
            }
            let left_antipode = self.antipode_forest(left)?;
            let rhs = Forest::single(right.clone());
            for (forest, c) in left_antipode.iter() {
                acc.add_term(forest.product(&rhs), -(c.clone() * coeff.clone()));
            }
        }
        self.antipodes
            .write()
            .unwrap()
            .insert(tree.code().to_string(), acc.clone());
        Ok(acc)
    }

    /// Multiplicative extension of the antipode to forests.
    pub fn antipode_forest(&self, forest: &Forest) -> Result<FormalSum<Forest>, BphzError> {
        let mut acc = FormalSum::from_basis(Forest::empty());
        for t in forest.trees() {
            let a = self.antipode_inner(t)?;
            let mut next = FormalSum::zero();
            for (fa, ca) in acc.iter() {
                for (fb, cb) in a.iter() {
                    next.add_term(fa.product(fb), ca.clone() * cb.clone());
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// The character `h = g ∘ Â₋` on a single tree.
    pub fn h_character(
        &self,
        tree: &DecoratedTree,
        table: &PairMomentTable,
    ) -> Result<Scalar, BphzError> {
        if let Some(hit) = self.characters.read().unwrap().get(tree.code()) {
            return Ok(hit.clone());
        }
        let antipode = self.twisted_antipode(tree)?;
        let mut acc = Scalar::zero();
        for (forest, coeff) in antipode.iter() {
            let g = super::character::wick_character_forest(forest, table)?;
            if !g.is_zero() {
                acc += g * coeff.clone();
            }
        }
        self.characters
            .write()
            .unwrap()
            .insert(tree.code().to_string(), acc.clone());
        Ok(acc)
    }

    /// `h` on a forest: product over components.
    pub fn h_forest(
        &self,
        forest: &Forest,
        table: &PairMomentTable,
    ) -> Result<Scalar, BphzError> {
        let mut acc = Scalar::one();
        for t in forest.trees() {
            let h = self.h_character(t, table)?;
            if h.is_zero() {
                return Ok(Scalar::zero());
            }
            acc = acc * h;
        }
        Ok(acc)
    }

    /// The renormalisation map `(h ⊗ id) Δ⁻` on a symbol of the basis.
    ///
    /// The output is supported on the symbol space; any surviving tree outside
    /// it is reported as an error.
    pub fn renorm_map(
        &self,
        symbol: &Symbol,
        table: &PairMomentTable,
    ) -> Result<FormalSum<Symbol>, BphzError> {
        let tree = iota(symbol)
            .ok_or_else(|| BphzError::OutOfScope("zero symbol".into()))?;
        let delta = self.coproduct(&tree);
        let mut out: FormalSum<Symbol> = FormalSum::zero();
        for ((left, right), coeff) in delta.iter() {
            let h = self.h_forest(left, table)?;
            if h.is_zero() {
                continue;
            }
            let sym = iota_inverse(right)
                .ok_or_else(|| BphzError::LeavesSymbolSpace(right.code().to_string()))?;
            out.add_term(sym, h * coeff.clone());
        }
        Ok(out)
    }

    /// Renormalisation map evaluated numerically at the table's ε.
    pub fn renorm_map_numeric(
        &self,
        symbol: &Symbol,
        table: &PairMomentTable,
    ) -> Result<Vec<(Symbol, f64)>, BphzError> {
        let symbolic = self.renorm_map(symbol, table)?;
        // verify every generator in use has a numeric value before evaluating
        for (_, coeff) in symbolic.iter() {
            for (mono, _) in coeff.terms() {
                for (m, _) in mono.powers() {
                    table.numeric_of(m)?;
                }
            }
        }
        Ok(symbolic
            .iter()
            .map(|(sym, coeff)| {
                (
                    sym.clone(),
                    coeff.eval(&|m: Moment| table.numeric_of(m).unwrap()),
                )
            })
            .collect())
    }
}

/// Closed form of the renormalisation map: subtracts `m·c₁` on the noise
/// sector and `c₂` on the squared-derivative sector, identity elsewhere.
pub fn closed_form_m(symbol: &Symbol, c1: &Scalar, c2: &Scalar) -> FormalSum<Symbol> {
    let mut out = FormalSum::from_basis(symbol.clone());
    let Some(form) = symbol.canonical_form() else {
        return out;
    };
    match form.atom {
        SectorAtom::Xi if form.i_power >= 1 => {
            let lower = Symbol::i_xi()
                .pow(form.i_power - 1)
                .mul(&Symbol::x_pow(form.poly));
            let coeff = -(c1.clone() * Scalar::from_int(form.i_power as i64));
            out.add_term(lower, coeff);
        }
        SectorAtom::I1Sq => {
            let lower = Symbol::i_xi()
                .pow(form.i_power)
                .mul(&Symbol::x_pow(form.poly));
            out.add_term(lower, -c2.clone());
        }
        _ => {}
    }
    out
}

