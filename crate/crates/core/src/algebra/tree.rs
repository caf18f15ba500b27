//! Rooted labelled trees with node and edge decorations.
//!
//! Trees are kept in canonical form: the children of every node are sorted
//! recursively by their serialised codes, so two decorated trees are equal iff
//! they are isomorphic as decorated rooted trees. The code is cached at
//! construction; equality, ordering and hashing all go through it.

use super::kappa::KappaValue;
use super::multi_index::MultiIndex;
use super::symbol::Symbol;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Xi,
    I,
    J,
}

impl EdgeLabel {
    pub fn name(self) -> &'static str {
        match self {
            EdgeLabel::Xi => "Xi",
            EdgeLabel::I => "I",
            EdgeLabel::J => "J",
        }
    }
}

/// Scaling and subcriticality data for labels and multi-indices.
#[derive(Debug, Clone)]
pub struct ScalingAssignment {
    pub s_xi: KappaValue,
    pub s_i: KappaValue,
    pub s_j: KappaValue,
    pub reg_xi: KappaValue,
    pub reg_i: KappaValue,
    pub reg_j: KappaValue,
}

impl ScalingAssignment {
    /// The assignment used throughout: `𝔰(Ξ) = -3/2-κ`, `𝔰(I) = 𝔰(J) = 2`,
    /// `reg(Ξ) = -3/2-2κ`, `reg(I) = reg(J) = 1/2-3κ`.
    pub fn standard() -> Self {
        ScalingAssignment {
            s_xi: KappaValue::from_parts(-3, 2, -1, 1),
            s_i: KappaValue::from_int(2),
            s_j: KappaValue::from_int(2),
            reg_xi: KappaValue::from_parts(-3, 2, -2, 1),
            reg_i: KappaValue::from_parts(1, 2, -3, 1),
            reg_j: KappaValue::from_parts(1, 2, -3, 1),
        }
    }

    pub fn s_label(&self, l: EdgeLabel) -> KappaValue {
        match l {
            EdgeLabel::Xi => self.s_xi.clone(),
            EdgeLabel::I => self.s_i.clone(),
            EdgeLabel::J => self.s_j.clone(),
        }
    }

    pub fn reg_label(&self, l: EdgeLabel) -> KappaValue {
        match l {
            EdgeLabel::Xi => self.reg_xi.clone(),
            EdgeLabel::I => self.reg_i.clone(),
            EdgeLabel::J => self.reg_j.clone(),
        }
    }

    pub fn s_index(&self, k: &MultiIndex) -> KappaValue {
        KappaValue::from_int(k.parabolic_degree() as i64)
    }
}

/// Child edge of a node: label, edge decoration and subtree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeEdge {
    pub label: EdgeLabel,
    pub dec: MultiIndex,
    pub child: DecoratedTree,
}

#[derive(Debug, Clone)]
pub struct DecoratedTree {
    node_dec: MultiIndex,
    children: Vec<TreeEdge>,
    code: String,
}

impl PartialEq for DecoratedTree {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}
impl Eq for DecoratedTree {}
impl PartialOrd for DecoratedTree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for DecoratedTree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code.cmp(&other.code)
    }
}
impl std::hash::Hash for DecoratedTree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

fn edge_code(e: &TreeEdge) -> String {
    format!(
        "({},[{},{}];{{{},{}}}){}",
        e.label.name(),
        e.dec.k1,
        e.dec.k2,
        e.child.node_dec.k1,
        e.child.node_dec.k2,
        e.child
            .children
            .iter()
            .map(edge_code)
            .collect::<Vec<_>>()
            .join("")
    )
}

impl DecoratedTree {
    /// Single node `•_k`.
    pub fn node(dec: MultiIndex) -> Self {
        let mut t = DecoratedTree {
            node_dec: dec,
            children: Vec::new(),
            code: String::new(),
        };
        t.refresh_code();
        t
    }

    pub fn with_children(dec: MultiIndex, mut children: Vec<TreeEdge>) -> Self {
        children.sort_by(|a, b| {
            (a.label, a.dec, edge_code(a)).cmp(&(b.label, b.dec, edge_code(b)))
        });
        let mut t = DecoratedTree {
            node_dec: dec,
            children,
            code: String::new(),
        };
        t.refresh_code();
        t
    }

    fn refresh_code(&mut self) {
        self.code = format!(
            "{{{},{}}}{}",
            self.node_dec.k1,
            self.node_dec.k2,
            self.children
                .iter()
                .map(edge_code)
                .collect::<Vec<_>>()
                .join("")
        );
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn node_dec(&self) -> MultiIndex {
        self.node_dec
    }

    pub fn children(&self) -> &[TreeEdge] {
        &self.children
    }

    /// Returns the same tree with a different root decoration.
    pub fn with_node_dec(&self, dec: MultiIndex) -> Self {
        DecoratedTree::with_children(dec, self.children.clone())
    }

    pub fn is_single_node(&self) -> bool {
        self.children.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.children
            .iter()
            .map(|e| 1 + e.child.edge_count())
            .sum()
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|e| e.child.node_count())
            .sum::<usize>()
    }

    pub fn total_node_dec(&self) -> MultiIndex {
        self.children
            .iter()
            .fold(self.node_dec, |acc, e| acc + e.child.total_node_dec())
    }

    /// Tree product: joins the roots, summing the root decorations.
    pub fn product(&self, other: &DecoratedTree) -> DecoratedTree {
        let mut children = self.children.clone();
        children.extend(other.children.iter().cloned());
        DecoratedTree::with_children(self.node_dec + other.node_dec, children)
    }

    /// Grafting: a fresh zero-decorated root connected to `self` by one
    /// `(label, dec)` edge.
    pub fn graft(&self, label: EdgeLabel, dec: MultiIndex) -> DecoratedTree {
        DecoratedTree::with_children(
            MultiIndex::ZERO,
            vec![TreeEdge {
                label,
                dec,
                child: self.clone(),
            }],
        )
    }

    /// Homogeneity with respect to a scaling assignment.
    pub fn homogeneity(&self, s: &ScalingAssignment) -> KappaValue {
        let mut h = s.s_index(&self.node_dec);
        for e in &self.children {
            h = h + s.s_label(e.label) - s.s_index(&e.dec) + e.child.homogeneity(s);
        }
        h
    }

    /// Same tree with every node decoration set to zero.
    pub fn zero_node_decorations(&self) -> DecoratedTree {
        let children = self
            .children
            .iter()
            .map(|e| TreeEdge {
                label: e.label,
                dec: e.dec,
                child: e.child.zero_node_decorations(),
            })
            .collect();
        DecoratedTree::with_children(MultiIndex::ZERO, children)
    }

    /// Number of noise (`Ξ`-labelled) edges.
    pub fn xi_edge_count(&self) -> usize {
        self.children
            .iter()
            .map(|e| usize::from(e.label == EdgeLabel::Xi) + e.child.xi_edge_count())
            .sum()
    }
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

/// Injection of symbols into decorated trees.
///
/// `Ξ` maps to a single noise edge, `X^m` to the decorated node `•_m`, `I_k`
/// grafts an `I`-edge with decoration `k`, and products join roots. Returns
/// `None` for the zero symbol.
pub fn iota(symbol: &Symbol) -> Option<DecoratedTree> {
    if symbol.is_zero() {
        return None;
    }
    let mut tree = DecoratedTree::node(symbol.poly_part());
    for _ in 0..symbol.xi_power() {
        tree = tree.product(&DecoratedTree::node(MultiIndex::ZERO).graft(EdgeLabel::Xi, MultiIndex::ZERO));
    }
    for (factor, mult) in symbol.integral_factors() {
        let inner = iota(&factor.arg)?;
        let branch = inner.graft(EdgeLabel::I, factor.index);
        for _ in 0..mult {
            tree = tree.product(&branch);
        }
    }
    Some(tree)
}

/// Partial inverse of [`iota`]: succeeds exactly on the image of the symbol
/// set under ι.
pub fn iota_inverse(tree: &DecoratedTree) -> Option<Symbol> {
    let mut sym = Symbol::x_pow(tree.node_dec());
    for e in tree.children() {
        match e.label {
            EdgeLabel::Xi => {
                if !e.dec.is_zero() || !e.child.is_single_node() || !e.child.node_dec().is_zero() {
                    return None;
                }
                sym = sym.mul(&Symbol::xi());
            }
            EdgeLabel::I => {
                let inner = iota_inverse(&e.child)?;
                let factor = Symbol::integral(e.dec, &inner);
                if factor.is_zero() {
                    return None;
                }
                sym = sym.mul(&factor);
            }
            EdgeLabel::J => return None,
        }
    }
    Some(sym)
}

/// Commutative multiset of decorated trees; the unit is the empty forest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Forest {
    trees: Vec<DecoratedTree>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest::default()
    }

    pub fn from_trees(mut trees: Vec<DecoratedTree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn single(tree: DecoratedTree) -> Self {
        Forest { trees: vec![tree] }
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn trees(&self) -> &[DecoratedTree] {
        &self.trees
    }

    pub fn product(&self, other: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        Forest::from_trees(trees)
    }

    pub fn code(&self) -> String {
        if self.trees.is_empty() {
            "{}".to_string()
        } else {
            self.trees
                .iter()
                .map(|t| t.code().to_string())
                .collect::<Vec<_>>()
                .join(" . ")
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}
