//! Subforest enumeration, contraction and the forest coproduct.
//!
//! A subforest of a decorated tree is the subgraph spanned by an arbitrary
//! edge subset; connected components are the forest's trees, so no isolated
//! vertices can occur. The coproduct sums over subforests, splitting node
//! decorations binomially and pushing extra decorations onto the boundary
//! edges; left factors acquiring a component of positive homogeneity are
//! dropped (the quotient by the positive-homogeneity ideal).

use crate::algebra::kappa::KappaValue;
use crate::algebra::multi_index::MultiIndex;
use crate::algebra::scalar::{binomial, factorial, Rational, Scalar};
use crate::algebra::tree::{DecoratedTree, EdgeLabel, Forest, ScalingAssignment, TreeEdge};
use crate::algebra::FormalSum;
use num::One;

/// Left ⊗ right pair of the coproduct.
pub type TensorTerm = (Forest, DecoratedTree);

/// Element of the quotient tensor space: coproduct output.
pub type TensorSum = FormalSum<TensorTerm>;

/// Arena form of a decorated tree with stable node/edge indices.
#[derive(Debug, Clone)]
pub struct IndexedTree {
    pub node_dec: Vec<MultiIndex>,
    /// edge i: (upper node, lower node, label, decoration); node 0 is the root
    pub edges: Vec<(usize, usize, EdgeLabel, MultiIndex)>,
}

impl IndexedTree {
    pub fn from_tree(tree: &DecoratedTree) -> Self {
        let mut out = IndexedTree {
            node_dec: vec![tree.node_dec()],
            edges: Vec::new(),
        };
        fn walk(out: &mut IndexedTree, node: usize, edges: &[TreeEdge]) {
            for e in edges {
                let child = out.node_dec.len();
                out.node_dec.push(e.child.node_dec());
                out.edges.push((node, child, e.label, e.dec));
                walk(out, child, e.child.children());
            }
        }
        walk(&mut out, 0, tree.children());
        out
    }

    pub fn n_nodes(&self) -> usize {
        self.node_dec.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Rebuilds a canonical tree from an edge subset containing `root`'s
    /// component, with explicit node decorations.
    fn build_component(
        &self,
        root: usize,
        in_subset: &[bool],
        decs: &[MultiIndex],
    ) -> DecoratedTree {
        let children: Vec<TreeEdge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| in_subset[*i] && e.0 == root)
            .map(|(_, e)| TreeEdge {
                label: e.2,
                dec: e.3,
                child: self.build_component(e.1, in_subset, decs),
            })
            .collect();
        DecoratedTree::with_children(decs[root], children)
    }
}

/// A subforest together with its embedding into the host tree.
#[derive(Debug, Clone)]
pub struct SubforestEmbedding {
    /// chosen edge indices, as a mask over the host's edge list
    pub edge_mask: Vec<bool>,
    /// connected components: (root node, node list) pairs
    pub components: Vec<(usize, Vec<usize>)>,
    /// boundary: host edges outside the mask adjacent to a subforest node
    pub boundary: Vec<usize>,
    /// the subforest as an abstract forest (host decorations)
    pub forest: Forest,
}

fn components_of(host: &IndexedTree, mask: &[bool]) -> Vec<(usize, Vec<usize>)> {
    let n = host.n_nodes();
    let mut repr: Vec<Option<usize>> = vec![None; n];
    // nodes touched by the mask, components via repeated sweeps up the tree
    let mut parent_in: Vec<Option<usize>> = vec![None; n];
    for (i, e) in host.edges.iter().enumerate() {
        if mask[i] {
            parent_in[e.1] = Some(e.0);
            repr[e.0] = Some(e.0);
            repr[e.1] = Some(e.1);
        }
    }
    // component root: follow in-mask parents upwards
    let mut comps: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut comp_of: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        if repr[v].is_none() {
            continue;
        }
        let mut r = v;
        while let Some(p) = parent_in[r] {
            r = p;
        }
        let idx = match comps.iter().position(|(root, _)| *root == r) {
            Some(i) => i,
            None => {
                comps.push((r, Vec::new()));
                comps.len() - 1
            }
        };
        comps[idx].1.push(v);
        comp_of[v] = Some(idx);
    }
    comps
}

/// Enumerates all subforests (edge subsets) of a tree, with embeddings.
pub fn subforests(tree: &DecoratedTree) -> Vec<SubforestEmbedding> {
    let host = IndexedTree::from_tree(tree);
    let m = host.n_edges();
    assert!(m < 22, "subforest enumeration limited to small trees");
    let mut out = Vec::with_capacity(1 << m);
    for bits in 0u32..(1u32 << m) {
        let mask: Vec<bool> = (0..m).map(|i| bits >> i & 1 == 1).collect();
        out.push(embedding_for(&host, mask));
    }
    out
}

fn embedding_for(host: &IndexedTree, mask: Vec<bool>) -> SubforestEmbedding {
    let components = components_of(host, &mask);
    let in_nodes: Vec<bool> = {
        let mut v = vec![false; host.n_nodes()];
        for (_, nodes) in &components {
            for n in nodes {
                v[*n] = true;
            }
        }
        v
    };
    let boundary: Vec<usize> = host
        .edges
        .iter()
        .enumerate()
        .filter(|(i, e)| !mask[*i] && (in_nodes[e.0] || in_nodes[e.1]))
        .map(|(i, _)| i)
        .collect();
    let trees = components
        .iter()
        .map(|(root, _)| host.build_component(*root, &mask, &host.node_dec))
        .collect();
    SubforestEmbedding {
        edge_mask: mask,
        components,
        boundary,
        forest: Forest::from_trees(trees),
    }
}

/// Contracts an embedded subforest: each component collapses to one node
/// carrying the sum of its members' decorations.
pub fn contract(tree: &DecoratedTree, emb: &SubforestEmbedding) -> DecoratedTree {
    let host = IndexedTree::from_tree(tree);
    contract_indexed(&host, emb, &host.node_dec, &vec![MultiIndex::ZERO; host.n_edges()])
}

fn contract_indexed(
    host: &IndexedTree,
    emb: &SubforestEmbedding,
    node_decs: &[MultiIndex],
    extra_edge_decs: &[MultiIndex],
) -> DecoratedTree {
    let n = host.n_nodes();
    // class of each node: component index or own singleton
    let mut class: Vec<usize> = (0..n).collect();
    for (ci, (root, nodes)) in emb.components.iter().enumerate() {
        let _ = ci;
        for v in nodes {
            class[*v] = *root;
        }
    }
    let mut class_dec: Vec<MultiIndex> = vec![MultiIndex::ZERO; n];
    for v in 0..n {
        class_dec[class[v]] = class_dec[class[v]] + node_decs[v];
    }
    fn build(
        host: &IndexedTree,
        emb: &SubforestEmbedding,
        class: &[usize],
        class_dec: &[MultiIndex],
        extra: &[MultiIndex],
        c: usize,
    ) -> DecoratedTree {
        let children: Vec<TreeEdge> = host
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| !emb.edge_mask[*i] && class[e.0] == c)
            .map(|(i, e)| TreeEdge {
                label: e.2,
                dec: e.3 + extra[i],
                child: build(host, emb, class, class_dec, extra, class[e.1]),
            })
            .collect();
        DecoratedTree::with_children(class_dec[c], children)
    }
    build(host, emb, &class, &class_dec, extra_edge_decs, class[0])
}

fn hom_leq_zero(h: &KappaValue) -> bool {
    h <= &KappaValue::zero()
}

/// The forest coproduct on a decorated tree.
///
/// Left factors are subforests with binomially split node decorations plus the
/// boundary-edge decorations pushed onto their incident subforest nodes; right
/// factors are the contractions carrying the complementary decorations. Left
/// components of positive homogeneity are identified with zero, which is also
/// what truncates the boundary-decoration sum to a finite one.
pub fn coproduct_minus(tree: &DecoratedTree) -> TensorSum {
    let scaling = ScalingAssignment::standard();
    let host = IndexedTree::from_tree(tree);
    let mut out = TensorSum::zero();

    for emb in subforests(tree) {
        // nodes of the subforest, and which component each belongs to
        let mut comp_of = vec![usize::MAX; host.n_nodes()];
        for (ci, (_, nodes)) in emb.components.iter().enumerate() {
            for v in nodes {
                comp_of[*v] = ci;
            }
        }
        // base homogeneity of each component (undecorated edges only)
        let base_hom: Vec<KappaValue> = emb
            .components
            .iter()
            .map(|(root, _)| {
                host.build_component(*root, &emb.edge_mask, &vec![MultiIndex::ZERO; host.n_nodes()])
                    .homogeneity(&scaling)
            })
            .collect();

        // enumerate node-decoration splits 𝔫_γ ≤ 𝔫 on subforest nodes
        let dec_nodes: Vec<usize> = (0..host.n_nodes())
            .filter(|v| comp_of[*v] != usize::MAX && !host.node_dec[*v].is_zero())
            .collect();
        let mut node_splits: Vec<(Vec<(usize, MultiIndex)>, Rational)> =
            vec![(Vec::new(), Rational::one())];
        for v in &dec_nodes {
            let full = host.node_dec[*v];
            let mut next = Vec::new();
            for (assign, coeff) in &node_splits {
                for part in full.sub_indices() {
                    let c = coeff
                        * binomial(full.k1, part.k1)
                        * binomial(full.k2, part.k2);
                    let mut a = assign.clone();
                    a.push((*v, part));
                    next.push((a, c));
                }
            }
            node_splits = next;
        }

        for (assign, split_coeff) in node_splits {
            // homogeneity of each component including its 𝔫_γ share
            let mut hom: Vec<KappaValue> = base_hom.clone();
            for (v, part) in &assign {
                let c = comp_of[*v];
                hom[c] = &hom[c] + &KappaValue::from_int(part.parabolic_degree() as i64);
            }
            if !hom.iter().all(hom_leq_zero) {
                continue;
            }
            // recursive boundary-edge decoration enumeration
            let mut edge_decs: Vec<MultiIndex> = vec![MultiIndex::ZERO; host.n_edges()];
            enumerate_boundary(
                &host,
                &emb,
                &comp_of,
                &assign,
                &split_coeff,
                &mut hom,
                &mut edge_decs,
                0,
                Rational::one(),
                &mut out,
            );
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_boundary(
    host: &IndexedTree,
    emb: &SubforestEmbedding,
    comp_of: &[usize],
    assign: &[(usize, MultiIndex)],
    split_coeff: &Rational,
    hom: &mut Vec<KappaValue>,
    edge_decs: &mut Vec<MultiIndex>,
    pos: usize,
    fact_coeff: Rational,
    out: &mut TensorSum,
) {
    if pos == emb.boundary.len() {
        emit_term(
            host,
            emb,
            comp_of,
            assign,
            &(split_coeff * &fact_coeff),
            edge_decs,
            out,
        );
        return;
    }
    let edge = emb.boundary[pos];
    let (up, down, _, _) = host.edges[edge];
    let touched: Vec<usize> = [up, down]
        .iter()
        .filter(|v| comp_of[**v] != usize::MAX)
        .map(|v| comp_of[*v])
        .collect();
    // try decorations m in increasing parabolic degree until every touched
    // component would exceed homogeneity zero
    for deg in 0u32..=6 {
        let mut viable = false;
        for k1 in 0..=deg / 2 {
            let k2 = deg - 2 * k1;
            let m = MultiIndex::new(k1, k2);
            let shift = KappaValue::from_int(deg as i64);
            let ok = touched
                .iter()
                .all(|c| hom_leq_zero(&(&hom[*c] + &shift)));
            if !ok {
                continue;
            }
            viable = true;
            for c in &touched {
                hom[*c] = &hom[*c] + &shift;
            }
            edge_decs[edge] = m;
            let f = &fact_coeff / (factorial(m.k1) * factorial(m.k2));
            enumerate_boundary(
                host, emb, comp_of, assign, split_coeff, hom, edge_decs, pos + 1, f, out,
            );
            edge_decs[edge] = MultiIndex::ZERO;
            for c in &touched {
                hom[*c] = &hom[*c] - &shift;
            }
        }
        if !viable && deg > 0 {
            break;
        }
    }
}

fn emit_term(
    host: &IndexedTree,
    emb: &SubforestEmbedding,
    comp_of: &[usize],
    assign: &[(usize, MultiIndex)],
    coeff: &Rational,
    edge_decs: &[MultiIndex],
    out: &mut TensorSum,
) {
    // left decorations: 𝔫_γ + π𝔢_γ on subforest nodes
    let mut left_decs = vec![MultiIndex::ZERO; host.n_nodes()];
    for (v, part) in assign {
        left_decs[*v] = left_decs[*v] + *part;
    }
    for &edge in &emb.boundary {
        let (up, down, _, _) = host.edges[edge];
        for v in [up, down] {
            if comp_of[v] != usize::MAX {
                left_decs[v] = left_decs[v] + edge_decs[edge];
            }
        }
    }
    let left_trees: Vec<DecoratedTree> = emb
        .components
        .iter()
        .map(|(root, _)| host.build_component(*root, &emb.edge_mask, &left_decs))
        .collect();
    let left = Forest::from_trees(left_trees);

    // right decorations: 𝔫 − 𝔫_γ
    let mut right_decs = host.node_dec.clone();
    for (v, part) in assign {
        right_decs[*v] = right_decs[*v] - *part;
    }
    let right = contract_indexed(host, emb, &right_decs, edge_decs);

    out.add_term((left, right), Scalar::from_rational(coeff.clone()));
}
