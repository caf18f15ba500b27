//! Exact term-by-term checks of the coproduct, twisted antipode, character
//! values and renormalisation map on the low-order trees, frozen against the
//! hand-computed expansions.

use she_renorm::algebra::scalar::{Moment, Scalar};
use she_renorm::algebra::symbol::Symbol;
use she_renorm::algebra::tree::{iota, DecoratedTree, EdgeLabel, Forest};
use she_renorm::algebra::FormalSum;
use she_renorm::bphz::{closed_form_m, BphzEngine, PairMomentTable};
use she_renorm::MultiIndex;

fn tree(s: &str) -> DecoratedTree {
    iota(&Symbol::parse(s).unwrap()).unwrap()
}

fn dec01() -> MultiIndex {
    MultiIndex::new(0, 1)
}

/// ι(Ξ) with root decoration (0,1), i.e. the tree of Ξ·X^{(0,1)}.
fn xi01_tree() -> DecoratedTree {
    tree("Xi").with_node_dec(dec01())
}

/// bare kernel edge to an undecorated leaf
fn i_leaf() -> DecoratedTree {
    DecoratedTree::node(MultiIndex::ZERO).graft(EdgeLabel::I, MultiIndex::ZERO)
}

/// bare derivative-kernel edge to an undecorated leaf
fn i1_leaf() -> DecoratedTree {
    DecoratedTree::node(MultiIndex::ZERO).graft(EdgeLabel::I, dec01())
}

fn unit_tree() -> DecoratedTree {
    DecoratedTree::node(MultiIndex::ZERO)
}

fn node01() -> DecoratedTree {
    DecoratedTree::node(dec01())
}

fn forest(trees: &[DecoratedTree]) -> Forest {
    Forest::from_trees(trees.to_vec())
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[test]
fn coproduct_of_noise() {
    let engine = BphzEngine::new();
    let xi = tree("Xi");
    let delta = engine.coproduct(&xi);
    let mut expected = FormalSum::zero();
    expected.add_term((Forest::empty(), xi.clone()), int(1));
    expected.add_term((Forest::single(xi.clone()), unit_tree()), int(1));
    assert_eq!(delta, expected);
}

#[test]
fn coproduct_of_decorated_noise() {
    let engine = BphzEngine::new();
    let t = xi01_tree();
    let delta = engine.coproduct(&t);
    let mut expected = FormalSum::zero();
    expected.add_term((Forest::empty(), t.clone()), int(1));
    expected.add_term((Forest::single(tree("Xi")), node01()), int(1));
    expected.add_term((Forest::single(t.clone()), unit_tree()), int(1));
    assert_eq!(delta, expected);
}

#[test]
fn coproduct_of_noise_times_branch_has_the_eight_terms() {
    let engine = BphzEngine::new();
    let t = tree("Xi*I(Xi)");
    let delta = engine.coproduct(&t);

    let xi = tree("Xi");
    let xi01 = xi01_tree();
    let xi_and_i_leaf = xi.product(&i_leaf());
    let xi_and_i1_leaf = xi.product(&i1_leaf());

    let mut expected = FormalSum::zero();
    expected.add_term((Forest::empty(), t.clone()), int(1));
    expected.add_term((forest(&[xi.clone()]), tree("I(Xi)")), int(1));
    expected.add_term((forest(&[xi01.clone()]), tree("I1(Xi)")), int(1));
    expected.add_term((forest(&[xi.clone()]), xi_and_i_leaf), int(1));
    expected.add_term((forest(&[xi01.clone()]), xi_and_i1_leaf), int(1));
    expected.add_term((forest(&[xi.clone(), xi.clone()]), i_leaf()), int(1));
    expected.add_term((forest(&[xi01.clone(), xi01.clone()]), i1_leaf()), int(1));
    expected.add_term((forest(&[t.clone()]), unit_tree()), int(1));

    assert_eq!(delta.len(), 8);
    assert_eq!(delta, expected);
}

#[test]
fn counit_coefficient_is_one_on_every_basis_tree() {
    use she_renorm::algebra::basis::enumerate_basis;
    use she_renorm::algebra::scalar::ratio;
    use she_renorm::KappaValue;
    let engine = BphzEngine::new();
    let basis = enumerate_basis(&KappaValue::from_parts(3, 2, 2, 1), &ratio(1, 100)).unwrap();
    for symbol in &basis {
        let t = iota(symbol).unwrap();
        let delta = engine.coproduct(&t);
        assert_eq!(
            delta.coeff(&(Forest::empty(), t.clone())),
            int(1),
            "counit coefficient for {symbol}"
        );
    }
}

#[test]
fn antipode_of_noise() {
    let engine = BphzEngine::new();
    let a = engine.twisted_antipode(&tree("Xi")).unwrap();
    let mut expected = FormalSum::zero();
    expected.add_term(Forest::single(tree("Xi")), int(-1));
    assert_eq!(a, expected);
}

#[test]
fn antipode_of_decorated_noise() {
    let engine = BphzEngine::new();
    let a = engine.twisted_antipode(&xi01_tree()).unwrap();
    let mut expected = FormalSum::zero();
    expected.add_term(Forest::single(xi01_tree()), int(-1));
    expected.add_term(forest(&[tree("Xi"), node01()]), int(1));
    assert_eq!(a, expected);
}

#[test]
fn antipode_of_noise_times_branch_expands_to_eleven_forests() {
    let engine = BphzEngine::new();
    let t = tree("Xi*I(Xi)");
    let a = engine.twisted_antipode(&t).unwrap();

    let xi = tree("Xi");
    let xi01 = xi01_tree();
    let xi_and_i_leaf = xi.product(&i_leaf());
    let xi_and_i1_leaf = xi.product(&i1_leaf());

    let mut expected = FormalSum::zero();
    expected.add_term(forest(&[t.clone()]), int(-1));
    expected.add_term(forest(&[xi.clone(), tree("I(Xi)")]), int(1));
    expected.add_term(forest(&[xi01.clone(), tree("I1(Xi)")]), int(1));
    expected.add_term(forest(&[xi.clone(), node01(), tree("I1(Xi)")]), int(-1));
    expected.add_term(forest(&[xi.clone(), xi_and_i_leaf.clone()]), int(1));
    expected.add_term(forest(&[xi01.clone(), xi_and_i1_leaf.clone()]), int(1));
    expected.add_term(forest(&[xi.clone(), node01(), xi_and_i1_leaf]), int(-1));
    expected.add_term(forest(&[xi.clone(), xi.clone(), i_leaf()]), int(-1));
    expected.add_term(forest(&[xi01.clone(), xi01.clone(), i1_leaf()]), int(-1));
    expected.add_term(forest(&[xi01.clone(), xi.clone(), node01(), i1_leaf()]), int(2));
    expected.add_term(
        forest(&[xi.clone(), xi.clone(), node01(), node01(), i1_leaf()]),
        int(-1),
    );

    assert_eq!(a.len(), 11, "{a}");
    assert_eq!(a, expected);
}

#[test]
fn coproduct_of_squared_derivative_contains_the_displayed_terms() {
    let engine = BphzEngine::new();
    let t = tree("I1(Xi)^2");
    let delta = engine.coproduct(&t);
    assert_eq!(delta.coeff(&(Forest::empty(), t.clone())), int(1));
    assert_eq!(
        delta.coeff(&(Forest::single(tree("I1(Xi)")), tree("I1(Xi)"))),
        int(2)
    );
    assert_eq!(delta.coeff(&(Forest::single(t.clone()), unit_tree())), int(1));
}

#[test]
fn antipode_of_squared_derivative_contains_the_displayed_terms() {
    let engine = BphzEngine::new();
    let t = tree("I1(Xi)^2");
    let a = engine.twisted_antipode(&t).unwrap();
    assert_eq!(a.coeff(&Forest::single(t.clone())), int(-1));
    assert_eq!(
        a.coeff(&forest(&[tree("I1(Xi)"), tree("I1(Xi)")])),
        int(2)
    );
}

#[test]
fn character_values_match_the_tables() {
    let engine = BphzEngine::new();
    let table = PairMomentTable::symbolic();
    let c1 = Scalar::generator(Moment::C1);
    let c2 = Scalar::generator(Moment::C2);

    let zero_cases = [
        tree("Xi"),
        xi01_tree(),
        tree("Xi*I(Xi)").with_node_dec(dec01()),
        tree("Xi*I(Xi)^2"),
        tree("Xi*I(Xi)^3"),
        tree("I1(Xi)"),
        tree("I1(Xi)*I(Xi)"),
        tree("I1(Xi)^2").with_node_dec(dec01()),
        tree("I1(Xi)^2*I(Xi)"),
        tree("I1(Xi)^2*I(Xi)^2"),
    ];
    for t in zero_cases {
        let h = engine.h_character(&t, &table).unwrap();
        assert!(h.is_zero(), "h({}) = {h}", t.code());
    }
    assert_eq!(
        engine.h_character(&tree("Xi*I(Xi)"), &table).unwrap(),
        -c1.clone()
    );
    assert_eq!(
        engine.h_character(&tree("I1(Xi)^2"), &table).unwrap(),
        -c2.clone()
    );
}

#[test]
fn renorm_map_matches_the_closed_form_on_key_symbols() {
    let engine = BphzEngine::new();
    let table = PairMomentTable::symbolic();
    let c1 = Scalar::generator(Moment::C1);
    let c2 = Scalar::generator(Moment::C2);

    // noise sector: subtract m·C1 times the lowered symbol
    let s = Symbol::parse("Xi*I(Xi)").unwrap();
    let m = engine.renorm_map(&s, &table).unwrap();
    let mut expected = FormalSum::from_basis(s);
    expected.add_term(Symbol::one(), -c1.clone());
    assert_eq!(m, expected);

    // function sector: identity
    for mpow in 0..4 {
        let s = Symbol::i_xi().pow(mpow);
        assert_eq!(
            engine.renorm_map(&s, &table).unwrap(),
            FormalSum::from_basis(s)
        );
    }

    // squared-derivative sector with polynomial decoration
    let s = Symbol::parse("I1(Xi)^2*I(Xi)*X[0,1]").unwrap();
    let m = engine.renorm_map(&s, &table).unwrap();
    let mut expected = FormalSum::from_basis(s.clone());
    expected.add_term(Symbol::parse("I(Xi)*X[0,1]").unwrap(), -c2.clone());
    assert_eq!(m, expected);
    assert_eq!(m, closed_form_m(&s, &c1, &c2));
}

#[test]
fn closed_form_examples() {
    let c1 = Scalar::generator(Moment::C1);
    let c2 = Scalar::generator(Moment::C2);
    // m = 2 with a polynomial factor
    let s = Symbol::parse("Xi*I(Xi)^2*X[0,1]").unwrap();
    let m = closed_form_m(&s, &c1, &c2);
    let mut expected = FormalSum::from_basis(s);
    expected.add_term(
        Symbol::parse("I(Xi)*X[0,1]").unwrap(),
        -(c1.clone() * Scalar::from_int(2)),
    );
    assert_eq!(m, expected);
    // the unit is fixed
    assert_eq!(
        closed_form_m(&Symbol::one(), &c1, &c2),
        FormalSum::from_basis(Symbol::one())
    );
    // bare squared derivative
    let s = Symbol::parse("I1(Xi)^2").unwrap();
    let m = closed_form_m(&s, &c1, &c2);
    let mut expected = FormalSum::from_basis(s);
    expected.add_term(Symbol::one(), -c2.clone());
    assert_eq!(m, expected);
}

#[test]
fn subforest_examples() {
    use she_renorm::bphz::subforests;
    // a single noise edge has exactly the empty and the full subforest
    let subs = subforests(&tree("Xi"));
    assert_eq!(subs.len(), 2);
    // the three-edge tree: every subforest is an edge subset, none has an
    // isolated vertex, and the kernel branch appears as a component
    let t = tree("Xi*I(Xi)");
    let subs = subforests(&t);
    assert_eq!(subs.len(), 8);
    assert!(subs
        .iter()
        .any(|s| s.forest.trees().len() == 1 && s.forest.trees()[0] == tree("I(Xi)")));
    assert!(subs
        .iter()
        .all(|s| s.forest.trees().iter().all(|c| !c.is_single_node())));
    // exhaustive enumeration oracle for the five-edge tree
    let subs = subforests(&tree("Xi*I(Xi)^2"));
    assert_eq!(subs.len(), 32);
}

#[test]
fn contraction_examples() {
    use she_renorm::bphz::{contract, subforests};
    let t = tree("Xi*I(Xi)");
    let subs = subforests(&t);
    // contracting the empty subforest is the identity
    let empty = subs.iter().find(|s| s.forest.is_empty()).unwrap();
    assert_eq!(contract(&t, empty), t);
    // contracting the whole tree yields a single node carrying Σ𝔫
    let full = subs
        .iter()
        .find(|s| s.edge_mask.iter().all(|b| *b))
        .unwrap();
    assert_eq!(contract(&t, full), unit_tree());
    let t01 = t.with_node_dec(dec01());
    let subs01 = subforests(&t01);
    let full01 = subs01
        .iter()
        .find(|s| s.edge_mask.iter().all(|b| *b))
        .unwrap();
    assert_eq!(contract(&t01, full01), node01());
}
