//! Branching rules: which edge multisets may sit above each label.
//!
//! A rule maps every label to a set of admissible multisets of
//! `(label, multi-index)` pairs. Infinite families (arbitrarily many plain
//! `I`-edges) are stored parametrically: each pattern has a finite fixed part
//! plus a set of elements that may repeat any number of times, so conformity
//! and the subcriticality infimum are decided in closed form.

use super::kappa::KappaValue;
use super::multi_index::MultiIndex;
use super::tree::{DecoratedTree, EdgeLabel, ScalingAssignment};
use std::collections::BTreeMap;
use std::fmt;

pub type EdgeType = (EdgeLabel, MultiIndex);

/// One admissible family of edge multisets: `fixed ∪ (any number of repeats)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulePattern {
    pub fixed: BTreeMap<EdgeType, u32>,
    pub repeatable: Vec<EdgeType>,
}

impl RulePattern {
    pub fn empty() -> Self {
        RulePattern {
            fixed: BTreeMap::new(),
            repeatable: Vec::new(),
        }
    }

    pub fn fixed_of(entries: &[(EdgeType, u32)]) -> Self {
        RulePattern {
            fixed: entries.iter().cloned().collect(),
            repeatable: Vec::new(),
        }
    }

    pub fn with_repeatable(mut self, e: EdgeType) -> Self {
        self.repeatable.push(e);
        self
    }

    /// Does the multiset match `fixed + (multiples of repeatable elements)`?
    pub fn matches(&self, multiset: &BTreeMap<EdgeType, u32>) -> bool {
        for (e, f) in &self.fixed {
            if multiset.get(e).copied().unwrap_or(0) < *f {
                return false;
            }
        }
        multiset.iter().all(|(e, n)| {
            *n <= self.fixed.get(e).copied().unwrap_or(0) || self.repeatable.contains(e)
        })
    }
}

impl fmt::Display for RulePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for ((l, k), n) in &self.fixed {
            for _ in 0..*n {
                if !first {
                    write!(f, ",")?;
                }
                first = false;
                if k.is_zero() {
                    write!(f, "{}", l.name())?;
                } else {
                    write!(f, "{}{k}", l.name())?;
                }
            }
        }
        for (l, k) in &self.repeatable {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if k.is_zero() {
                write!(f, "[{}]*", l.name())?;
            } else {
                write!(f, "[{}{k}]*", l.name())?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone)]
pub struct Rule {
    entries: BTreeMap<EdgeLabel, Vec<RulePattern>>,
}

/// Outcome of [`validate_rule`]; failures carry the offending label/multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub normal: bool,
    pub subcritical: bool,
    pub failures: Vec<String>,
}

impl Rule {
    pub fn new(entries: BTreeMap<EdgeLabel, Vec<RulePattern>>) -> Self {
        for patterns in entries.values() {
            assert!(!patterns.is_empty(), "rule image sets must be non-empty");
        }
        Rule { entries }
    }

    /// The rule used throughout:
    /// `R(Ξ) = {()}`, `R(I) = {(), (Ξ)}`,
    /// `R(J) = {[I]_k, ([I]_k,I₁), ([I]_k,I₁,I₁), ([I]_k,Ξ)}`.
    pub fn paper() -> Self {
        let xi: EdgeType = (EdgeLabel::Xi, MultiIndex::ZERO);
        let i: EdgeType = (EdgeLabel::I, MultiIndex::ZERO);
        let i1: EdgeType = (EdgeLabel::I, MultiIndex::new(0, 1));
        let mut entries = BTreeMap::new();
        entries.insert(EdgeLabel::Xi, vec![RulePattern::empty()]);
        entries.insert(
            EdgeLabel::I,
            vec![RulePattern::empty(), RulePattern::fixed_of(&[(xi, 1)])],
        );
        entries.insert(
            EdgeLabel::J,
            vec![
                RulePattern::empty().with_repeatable(i),
                RulePattern::fixed_of(&[(i1, 1)]).with_repeatable(i),
                RulePattern::fixed_of(&[(i1, 2)]).with_repeatable(i),
                RulePattern::fixed_of(&[(xi, 1)]).with_repeatable(i),
            ],
        );
        Rule::new(entries)
    }

    pub fn patterns(&self, l: EdgeLabel) -> &[RulePattern] {
        self.entries.get(&l).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn labels(&self) -> impl Iterator<Item = EdgeLabel> + '_ {
        self.entries.keys().copied()
    }

    fn multiset_of(tree: &DecoratedTree) -> BTreeMap<EdgeType, u32> {
        let mut m = BTreeMap::new();
        for e in tree.children() {
            *m.entry((e.label, e.dec)).or_insert(0) += 1;
        }
        m
    }

    fn matches_label(&self, l: EdgeLabel, multiset: &BTreeMap<EdgeType, u32>) -> bool {
        self.patterns(l).iter().any(|p| p.matches(multiset))
    }

    fn matches_any(&self, multiset: &BTreeMap<EdgeType, u32>) -> bool {
        self.entries.keys().any(|l| self.matches_label(*l, multiset))
    }
}

/// Strong conformity: the root multiset lies in the image of the rule, and
/// below every edge the child multiset lies in the image of that edge's label.
pub fn conforms_strongly(tree: &DecoratedTree, rule: &Rule) -> bool {
    violation(tree, rule).is_none()
}

/// First violating `(is_root, multiset)` pair, rendered for error reporting.
pub fn violation(tree: &DecoratedTree, rule: &Rule) -> Option<String> {
    let root_ms = Rule::multiset_of(tree);
    if !rule.matches_any(&root_ms) {
        return Some(format!("root multiset {} not in the rule image", render(&root_ms)));
    }
    violation_below(tree, rule)
}

fn violation_below(tree: &DecoratedTree, rule: &Rule) -> Option<String> {
    for e in tree.children() {
        let ms = Rule::multiset_of(&e.child);
        if !rule.matches_label(e.label, &ms) {
            return Some(format!(
                "multiset {} not admissible above label {}",
                render(&ms),
                e.label.name()
            ));
        }
        if let Some(v) = violation_below(&e.child, rule) {
            return Some(v);
        }
    }
    None
}

fn render(ms: &BTreeMap<EdgeType, u32>) -> String {
    let mut parts = Vec::new();
    for ((l, k), n) in ms {
        for _ in 0..*n {
            if k.is_zero() {
                parts.push(l.name().to_string());
            } else {
                parts.push(format!("{}{}", l.name(), k));
            }
        }
    }
    format!("{{{}}}", parts.join(","))
}

/// Checks normality and subcriticality of a rule under a scaling assignment.
///
/// The infimum over an infinite family is computed in closed form: a
/// repeatable element with negative `reg`-contribution makes the infimum
/// unbounded below, otherwise the infimum is attained at zero repeats.
pub fn validate_rule(rule: &Rule, s: &ScalingAssignment) -> RuleReport {
    let mut failures = Vec::new();
    let mut normal = true;
    let mut subcritical = true;

    for l in rule.labels() {
        if s.s_label(l) < KappaValue::zero() {
            let only_empty =
                rule.patterns(l).len() == 1 && rule.patterns(l)[0] == RulePattern::empty();
            if !only_empty {
                normal = false;
                failures.push(format!("label {} has negative scaling but R({}) ≠ {{()}}", l.name(), l.name()));
            }
        }
        // downward closure: every sub-multiset of a fixed part must be matched
        // by some pattern with at least the same repeatable elements
        for p in rule.patterns(l) {
            for sub in fixed_sub_multisets(&p.fixed) {
                let covered = rule.patterns(l).iter().any(|q| {
                    q.matches(&sub) && p.repeatable.iter().all(|e| q.repeatable.contains(e))
                });
                if !covered {
                    normal = false;
                    failures.push(format!(
                        "label {}: sub-multiset {} of pattern {} is not admissible",
                        l.name(),
                        render(&sub),
                        p
                    ));
                }
            }
        }
    }

    let reg_of = |e: &EdgeType| s.reg_label(e.0) - s.s_index(&e.1);
    for l in rule.labels() {
        let mut inf: Option<KappaValue> = None;
        let mut unbounded = false;
        for p in rule.patterns(l) {
            if p.repeatable.iter().any(|e| reg_of(e) < KappaValue::zero()) {
                unbounded = true;
                failures.push(format!(
                    "label {}: repeatable family in {} drives reg to -∞",
                    l.name(),
                    p
                ));
                continue;
            }
            let mut v = KappaValue::zero();
            for (e, n) in &p.fixed {
                v = v + reg_of(e).scale(*n as i64);
            }
            inf = Some(match inf {
                None => v,
                Some(cur) => cur.min(v),
            });
        }
        let bound = s.s_label(l) + inf.unwrap_or_else(KappaValue::zero);
        if unbounded || s.reg_label(l) >= bound {
            subcritical = false;
            if !unbounded {
                failures.push(format!(
                    "label {}: reg = {} is not below {}",
                    l.name(),
                    s.reg_label(l),
                    bound
                ));
            }
        }
    }

    RuleReport {
        normal,
        subcritical,
        failures,
    }
}

fn fixed_sub_multisets(fixed: &BTreeMap<EdgeType, u32>) -> Vec<BTreeMap<EdgeType, u32>> {
    let keys: Vec<_> = fixed.keys().cloned().collect();
    let mut out = vec![BTreeMap::new()];
    for k in keys {
        let max = fixed[&k];
        let mut next = Vec::new();
        for base in &out {
            for n in 0..=max {
                let mut m = base.clone();
                if n > 0 {
                    m.insert(k, n);
                }
                next.push(m);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::symbol::Symbol;
    use crate::algebra::tree::iota;

    fn tree_of(s: &str) -> DecoratedTree {
        iota(&Symbol::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn conformity_examples() {
        let rule = Rule::paper();
        // a tree with a Ξ branch and an I branch conforms
        assert!(conforms_strongly(&tree_of("Xi*I(Xi)"), &rule));
        // a node carrying both an I-edge and a J-edge does not: {I, J} is not
        // in the image of the rule
        let i_branch = tree_of("Xi").graft(EdgeLabel::I, MultiIndex::ZERO);
        let j_branch = tree_of("Xi*I(Xi)").graft(EdgeLabel::J, MultiIndex::ZERO);
        let bad = i_branch.product(&j_branch);
        assert!(!conforms_strongly(&bad, &rule));
        let msg = violation(&bad, &rule).unwrap();
        assert!(msg.contains("{I,J}"), "{msg}");
    }

    #[test]
    fn j_family_is_parametric() {
        let rule = Rule::paper();
        // roots with arbitrarily many I-branches conform (via the J patterns)
        for m in 0..6 {
            let t = tree_of(&format!("I(Xi)^{m}*I1(Xi)^2"));
            assert!(conforms_strongly(&t, &rule), "m={m}");
        }
        // three I₁-branches do not
        let t = tree_of("I1(Xi)^3");
        assert!(!conforms_strongly(&t, &rule));
    }

    #[test]
    fn paper_rule_is_normal_and_subcritical() {
        let report = validate_rule(&Rule::paper(), &ScalingAssignment::standard());
        assert!(report.normal, "{:?}", report.failures);
        assert!(report.subcritical, "{:?}", report.failures);
    }

    #[test]
    fn non_normal_rule_detected() {
        // R(Ξ) = {(Ξ)} with 𝔰(Ξ) < 0 violates normality
        let xi: EdgeType = (EdgeLabel::Xi, MultiIndex::ZERO);
        let mut entries = BTreeMap::new();
        entries.insert(EdgeLabel::Xi, vec![RulePattern::fixed_of(&[(xi, 1)])]);
        entries.insert(EdgeLabel::I, vec![RulePattern::empty()]);
        let rule = Rule::new(entries);
        let report = validate_rule(&rule, &ScalingAssignment::standard());
        assert!(!report.normal);
    }

    #[test]
    fn bad_reg_breaks_subcriticality() {
        let mut s = ScalingAssignment::standard();
        s.reg_i = KappaValue::from_int(3);
        let report = validate_rule(&Rule::paper(), &s);
        assert!(!report.subcritical);
        assert!(report.failures.iter().any(|f| f.contains("label I")));
    }
}
