//! Generalized-subformula closure of a sequent.
//!
//! The closure of a modal subformula at a label contributes infinite
//! families: the body at every label, and an edge from the anchor to every
//! label. Families are stored as patterns with one universally quantified
//! label position each, never materialized; membership is decided by
//! pattern matching.

use std::collections::BTreeSet;

use super::{Atom, Formula, Label, LabelledFormula, RelAssumption, Sequent};

/// A label position that is either a concrete label or ranges over the
/// whole label universe.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelPattern {
    Exact(Label),
    Any,
}

impl LabelPattern {
    pub fn matches(&self, label: &Label) -> bool {
        match self {
            LabelPattern::Exact(l) => l == label,
            LabelPattern::Any => true,
        }
    }

    pub fn as_exact(&self) -> Option<&Label> {
        match self {
            LabelPattern::Exact(l) => Some(l),
            LabelPattern::Any => None,
        }
    }
}

/// The set of generalized subformulae of a sequent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiClosure {
    ground: BTreeSet<LabelledFormula>,
    /// Families `{pattern@z : z}` contributed under a modality.
    formula_families: BTreeSet<Formula>,
    /// Families `{from R z : z}`; `from` is the anchor of the modal formula
    /// that contributed the family, itself universal for nested modalities.
    rel_families: BTreeSet<LabelPattern>,
}

/// Computes the generalized subformulae of `seq`.
///
/// Atoms and constants contribute themselves; binary connectives contribute
/// both operands at the same label; a modal formula at `x` contributes its
/// body at every label together with `x R z` for every `z`, and the closure
/// recurses into the contributed families with the label kept universal.
pub fn generalized_subformulae(seq: &Sequent) -> XiClosure {
    let mut xi = XiClosure {
        ground: BTreeSet::new(),
        formula_families: BTreeSet::new(),
        rel_families: BTreeSet::new(),
    };
    for lf in seq.context.iter().chain(std::iter::once(&seq.goal)) {
        visit(&lf.formula, &LabelPattern::Exact(lf.label.clone()), &mut xi);
    }
    xi
}

fn visit(formula: &Formula, at: &LabelPattern, xi: &mut XiClosure) {
    let fresh = match at {
        LabelPattern::Exact(label) => xi
            .ground
            .insert(LabelledFormula { formula: formula.clone(), label: label.clone() }),
        LabelPattern::Any => xi.formula_families.insert(formula.clone()),
    };
    if !fresh {
        return;
    }
    match formula {
        Formula::Atom(_) | Formula::Top | Formula::Bot => {}
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            visit(l, at, xi);
            visit(r, at, xi);
        }
        Formula::Box(body) | Formula::Dia(body) => {
            xi.rel_families.insert(at.clone());
            visit(body, &LabelPattern::Any, xi);
        }
    }
}

impl XiClosure {
    pub fn ground(&self) -> &BTreeSet<LabelledFormula> {
        &self.ground
    }

    pub fn formula_families(&self) -> &BTreeSet<Formula> {
        &self.formula_families
    }

    pub fn rel_families(&self) -> &BTreeSet<LabelPattern> {
        &self.rel_families
    }

    /// Decides membership of a labelled formula.
    pub fn contains_formula(&self, lf: &LabelledFormula) -> bool {
        self.ground.contains(lf) || self.formula_families.contains(&lf.formula)
    }

    /// Decides membership of a relational assumption.
    pub fn contains_rel(&self, rel: &RelAssumption) -> bool {
        self.rel_families.iter().any(|from| from.matches(&rel.from))
    }

    /// The concrete labels of the closure: labels of ground members plus
    /// the concrete anchors of the schematic families.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out: BTreeSet<Label> = self.ground.iter().map(|lf| lf.label.clone()).collect();
        out.extend(self.rel_families.iter().filter_map(|p| p.as_exact().cloned()));
        out
    }

    /// All atom names occurring in members of the closure.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for lf in &self.ground {
            out.extend(lf.formula.atoms());
        }
        for f in &self.formula_families {
            out.extend(f.atoms());
        }
        out
    }

    /// All maximal formula entries paired with their label position, one per
    /// ground member or family. Ground members whose pattern also occurs as
    /// a family are omitted: the family subsumes them.
    pub fn formula_entries(&self) -> Vec<(Formula, LabelPattern)> {
        let mut out = Vec::new();
        for lf in &self.ground {
            if !self.formula_families.contains(&lf.formula) {
                out.push((lf.formula.clone(), LabelPattern::Exact(lf.label.clone())));
            }
        }
        for f in &self.formula_families {
            out.push((f.clone(), LabelPattern::Any));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(goal: LabelledFormula) -> Sequent {
        Sequent::theorem(goal)
    }

    #[test]
    fn atom_closure_is_singleton() {
        let xi = generalized_subformulae(&seq(Formula::atom("p").at("x")));
        assert_eq!(xi.ground().len(), 1);
        assert!(xi.contains_formula(&Formula::atom("p").at("x")));
        assert!(xi.formula_families().is_empty());
        assert!(xi.rel_families().is_empty());
    }

    #[test]
    fn box_contributes_families() {
        let xi = generalized_subformulae(&seq(Formula::boxed(Formula::atom("p")).at("x")));
        assert!(xi.contains_formula(&Formula::boxed(Formula::atom("p")).at("x")));
        // p@z for every z, and x R z for every z.
        assert!(xi.contains_formula(&Formula::atom("p").at("q")));
        assert!(xi.contains_formula(&Formula::atom("p").at("x")));
        assert!(xi.contains_rel(&RelAssumption::new("x", "anything")));
        assert!(!xi.contains_rel(&RelAssumption::new("y", "x")));
        assert_eq!(xi.formula_families().len(), 1);
        assert_eq!(xi.rel_families().len(), 1);
    }

    #[test]
    fn conjunction_stays_at_label() {
        let goal = Formula::and(Formula::atom("p"), Formula::atom("q")).at("x");
        let xi = generalized_subformulae(&seq(goal.clone()));
        assert!(xi.contains_formula(&goal));
        assert!(xi.contains_formula(&Formula::atom("p").at("x")));
        assert!(xi.contains_formula(&Formula::atom("q").at("x")));
        assert!(!xi.contains_formula(&Formula::atom("p").at("y")));
        assert!(xi.rel_families().is_empty());
    }

    #[test]
    fn nested_modalities_make_universal_rel_families() {
        // [][]p at x: the inner box lives at every label, so its edges have
        // a universal source.
        let goal = Formula::boxed(Formula::boxed(Formula::atom("p"))).at("x");
        let xi = generalized_subformulae(&seq(goal));
        assert!(xi.contains_rel(&RelAssumption::new("x", "u")));
        assert!(xi.contains_rel(&RelAssumption::new("u", "v")));
        assert!(xi.rel_families().contains(&LabelPattern::Any));
        assert_eq!(xi.labels(), [Label::new("x")].into_iter().collect());
    }
}
