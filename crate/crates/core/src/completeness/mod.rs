//! Validity decision by reduction to atomic derivability.
//!
//! The pipeline: close the sequent under generalized subformulae, flatten
//! every member to a labelled atom, build the simulation base whose rules
//! are the flattened deduction rules over the closure, search for an
//! atomic derivation of the flattened sequent, and translate the
//! derivation back into a checkable natural deduction proof.

mod extract;
mod simulate;

pub use extract::{extract_nd_proof, ExtractError};
pub use simulate::{build_simulation_base, SimulationBase};

use std::collections::{BTreeMap, BTreeSet};

use crate::base::derive::{derive_with_status, SearchBudget};
use crate::base::{rel_flat_atom, rel_flat_from, BasicSentence};
use crate::nd::check::check_nd_proof;
use crate::nd::{Graph, NdProof};
use crate::syntax::xi::{generalized_subformulae, XiClosure};
use crate::syntax::{
    fresh_labels, Atom, ContextItem, Formula, FrameSpec, Label, LabelledFormula, RelAssumption,
    Sequent,
};

/// The flattening map: an injection from closure members to labelled
/// atoms, identity on atoms, with reserved names for everything else.
///
/// - a non-atomic formula pattern gets a reserved name (`top`, `bot`, or
///   `f0, f1, ...`), carried at the member's own label;
/// - a relational assumption `x R y` becomes the atom `r_<x>` at `y`.
///
/// Distinct members map to distinct atoms, and unflattening inverts the
/// map exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatMap {
    names: BTreeMap<Formula, Atom>,
    reverse: BTreeMap<Atom, Formula>,
}

/// Builds the flattening map for a closure. Reserved names are chosen
/// deterministically in pattern order, skipping any that already occur as
/// atoms of the closure.
pub fn flatten_map(xi: &XiClosure) -> FlatMap {
    let mut patterns: BTreeSet<Formula> = xi.formula_families().clone();
    patterns.extend(xi.ground().iter().map(|lf| lf.formula.clone()));
    let taken = xi.atoms();

    let mut names = BTreeMap::new();
    let mut reverse = BTreeMap::new();
    let mut next = 0usize;
    for pattern in patterns {
        let name = match &pattern {
            Formula::Atom(_) => continue,
            Formula::Top => Atom::new("top"),
            Formula::Bot => Atom::new("bot"),
            _ => loop {
                let candidate = Atom::new(format!("f{next}"));
                next += 1;
                if !taken.contains(&candidate) {
                    break candidate;
                }
            },
        };
        reverse.insert(name.clone(), pattern.clone());
        names.insert(pattern, name);
    }
    FlatMap { names, reverse }
}

impl FlatMap {
    /// The flat atom name of a formula pattern; identity on atoms.
    pub fn name_of(&self, formula: &Formula) -> Option<Atom> {
        match formula {
            Formula::Atom(a) => Some(a.clone()),
            _ => self.names.get(formula).cloned(),
        }
    }

    /// Flattens a labelled formula of the closure.
    pub fn flatten(&self, lf: &LabelledFormula) -> Option<BasicSentence> {
        Some(BasicSentence::Atom(self.name_of(&lf.formula)?, lf.label.clone()))
    }

    /// Flattens a relational assumption.
    pub fn flatten_rel(&self, rel: &RelAssumption) -> BasicSentence {
        BasicSentence::Atom(rel_flat_atom(&rel.from), rel.to.clone())
    }

    pub fn flatten_item(&self, item: &ContextItem) -> Option<BasicSentence> {
        match item {
            ContextItem::Formula(lf) => self.flatten(lf),
            ContextItem::Rel(r) => Some(self.flatten_rel(r)),
        }
    }

    /// The left inverse: identity on plain atoms and raw relational
    /// assumptions, registry lookup otherwise.
    pub fn unflatten(&self, s: &BasicSentence) -> ContextItem {
        match s {
            BasicSentence::Rel(r) => ContextItem::Rel(r.clone()),
            BasicSentence::Atom(a, l) => {
                if let Some(from) = rel_flat_from(a) {
                    return ContextItem::Rel(RelAssumption { from, to: l.clone() });
                }
                let formula = self
                    .reverse
                    .get(a)
                    .cloned()
                    .unwrap_or_else(|| Formula::Atom(a.clone()));
                ContextItem::Formula(LabelledFormula { formula, label: l.clone() })
            }
        }
    }
}

/// Outcome of the validity decision pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecideOutcome {
    /// The sequent is derivable; the extracted proof has been re-checked
    /// against the original sequent.
    Provable(NdProof),
    /// No derivation found within the budget; not a refutation.
    NotProvedWithinBudget,
}

impl DecideOutcome {
    pub fn proof(&self) -> Option<&NdProof> {
        match self {
            DecideOutcome::Provable(p) => Some(p),
            DecideOutcome::NotProvedWithinBudget => None,
        }
    }
}

/// Decides derivability of `seq` by searching the simulation base and
/// extracting a natural deduction proof from the derivation found.
///
/// The schematic rule families are instantiated over the closure's labels
/// plus `budget.fresh` reserved labels.
pub fn decide_validity(gamma: &FrameSpec, seq: &Sequent, budget: &SearchBudget) -> DecideOutcome {
    let xi = generalized_subformulae(seq);
    let fm = flatten_map(&xi);
    let sim = build_simulation_base(&xi, &fm, gamma);

    let mut pool: BTreeSet<Label> = xi.labels();
    let fresh = fresh_labels(&pool, budget.fresh);
    pool.extend(fresh);
    let budget = budget.clone().with_pool(pool);

    let context: BTreeSet<BasicSentence> = seq
        .context
        .iter()
        .map(|lf| fm.flatten(lf).expect("context formulae are closure members"))
        .collect();
    let goal = fm.flatten(&seq.goal).expect("the goal is a closure member");

    let outcome = derive_with_status(sim.base(), gamma, &context, &goal, &budget);
    match outcome.derivation {
        None => DecideOutcome::NotProvedWithinBudget,
        Some(derivation) => {
            let proof = extract_nd_proof(&derivation, &fm, &sim)
                .expect("derivations over the simulation base translate to proofs");
            let graph = Graph::new(seq.labels(), []).expect("sequents have labels");
            check_nd_proof(gamma, &graph, &proof, seq)
                .expect("extracted proofs pass the checker");
            DecideOutcome::Provable(proof)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi_of(goal: LabelledFormula) -> XiClosure {
        generalized_subformulae(&Sequent::theorem(goal))
    }

    #[test]
    fn identity_on_atoms() {
        let xi = xi_of(Formula::atom("p").at("x"));
        let fm = flatten_map(&xi);
        assert_eq!(
            fm.flatten(&Formula::atom("p").at("x")),
            Some(BasicSentence::atom("p", "x"))
        );
    }

    #[test]
    fn composite_gets_first_reserved_name() {
        let pattern = Formula::and(Formula::atom("p"), Formula::atom("q"));
        let xi = xi_of(pattern.clone().at("x"));
        let fm = flatten_map(&xi);
        assert_eq!(
            fm.flatten(&pattern.clone().at("x")),
            Some(BasicSentence::atom("f0", "x"))
        );
        assert_eq!(
            fm.unflatten(&BasicSentence::atom("f0", "x")),
            ContextItem::Formula(pattern.at("x"))
        );
    }

    #[test]
    fn unflatten_inverts_flatten() {
        let boxed = Formula::boxed(Formula::atom("p"));
        let xi = xi_of(boxed.clone().at("x"));
        let fm = flatten_map(&xi);
        let flat = fm.flatten(&boxed.clone().at("x")).unwrap();
        assert_eq!(fm.unflatten(&flat), ContextItem::Formula(boxed.at("x")));
        let rel = RelAssumption::new("x", "y");
        assert_eq!(fm.unflatten(&fm.flatten_rel(&rel)), ContextItem::Rel(rel));
    }
}
