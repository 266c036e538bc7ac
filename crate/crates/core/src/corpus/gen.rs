//! Seeded random generators for corpus instances. Everything here is
//! deterministic in the seed, so corpus verdicts are reproducible.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::derive::{derives, SearchBudget};
use crate::base::{Base, BasicRule, BasicSentence, BasicSequent};
use crate::syntax::{Formula, FrameCondition, FrameSpec, Label, LabelledFormula, Sequent};

const ATOMS: [&str; 3] = ["p", "q", "s"];
const LABELS: [&str; 3] = ["x", "y", "z"];

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }

    pub fn label(&mut self) -> Label {
        Label::new(*self.pick(&LABELS))
    }

    pub fn formula(&mut self, max_depth: usize) -> Formula {
        if max_depth == 0 || self.rng.gen_range(0..4) == 0 {
            return match self.rng.gen_range(0..8) {
                0 => Formula::Top,
                1 => Formula::Bot,
                _ => Formula::atom(*self.pick(&ATOMS)),
            };
        }
        match self.rng.gen_range(0..5) {
            0 => Formula::and(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            1 => Formula::or(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            2 => Formula::imp(self.formula(max_depth - 1), self.formula(max_depth - 1)),
            3 => Formula::boxed(self.formula(max_depth - 1)),
            _ => Formula::dia(self.formula(max_depth - 1)),
        }
    }

    pub fn labelled(&mut self, max_depth: usize) -> LabelledFormula {
        LabelledFormula { formula: self.formula(max_depth), label: self.label() }
    }

    /// A random sequent with a small context, biased toward provability by
    /// sometimes drawing context items from the goal's subformulae.
    pub fn sequent(&mut self, max_depth: usize) -> Sequent {
        let goal = self.labelled(max_depth);
        let mut context = Vec::new();
        for _ in 0..self.rng.gen_range(0..3) {
            if self.rng.gen_bool(0.6) {
                let subs = subformulae(&goal.formula);
                let formula = self.pick(&subs).clone();
                let label =
                    if self.rng.gen_bool(0.7) { goal.label.clone() } else { self.label() };
                context.push(LabelledFormula { formula, label });
            } else {
                context.push(self.labelled(max_depth.saturating_sub(2)));
            }
        }
        Sequent::new(context, goal)
    }

    pub fn sentence(&mut self) -> BasicSentence {
        if self.rng.gen_bool(0.7) {
            BasicSentence::atom(*self.pick(&ATOMS), *self.pick(&LABELS))
        } else {
            BasicSentence::rel(*self.pick(&LABELS), *self.pick(&LABELS))
        }
    }

    pub fn sentences(&mut self, max: usize) -> BTreeSet<BasicSentence> {
        let n = self.rng.gen_range(0..=max);
        (0..n).map(|_| self.sentence()).collect()
    }

    fn atom_sentence(&mut self) -> BasicSentence {
        BasicSentence::atom(*self.pick(&ATOMS), *self.pick(&LABELS))
    }

    pub fn rule(&mut self) -> BasicRule {
        let n_ants = self.rng.gen_range(0..=2);
        if n_ants == 0 {
            return BasicRule::axiom(self.sentence());
        }
        let antecedents: Vec<BasicSequent> = (0..n_ants)
            .map(|_| {
                let premises = self.sentences(2);
                let head =
                    if premises.is_empty() { self.sentence() } else { self.atom_sentence() };
                BasicSequent::new(premises, head).expect("atom head")
            })
            .collect();
        BasicRule::new(antecedents, self.atom_sentence()).expect("atom conclusion")
    }

    pub fn rules(&mut self, max: usize) -> Vec<BasicRule> {
        let n = self.rng.gen_range(0..=max);
        (0..n).map(|_| self.rule()).collect()
    }

    pub fn base(&mut self, max_rules: usize) -> Base {
        Base::from_rules((0..self.rng.gen_range(0..=max_rules)).map(|_| self.rule()))
    }

    pub fn frame_spec(&mut self) -> FrameSpec {
        FrameCondition::ALL
            .into_iter()
            .filter(|_| self.rng.gen_bool(0.25))
            .collect()
    }

    fn instance_budget(&self) -> SearchBudget {
        SearchBudget::default()
            .with_depth(6)
            .with_modal_uses(2)
            .with_fresh(2)
            .with_pool(LABELS.iter().map(|l| Label::new(*l)).collect())
    }

    /// A random instance for which derivability holds: base, frame
    /// conditions, context, goal, and the budget that found it.
    pub fn derivable_instance(
        &mut self,
    ) -> (Base, FrameSpec, BTreeSet<BasicSentence>, BasicSentence, SearchBudget) {
        let budget = self.instance_budget();
        loop {
            let base = self.base(4);
            let gamma = self.frame_spec();
            let mut context = self.sentences(3);
            let goal = self.atom_sentence();
            // Keep the premise satisfiable often enough to terminate fast.
            if self.rng.gen_bool(0.4) {
                context.insert(goal.clone());
            }
            if derives(&base, &gamma, &context, &goal, &budget).is_some() {
                return (base, gamma, context, goal, budget);
            }
        }
    }

    /// A random instance whose context, turned into axioms, derives the
    /// goal outright: the finite-witness premise of the hypothetical
    /// judgment lemma.
    pub fn axiom_witness_instance(
        &mut self,
    ) -> (Base, FrameSpec, BTreeSet<BasicSentence>, BasicSentence, SearchBudget) {
        let budget = self.instance_budget();
        loop {
            let base = self.base(4);
            let gamma = self.frame_spec();
            let context = self.sentences(3);
            let goal = self.atom_sentence();
            let witness = base.extend(context.iter().cloned().map(BasicRule::axiom));
            if derives(&witness, &gamma, &BTreeSet::new(), &goal, &budget).is_some() {
                return (base, gamma, context, goal, budget);
            }
        }
    }
}

fn subformulae(f: &Formula) -> Vec<Formula> {
    let mut out = vec![f.clone()];
    match f {
        Formula::Atom(_) | Formula::Top | Formula::Bot => {}
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            out.extend(subformulae(l));
            out.extend(subformulae(r));
        }
        Formula::Box(g) | Formula::Dia(g) => out.extend(subformulae(g)),
    }
    out
}
