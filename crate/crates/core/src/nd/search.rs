//! Bounded proof search for the labelled natural deduction systems.
//!
//! Iterative deepening on rule-application count. At each state the search
//! tries, in order: closing by assumption, introduction by goal shape,
//! elimination chains focused on the context (descending through
//! conjunctions, implications, and boxes, with disjunctions, diamonds, and
//! falsum handled as goal-preserving branch points), and finally the frame
//! rules licensed by the active conditions, capped separately. Eigenlabels
//! are always drawn fresh against every label on the branch, which is
//! strictly stronger than the side conditions require.
//!
//! A missing result means "not found within budget", never "invalid":
//! every returned proof passes the checker.

use std::collections::{BTreeSet, HashMap};

use crate::base::derive::SearchBudget;
use crate::syntax::{
    fresh_label, ContextItem, Formula, FrameCondition, FrameSpec, Label, LabelledFormula,
    RelAssumption, Sequent,
};

use super::{Graph, NdProof, NdRule};

/// Search result plus a flag recording whether any branch of the final
/// deepening pass was cut by a budget.
#[derive(Debug, Clone)]
pub struct ProveOutcome {
    pub proof: Option<NdProof>,
    pub truncated: bool,
}

impl ProveOutcome {
    /// The bounded space was exhausted without a proof.
    pub fn definitively_fails(&self) -> bool {
        self.proof.is_none() && !self.truncated
    }
}

/// Searches for a proof of `goal` over `graph`. The graph's edges are
/// available as relational assumptions.
pub fn prove_nd(
    gamma: &FrameSpec,
    graph: &Graph,
    goal: &Sequent,
    budget: &SearchBudget,
) -> Option<NdProof> {
    prove_with_status(gamma, graph, goal, budget).proof
}

/// As [`prove_nd`], reporting budget truncation.
pub fn prove_with_status(
    gamma: &FrameSpec,
    graph: &Graph,
    goal: &Sequent,
    budget: &SearchBudget,
) -> ProveOutcome {
    let available: BTreeSet<ContextItem> = goal
        .context
        .iter()
        .cloned()
        .map(ContextItem::Formula)
        .chain(graph.edges().iter().cloned().map(ContextItem::Rel))
        .collect();
    let mut last_truncated = false;
    for limit in 0..=budget.depth {
        let mut search = Search {
            gamma,
            memo: HashMap::new(),
            path: Vec::new(),
        };
        match search.prove(&available, &goal.goal, limit, budget.modal_uses, budget.fresh) {
            Ok((proof, _)) => return ProveOutcome { proof: Some(proof), truncated: false },
            Err(fail) => {
                last_truncated = fail.truncated;
                // Nothing was cut: deeper passes explore the same space.
                if !fail.truncated {
                    break;
                }
            }
        }
    }
    ProveOutcome { proof: None, truncated: last_truncated }
}

/// Theoremhood: provability from the empty context over the trivial graph
/// on the formula's label.
pub fn is_theorem(
    gamma: &FrameSpec,
    phi: &LabelledFormula,
    budget: &SearchBudget,
) -> Option<NdProof> {
    let graph = Graph::trivial(phi.label.clone());
    prove_nd(gamma, &graph, &Sequent::theorem(phi.clone()), budget)
}

type State = (BTreeSet<ContextItem>, LabelledFormula);

/// Failure of one search subtree. `guarded` marks failures involving the
/// in-branch repetition guard; those are path-relative and not memoized.
#[derive(Debug, Clone, Copy, Default)]
struct Fail {
    truncated: bool,
    guarded: bool,
}

impl Fail {
    fn absorb(&mut self, other: Fail) {
        self.truncated |= other.truncated;
        self.guarded |= other.guarded;
    }
}

#[derive(Debug, Clone)]
struct FailPoint {
    size: usize,
    frames: usize,
    fresh: usize,
    truncated: bool,
}

#[derive(Debug, Clone)]
enum Memo {
    Found(NdProof, usize),
    Failed(Vec<FailPoint>),
}

struct Search<'a> {
    gamma: &'a FrameSpec,
    memo: HashMap<State, Memo>,
    path: Vec<State>,
}

fn item_of(lf: &LabelledFormula) -> ContextItem {
    ContextItem::Formula(lf.clone())
}

fn rels_in(av: &BTreeSet<ContextItem>) -> Vec<RelAssumption> {
    av.iter().filter_map(|i| i.as_rel().cloned()).collect()
}

fn labels_in_play(av: &BTreeSet<ContextItem>, goal: &LabelledFormula) -> BTreeSet<Label> {
    av.iter()
        .flat_map(|i| i.labels().into_iter().cloned())
        .chain(std::iter::once(goal.label.clone()))
        .collect()
}

impl<'a> Search<'a> {
    /// Proves `goal` from `av` within `size` rule applications; returns the
    /// proof and the unspent size. `Err(truncated)` reports whether some
    /// alternative was cut by a bound.
    fn prove(
        &mut self,
        av: &BTreeSet<ContextItem>,
        goal: &LabelledFormula,
        size: usize,
        frames: usize,
        fresh: usize,
    ) -> Result<(NdProof, usize), Fail> {
        let state: State = (av.clone(), goal.clone());
        match self.memo.get(&state) {
            Some(Memo::Found(proof, cost)) => {
                return if *cost <= size {
                    Ok((proof.clone(), size - cost))
                } else {
                    Err(Fail { truncated: true, guarded: false })
                }
            }
            Some(Memo::Failed(points)) => {
                if let Some(p) = points
                    .iter()
                    .find(|p| p.size >= size && p.frames >= frames && p.fresh >= fresh)
                {
                    return Err(Fail { truncated: p.truncated, guarded: false });
                }
            }
            None => {}
        }
        if self.path.contains(&state) {
            return Err(Fail { truncated: false, guarded: true });
        }
        self.path.push(state.clone());
        let result = self.attempt(av, goal, size, frames, fresh);
        self.path.pop();
        match &result {
            Ok((proof, left)) => {
                self.memo.insert(state, Memo::Found(proof.clone(), size - left));
            }
            Err(fail) if !fail.guarded => {
                let point = FailPoint { size, frames, fresh, truncated: fail.truncated };
                match self.memo.entry(state).or_insert_with(|| Memo::Failed(Vec::new())) {
                    Memo::Failed(points) => {
                        points.retain(|p| {
                            !(point.size >= p.size
                                && point.frames >= p.frames
                                && point.fresh >= p.fresh)
                        });
                        points.push(point);
                    }
                    Memo::Found(..) => {}
                }
            }
            Err(_) => {}
        }
        result
    }

    fn attempt(
        &mut self,
        av: &BTreeSet<ContextItem>,
        goal: &LabelledFormula,
        size: usize,
        frames: usize,
        fresh: usize,
    ) -> Result<(NdProof, usize), Fail> {
        if av.contains(&item_of(goal)) {
            return Ok((NdProof::hyp(goal.clone()), size));
        }
        if size == 0 {
            return Err(Fail { truncated: true, guarded: false });
        }
        let mut fail = Fail::default();
        let mut note = |r: Result<(NdProof, usize), Fail>| -> Option<(NdProof, usize)> {
            match r {
                Ok(found) => Some(found),
                Err(f) => {
                    fail.absorb(f);
                    None
                }
            }
        };

        // Introductions, by goal shape.
        match &goal.formula {
            Formula::Top => {
                return Ok((
                    NdProof::node(NdRule::TopI, goal.clone(), vec![], vec![], None),
                    size - 1,
                ))
            }
            Formula::Imp(l, r) => {
                let assumption = LabelledFormula { formula: (**l).clone(), label: goal.label.clone() };
                let sub = LabelledFormula { formula: (**r).clone(), label: goal.label.clone() };
                let mut av2 = av.clone();
                av2.insert(item_of(&assumption));
                if let Some((p, left)) = note(self.prove(&av2, &sub, size - 1, frames, fresh)) {
                    return Ok((
                        NdProof::node(
                            NdRule::ImpI,
                            goal.clone(),
                            vec![p],
                            vec![[item_of(&assumption)].into()],
                            None,
                        ),
                        left,
                    ));
                }
            }
            Formula::And(l, r) => {
                let lg = LabelledFormula { formula: (**l).clone(), label: goal.label.clone() };
                let rg = LabelledFormula { formula: (**r).clone(), label: goal.label.clone() };
                if let Some((pl, left)) = note(self.prove(av, &lg, size - 1, frames, fresh)) {
                    if let Some((pr, left2)) = note(self.prove(av, &rg, left, frames, fresh)) {
                        return Ok((
                            NdProof::node(
                                NdRule::AndI,
                                goal.clone(),
                                vec![pl, pr],
                                vec![BTreeSet::new(), BTreeSet::new()],
                                None,
                            ),
                            left2,
                        ));
                    }
                }
            }
            Formula::Or(l, r) => {
                for (rule, sub) in [(NdRule::OrI1, l), (NdRule::OrI2, r)] {
                    let g = LabelledFormula { formula: (**sub).clone(), label: goal.label.clone() };
                    if let Some((p, left)) = note(self.prove(av, &g, size - 1, frames, fresh)) {
                        return Ok((
                            NdProof::node(rule, goal.clone(), vec![p], vec![BTreeSet::new()], None),
                            left,
                        ));
                    }
                }
            }
            Formula::Box(body) => {
                if fresh == 0 {
                    fail.truncated = true;
                } else {
                    let avoid = labels_in_play(av, goal);
                    let y = fresh_label(&avoid);
                    let rel = RelAssumption { from: goal.label.clone(), to: y.clone() };
                    let sub = LabelledFormula { formula: (**body).clone(), label: y.clone() };
                    let mut av2 = av.clone();
                    av2.insert(ContextItem::Rel(rel.clone()));
                    if let Some((p, left)) =
                        note(self.prove(&av2, &sub, size - 1, frames, fresh - 1))
                    {
                        return Ok((
                            NdProof::node(
                                NdRule::BoxI,
                                goal.clone(),
                                vec![p],
                                vec![[ContextItem::Rel(rel)].into()],
                                Some(y),
                            ),
                            left,
                        ));
                    }
                }
            }
            Formula::Dia(body) => {
                for rel in rels_in(av) {
                    if rel.from != goal.label {
                        continue;
                    }
                    let sub = LabelledFormula { formula: (**body).clone(), label: rel.to.clone() };
                    if let Some((p, left)) = note(self.prove(av, &sub, size - 1, frames, fresh)) {
                        return Ok((
                            NdProof::node(
                                NdRule::DiaI,
                                goal.clone(),
                                vec![p, NdProof::hyp(rel.clone())],
                                vec![BTreeSet::new(), BTreeSet::new()],
                                None,
                            ),
                            left,
                        ));
                    }
                }
            }
            Formula::Atom(_) | Formula::Bot => {}
        }

        // Elimination chains from each context formula.
        let formulas: Vec<LabelledFormula> =
            av.iter().filter_map(|i| i.as_formula().cloned()).collect();
        for lf in formulas {
            match self.eliminate(av, goal, NdProof::hyp(lf.clone()), &lf, size, frames, fresh) {
                Ok(found) => return Ok(found),
                Err(f) => fail.absorb(f),
            }
        }

        // Frame rules, goal-preserving.
        if !self.gamma.is_empty() {
            if frames == 0 {
                fail.truncated = true;
            } else {
                match self.frame_rules(av, goal, size, frames, fresh) {
                    Ok(found) => return Ok(found),
                    Err(f) => fail.absorb(f),
                }
            }
        }
        Err(fail)
    }

    /// Extends an elimination chain: `proof` proves `lf` from `av`; try to
    /// reach `goal`. `size` is the budget left after accounting for the
    /// chain's next node.
    fn eliminate(
        &mut self,
        av: &BTreeSet<ContextItem>,
        goal: &LabelledFormula,
        proof: NdProof,
        lf: &LabelledFormula,
        size: usize,
        frames: usize,
        fresh: usize,
    ) -> Result<(NdProof, usize), Fail> {
        if lf == goal {
            return Ok((proof, size));
        }
        let mut fail = Fail::default();
        if size == 0 {
            return Err(Fail { truncated: true, guarded: false });
        }
        match &lf.formula {
            Formula::Bot => {
                return Ok((
                    NdProof::node(
                        NdRule::BotE,
                        goal.clone(),
                        vec![proof],
                        vec![BTreeSet::new()],
                        None,
                    ),
                    size - 1,
                ));
            }
            Formula::And(l, r) => {
                for (rule, part) in [(NdRule::AndE1, l), (NdRule::AndE2, r)] {
                    let next = LabelledFormula { formula: (**part).clone(), label: lf.label.clone() };
                    let step = NdProof::node(
                        rule,
                        next.clone(),
                        vec![proof.clone()],
                        vec![BTreeSet::new()],
                        None,
                    );
                    match self.eliminate(av, goal, step, &next, size - 1, frames, fresh) {
                        Ok(found) => return Ok(found),
                        Err(f) => fail.absorb(f),
                    }
                }
            }
            Formula::Imp(l, r) => {
                let side = LabelledFormula { formula: (**l).clone(), label: lf.label.clone() };
                match self.prove(av, &side, size - 1, frames, fresh) {
                    Ok((side_proof, left)) => {
                        let next =
                            LabelledFormula { formula: (**r).clone(), label: lf.label.clone() };
                        let step = NdProof::node(
                            NdRule::ImpE,
                            next.clone(),
                            vec![proof, side_proof],
                            vec![BTreeSet::new(), BTreeSet::new()],
                            None,
                        );
                        match self.eliminate(av, goal, step, &next, left, frames, fresh) {
                            Ok(found) => return Ok(found),
                            Err(f) => fail.absorb(f),
                        }
                    }
                    Err(f) => fail.absorb(f),
                }
            }
            Formula::Box(body) => {
                for rel in rels_in(av) {
                    if rel.from != lf.label {
                        continue;
                    }
                    let next = LabelledFormula { formula: (**body).clone(), label: rel.to.clone() };
                    let step = NdProof::node(
                        NdRule::BoxE,
                        next.clone(),
                        vec![proof.clone(), NdProof::hyp(rel.clone())],
                        vec![BTreeSet::new(), BTreeSet::new()],
                        None,
                    );
                    match self.eliminate(av, goal, step, &next, size - 1, frames, fresh) {
                        Ok(found) => return Ok(found),
                        Err(f) => fail.absorb(f),
                    }
                }
            }
            Formula::Or(l, r) => {
                let left = LabelledFormula { formula: (**l).clone(), label: lf.label.clone() };
                let right = LabelledFormula { formula: (**r).clone(), label: lf.label.clone() };
                let mut av_l = av.clone();
                av_l.insert(item_of(&left));
                let mut av_r = av.clone();
                av_r.insert(item_of(&right));
                let attempt = (|| -> Result<(NdProof, usize), Fail> {
                    let (pl, s1) = self.prove(&av_l, goal, size - 1, frames, fresh)?;
                    let (pr, s2) = self.prove(&av_r, goal, s1, frames, fresh)?;
                    Ok((
                        NdProof::node(
                            NdRule::OrE,
                            goal.clone(),
                            vec![proof, pl, pr],
                            vec![
                                BTreeSet::new(),
                                [item_of(&left)].into(),
                                [item_of(&right)].into(),
                            ],
                            None,
                        ),
                        s2,
                    ))
                })();
                match attempt {
                    Ok(found) => return Ok(found),
                    Err(f) => fail.absorb(f),
                }
            }
            Formula::Dia(body) => {
                if fresh == 0 {
                    fail.truncated = true;
                } else {
                    let mut avoid = labels_in_play(av, goal);
                    avoid.insert(lf.label.clone());
                    let y = fresh_label(&avoid);
                    let body_at = LabelledFormula { formula: (**body).clone(), label: y.clone() };
                    let rel = RelAssumption { from: lf.label.clone(), to: y.clone() };
                    let mut av2 = av.clone();
                    av2.insert(item_of(&body_at));
                    av2.insert(ContextItem::Rel(rel.clone()));
                    match self.prove(&av2, goal, size - 1, frames, fresh - 1) {
                        Ok((inner, left)) => {
                            return Ok((
                                NdProof::node(
                                    NdRule::DiaE,
                                    goal.clone(),
                                    vec![proof, inner],
                                    vec![
                                        BTreeSet::new(),
                                        [item_of(&body_at), ContextItem::Rel(rel)].into(),
                                    ],
                                    Some(y),
                                ),
                                left,
                            ));
                        }
                        Err(f) => fail.absorb(f),
                    }
                }
            }
            Formula::Atom(_) | Formula::Top => {}
        }
        Err(fail)
    }

    fn frame_rules(
        &mut self,
        av: &BTreeSet<ContextItem>,
        goal: &LabelledFormula,
        size: usize,
        frames: usize,
        fresh: usize,
    ) -> Result<(NdProof, usize), Fail> {
        let mut fail = Fail::default();
        let labels = labels_in_play(av, goal);
        let rels = rels_in(av);

        if self.gamma.has(FrameCondition::D) {
            if fresh == 0 {
                fail.truncated = true;
            } else {
                for from in &labels {
                    let y = fresh_label(&labels);
                    let rel = RelAssumption { from: from.clone(), to: y.clone() };
                    let mut av2 = av.clone();
                    av2.insert(ContextItem::Rel(rel.clone()));
                    match self.prove(&av2, goal, size - 1, frames - 1, fresh - 1) {
                        Ok((p, left)) => {
                            return Ok((
                                NdProof::node(
                                    NdRule::RD,
                                    goal.clone(),
                                    vec![p],
                                    vec![[ContextItem::Rel(rel)].into()],
                                    Some(y),
                                ),
                                left,
                            ))
                        }
                        Err(f) => fail.absorb(f),
                    }
                }
            }
        }
        if self.gamma.has(FrameCondition::T) {
            for at in &labels {
                let rel = RelAssumption { from: at.clone(), to: at.clone() };
                let mut av2 = av.clone();
                av2.insert(ContextItem::Rel(rel.clone()));
                match self.prove(&av2, goal, size - 1, frames - 1, fresh) {
                    Ok((p, left)) => {
                        return Ok((
                            NdProof::node(
                                NdRule::RT,
                                goal.clone(),
                                vec![p],
                                vec![[ContextItem::Rel(rel)].into()],
                                None,
                            ),
                            left,
                        ))
                    }
                    Err(f) => fail.absorb(f),
                }
            }
        }
        if self.gamma.has(FrameCondition::B) {
            for rel in &rels {
                let flipped = RelAssumption { from: rel.to.clone(), to: rel.from.clone() };
                let mut av2 = av.clone();
                av2.insert(ContextItem::Rel(flipped.clone()));
                match self.prove(&av2, goal, size - 1, frames - 1, fresh) {
                    Ok((p, left)) => {
                        return Ok((
                            NdProof::node(
                                NdRule::RB,
                                goal.clone(),
                                vec![NdProof::hyp(rel.clone()), p],
                                vec![BTreeSet::new(), [ContextItem::Rel(flipped)].into()],
                                None,
                            ),
                            left,
                        ))
                    }
                    Err(f) => fail.absorb(f),
                }
            }
        }
        if self.gamma.has(FrameCondition::Four) {
            for r1 in &rels {
                for r2 in &rels {
                    if r1.to != r2.from {
                        continue;
                    }
                    let derived = RelAssumption { from: r1.from.clone(), to: r2.to.clone() };
                    if av.contains(&ContextItem::Rel(derived.clone())) {
                        continue;
                    }
                    let mut av2 = av.clone();
                    av2.insert(ContextItem::Rel(derived.clone()));
                    match self.prove(&av2, goal, size - 1, frames - 1, fresh) {
                        Ok((p, left)) => {
                            return Ok((
                                NdProof::node(
                                    NdRule::R4,
                                    goal.clone(),
                                    vec![NdProof::hyp(r1.clone()), NdProof::hyp(r2.clone()), p],
                                    vec![
                                        BTreeSet::new(),
                                        BTreeSet::new(),
                                        [ContextItem::Rel(derived)].into(),
                                    ],
                                    None,
                                ),
                                left,
                            ))
                        }
                        Err(f) => fail.absorb(f),
                    }
                }
            }
        }
        if self.gamma.has(FrameCondition::Five) {
            for r1 in &rels {
                for r2 in &rels {
                    if r1.from != r2.from {
                        continue;
                    }
                    let derived = RelAssumption { from: r1.to.clone(), to: r2.to.clone() };
                    if av.contains(&ContextItem::Rel(derived.clone())) {
                        continue;
                    }
                    let mut av2 = av.clone();
                    av2.insert(ContextItem::Rel(derived.clone()));
                    match self.prove(&av2, goal, size - 1, frames - 1, fresh) {
                        Ok((p, left)) => {
                            return Ok((
                                NdProof::node(
                                    NdRule::R5,
                                    goal.clone(),
                                    vec![NdProof::hyp(r1.clone()), NdProof::hyp(r2.clone()), p],
                                    vec![
                                        BTreeSet::new(),
                                        BTreeSet::new(),
                                        [ContextItem::Rel(derived)].into(),
                                    ],
                                    None,
                                ),
                                left,
                            ))
                        }
                        Err(f) => fail.absorb(f),
                    }
                }
            }
        }
        if self.gamma.has(FrameCondition::Two) {
            for r1 in &rels {
                for r2 in &rels {
                    if r1.from != r2.from {
                        continue;
                    }
                    if fresh == 0 {
                        fail.truncated = true;
                        continue;
                    }
                    let w = fresh_label(&labels);
                    let d1 = RelAssumption { from: r1.to.clone(), to: w.clone() };
                    let d2 = RelAssumption { from: r2.to.clone(), to: w.clone() };
                    let mut av2 = av.clone();
                    av2.insert(ContextItem::Rel(d1.clone()));
                    av2.insert(ContextItem::Rel(d2.clone()));
                    match self.prove(&av2, goal, size - 1, frames - 1, fresh - 1) {
                        Ok((p, left)) => {
                            return Ok((
                                NdProof::node(
                                    NdRule::R2,
                                    goal.clone(),
                                    vec![NdProof::hyp(r1.clone()), NdProof::hyp(r2.clone()), p],
                                    vec![
                                        BTreeSet::new(),
                                        BTreeSet::new(),
                                        [ContextItem::Rel(d1), ContextItem::Rel(d2)].into(),
                                    ],
                                    None,
                                ),
                                left,
                            ))
                        }
                        Err(f) => fail.absorb(f),
                    }
                }
            }
        }
        Err(fail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nd::check::check_nd_proof;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn check_theorem(gamma: &FrameSpec, phi: &LabelledFormula, proof: &NdProof) {
        let graph = Graph::trivial(phi.label.clone());
        check_nd_proof(gamma, &graph, proof, &Sequent::theorem(phi.clone()))
            .expect("searched proof checks");
    }

    #[test]
    fn proves_identity() {
        let phi = Formula::imp(Formula::atom("p"), Formula::atom("p")).at("x");
        let proof = is_theorem(&FrameSpec::empty(), &phi, &budget()).expect("p -> p");
        check_theorem(&FrameSpec::empty(), &phi, &proof);
    }

    #[test]
    fn proves_assumption_sequent() {
        let p = Formula::atom("p").at("x");
        let seq = Sequent::new([p.clone()], p);
        let graph = Graph::trivial(Label::new("x"));
        let proof = prove_nd(&FrameSpec::empty(), &graph, &seq, &budget()).unwrap();
        assert_eq!(proof.rule, NdRule::Hyp);
    }

    #[test]
    fn proves_seriality_axiom_under_d() {
        let phi = Formula::dia(Formula::Top).at("x");
        let gamma: FrameSpec = FrameCondition::D.into();
        let proof = is_theorem(&gamma, &phi, &budget()).expect("<>top under D");
        check_theorem(&gamma, &phi, &proof);
        assert!(is_theorem(&FrameSpec::empty(), &phi, &budget()).is_none());
    }

    #[test]
    fn proves_box_mono() {
        let pq = Formula::and(Formula::atom("p"), Formula::atom("q"));
        let phi = Formula::imp(Formula::boxed(pq), Formula::boxed(Formula::atom("p"))).at("x");
        let proof = is_theorem(&FrameSpec::empty(), &phi, &budget()).expect("[](p&q) -> []p");
        check_theorem(&FrameSpec::empty(), &phi, &proof);
    }

    #[test]
    fn reflexivity_axiom_needs_t() {
        let phi = Formula::imp(Formula::boxed(Formula::atom("p")), Formula::atom("p")).at("x");
        let gamma: FrameSpec = FrameCondition::T.into();
        let proof = is_theorem(&gamma, &phi, &budget()).expect("[]p -> p under T");
        check_theorem(&gamma, &phi, &proof);
        let without = prove_with_status(
            &FrameSpec::empty(),
            &Graph::trivial(Label::new("x")),
            &Sequent::theorem(phi),
            &budget().with_depth(8).with_fresh(2),
        );
        assert!(without.proof.is_none());
    }
}
