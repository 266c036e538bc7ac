//! The derivability relation over a base: budgeted, memoized backward
//! search plus an independent derivation checker.
//!
//! A basic sentence is derivable from a context by containment (Ref), by
//! applying a rule of the base whose hypothetical antecedents are each
//! derivable under their extra premises (App), or by one of six modal
//! closure cases gated by the active frame conditions. The inductive
//! definition is not an algorithm; search imposes termination with a depth
//! bound, a cap on modal-case uses, a cap on fresh labels, and an in-branch
//! repetition guard. Failures record whether any branch was cut by a
//! budget, so callers can distinguish exhaustion from refutation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::syntax::{fresh_label, FrameCondition, FrameSpec, Label, RelAssumption};

use super::{effective_labels, Base, BasicRule, BasicSentence};

/// Bounds for derivability and proof search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum search nodes along one branch.
    pub depth: usize,
    /// Maximum modal-case (or frame-rule) applications along one branch.
    pub modal_uses: usize,
    /// Maximum fresh labels introduced along one branch.
    pub fresh: usize,
    /// Labels available for schematic-rule instantiation and modal-case
    /// enumeration, in addition to the labels already in play.
    pub pool: BTreeSet<Label>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { depth: 12, modal_uses: 4, fresh: 3, pool: BTreeSet::new() }
    }
}

impl SearchBudget {
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_modal_uses(mut self, modal_uses: usize) -> Self {
        self.modal_uses = modal_uses;
        self
    }

    pub fn with_fresh(mut self, fresh: usize) -> Self {
        self.fresh = fresh;
        self
    }

    pub fn with_pool(mut self, pool: BTreeSet<Label>) -> Self {
        self.pool = pool;
        self
    }

    /// Componentwise comparison: `self` dominates `other` when every bound
    /// is at least as large and the pool contains `other`'s pool.
    pub fn dominates(&self, other: &SearchBudget) -> bool {
        self.depth >= other.depth
            && self.modal_uses >= other.modal_uses
            && self.fresh >= other.fresh
            && other.pool.is_subset(&self.pool)
    }
}

/// One clause instance in a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivStep {
    /// The conclusion occurs in the context.
    Ref,
    /// Application of a rule instance of the base.
    App(BasicRule),
    /// Seriality: discharge `from R eigen` with `eigen` fresh.
    D { from: Label, eigen: Label },
    /// Reflexivity: discharge `at R at`.
    T { at: Label },
    /// Symmetry: from `x R y` discharge `y R x`.
    B { rel: RelAssumption },
    /// Transitivity: from `x R y` and `y R z` discharge `x R z`.
    Four { first: RelAssumption, second: RelAssumption },
    /// Euclidean: from `x R y` and `x R z` discharge `y R z`.
    Five { first: RelAssumption, second: RelAssumption },
    /// Directedness: from `x R y` and `x R z` discharge `y R eigen` and
    /// `z R eigen` with `eigen` fresh.
    Two { first: RelAssumption, second: RelAssumption, eigen: Label },
}

impl DerivStep {
    pub fn frame_condition(&self) -> Option<FrameCondition> {
        match self {
            DerivStep::Ref | DerivStep::App(_) => None,
            DerivStep::D { .. } => Some(FrameCondition::D),
            DerivStep::T { .. } => Some(FrameCondition::T),
            DerivStep::B { .. } => Some(FrameCondition::B),
            DerivStep::Four { .. } => Some(FrameCondition::Four),
            DerivStep::Five { .. } => Some(FrameCondition::Five),
            DerivStep::Two { .. } => Some(FrameCondition::Two),
        }
    }
}

/// A derivation tree: each node records its step, context, and conclusion,
/// so it can be checked independently of how it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicDerivation {
    pub step: DerivStep,
    pub context: BTreeSet<BasicSentence>,
    pub conclusion: BasicSentence,
    pub children: Vec<AtomicDerivation>,
}

impl AtomicDerivation {
    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(AtomicDerivation::size).sum::<usize>()
    }
}

/// A rejected derivation: the node path from the root and the violated
/// condition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct DerivCheckError {
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for DerivCheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid derivation at node {:?}: {}", self.path, self.reason)
    }
}

fn context_labels(context: &BTreeSet<BasicSentence>) -> BTreeSet<Label> {
    context.iter().flat_map(|s| s.labels().into_iter().cloned()).collect()
}

/// Labels in play at a node, seen through flat relational atom names.
fn avoid_labels(context: &BTreeSet<BasicSentence>, goal: &BasicSentence) -> BTreeSet<Label> {
    context
        .iter()
        .chain(std::iter::once(goal))
        .flat_map(effective_labels)
        .collect()
}

/// Checks a derivation against a base and frame conditions: every node must
/// instantiate exactly one clause, rule applications must cite members of
/// the base, modal cases must be gated by the frame conditions, and the
/// eigenlabel side conditions must hold.
pub fn check_atomic_derivation(
    base: &Base,
    gamma: &FrameSpec,
    d: &AtomicDerivation,
) -> Result<(), DerivCheckError> {
    let mut path = Vec::new();
    check_node(base, gamma, d, &mut path)
}

fn check_node(
    base: &Base,
    gamma: &FrameSpec,
    d: &AtomicDerivation,
    path: &mut Vec<usize>,
) -> Result<(), DerivCheckError> {
    let fail = |path: &[usize], reason: String| {
        Err(DerivCheckError { path: path.to_vec(), reason })
    };
    if let Some(c) = d.step.frame_condition() {
        if !gamma.has(c) {
            return fail(path, format!("modal case {:?} not licensed by frame conditions", c));
        }
        if !matches!(d.conclusion, BasicSentence::Atom(_, _)) {
            return fail(path, "modal cases conclude labelled atoms only".into());
        }
    }
    // Each child must be checked with the context/conclusion the clause
    // assigns to it.
    let expect: Vec<(BTreeSet<BasicSentence>, BasicSentence)> = match &d.step {
        DerivStep::Ref => {
            if !d.context.contains(&d.conclusion) {
                return fail(path, format!("Ref: `{}` not in context", d.conclusion));
            }
            Vec::new()
        }
        DerivStep::App(rule) => {
            if !base.contains_rule_at(rule, &avoid_labels(&d.context, &d.conclusion)) {
                return fail(path, format!("App: rule `{rule}` not in base"));
            }
            if rule.conclusion() != &d.conclusion {
                return fail(path, "App: conclusion differs from the rule's".into());
            }
            rule.antecedents()
                .iter()
                .map(|ant| {
                    let mut ctx = d.context.clone();
                    ctx.extend(ant.premises().iter().cloned());
                    (ctx, ant.head().clone())
                })
                .collect()
        }
        DerivStep::D { from, eigen } => {
            let z = d.conclusion.atom_label().expect("atom conclusion");
            if eigen == from || eigen == z {
                return fail(path, "D: eigenlabel equals a clause label".into());
            }
            if context_labels(&d.context).contains(eigen) {
                return fail(path, "D: eigenlabel occurs in the context".into());
            }
            let mut ctx = d.context.clone();
            ctx.insert(BasicSentence::Rel(RelAssumption {
                from: from.clone(),
                to: eigen.clone(),
            }));
            vec![(ctx, d.conclusion.clone())]
        }
        DerivStep::T { at } => {
            let mut ctx = d.context.clone();
            ctx.insert(BasicSentence::Rel(RelAssumption { from: at.clone(), to: at.clone() }));
            vec![(ctx, d.conclusion.clone())]
        }
        DerivStep::B { rel } => {
            let mut ctx = d.context.clone();
            ctx.insert(BasicSentence::Rel(RelAssumption {
                from: rel.to.clone(),
                to: rel.from.clone(),
            }));
            vec![
                (d.context.clone(), BasicSentence::Rel(rel.clone())),
                (ctx, d.conclusion.clone()),
            ]
        }
        DerivStep::Four { first, second } => {
            if first.to != second.from {
                return fail(path, "4: relational premises do not compose".into());
            }
            let mut ctx = d.context.clone();
            ctx.insert(BasicSentence::Rel(RelAssumption {
                from: first.from.clone(),
                to: second.to.clone(),
            }));
            vec![
                (d.context.clone(), BasicSentence::Rel(first.clone())),
                (d.context.clone(), BasicSentence::Rel(second.clone())),
                (ctx, d.conclusion.clone()),
            ]
        }
        DerivStep::Five { first, second } => {
            if first.from != second.from {
                return fail(path, "5: relational premises do not share a source".into());
            }
            let mut ctx = d.context.clone();
            ctx.insert(BasicSentence::Rel(RelAssumption {
                from: first.to.clone(),
                to: second.to.clone(),
            }));
            vec![
                (d.context.clone(), BasicSentence::Rel(first.clone())),
                (d.context.clone(), BasicSentence::Rel(second.clone())),
                (ctx, d.conclusion.clone()),
            ]
        }
        DerivStep::Two { first, second, eigen } => {
            if first.from != second.from {
                return fail(path, "2: relational premises do not share a source".into());
            }
            let v = d.conclusion.atom_label().expect("atom conclusion");
            let clause_labels = [&first.from, &first.to, &second.to, v];
            if clause_labels.contains(&eigen) {
                return fail(path, "2: eigenlabel equals a clause label".into());
            }
            if context_labels(&d.context).contains(eigen) {
                return fail(path, "2: eigenlabel occurs in the context".into());
            }
            let mut ctx = d.context.clone();
            ctx.insert(BasicSentence::Rel(RelAssumption {
                from: first.to.clone(),
                to: eigen.clone(),
            }));
            ctx.insert(BasicSentence::Rel(RelAssumption {
                from: second.to.clone(),
                to: eigen.clone(),
            }));
            vec![
                (d.context.clone(), BasicSentence::Rel(first.clone())),
                (d.context.clone(), BasicSentence::Rel(second.clone())),
                (ctx, d.conclusion.clone()),
            ]
        }
    };
    if d.children.len() != expect.len() {
        return fail(path, format!("expected {} children, found {}", expect.len(), d.children.len()));
    }
    for (i, (child, (ctx, concl))) in d.children.iter().zip(expect).enumerate() {
        path.push(i);
        if child.context != ctx {
            return fail(path, "child context differs from the clause's".into());
        }
        if child.conclusion != concl {
            return fail(path, "child conclusion differs from the clause's".into());
        }
        check_node(base, gamma, child, path)?;
        path.pop();
    }
    Ok(())
}

/// Outcome of a bounded search: either a derivation, or failure with a flag
/// recording whether some branch was cut by a budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeriveOutcome {
    pub derivation: Option<AtomicDerivation>,
    /// True when failure may be due to exhausted bounds rather than
    /// genuine underivability.
    pub truncated: bool,
}

impl DeriveOutcome {
    /// Definitive failure: the whole bounded space was explored.
    pub fn definitively_fails(&self) -> bool {
        self.derivation.is_none() && !self.truncated
    }
}

/// Searches for a derivation of `goal` from `context`. Absence of a result
/// means "not found within budget", never "invalid".
pub fn derives(
    base: &Base,
    gamma: &FrameSpec,
    context: &BTreeSet<BasicSentence>,
    goal: &BasicSentence,
    budget: &SearchBudget,
) -> Option<AtomicDerivation> {
    derive_with_status(base, gamma, context, goal, budget).derivation
}

/// As [`derives`], also reporting whether any branch was budget-cut.
pub fn derive_with_status(
    base: &Base,
    gamma: &FrameSpec,
    context: &BTreeSet<BasicSentence>,
    goal: &BasicSentence,
    budget: &SearchBudget,
) -> DeriveOutcome {
    let mut search = Search {
        base,
        gamma,
        budget,
        base_labels: base.labels(),
        memo: HashMap::new(),
        candidates: HashMap::new(),
        path: Vec::new(),
    };
    match search.go(context.clone(), goal.clone(), budget.depth, budget.modal_uses, budget.fresh)
    {
        Ok(d) => DeriveOutcome { derivation: Some(d), truncated: false },
        Err(fail) => DeriveOutcome { derivation: None, truncated: fail.truncated },
    }
}

type State = (BTreeSet<BasicSentence>, BasicSentence);

/// Failure of one search subtree. `guarded` marks failures that involved
/// the in-branch repetition guard: those are relative to the current path
/// and must not be memoized.
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
    depth: usize,
    modal: usize,
    fresh: usize,
    truncated: bool,
}

#[derive(Debug, Clone)]
enum Memo {
    Found(AtomicDerivation),
    Failed(Vec<FailPoint>),
}

struct Search<'a> {
    base: &'a Base,
    gamma: &'a FrameSpec,
    budget: &'a SearchBudget,
    /// Labels mentioned by the base itself; part of the enumeration pool.
    base_labels: BTreeSet<Label>,
    memo: HashMap<State, Memo>,
    /// Rule instances concluding a goal, keyed by goal, instantiation
    /// pool, and eigen avoid set.
    candidates: HashMap<(BasicSentence, BTreeSet<Label>, BTreeSet<Label>), Vec<BasicRule>>,
    path: Vec<State>,
}

impl<'a> Search<'a> {
    fn pool_for(&self, context: &BTreeSet<BasicSentence>, goal: &BasicSentence) -> BTreeSet<Label> {
        let mut pool = self.budget.pool.clone();
        pool.extend(self.base_labels.iter().cloned());
        pool.extend(context_labels(context));
        pool.extend(goal.labels().into_iter().cloned());
        pool
    }

    fn rules_for(&mut self, context: &BTreeSet<BasicSentence>, goal: &BasicSentence) -> Vec<BasicRule> {
        let pool = self.pool_for(context, goal);
        let avoid = avoid_labels(context, goal);
        let key = (goal.clone(), pool, avoid);
        if let Some(rules) = self.candidates.get(&key) {
            return rules.clone();
        }
        let rules = self.base.rules_concluding(goal, &key.1, &key.2);
        self.candidates.insert(key, rules.clone());
        rules
    }

    /// Relations derivable from `context`: context members plus axiom-rule
    /// conclusions. Relational goals admit no other derivations.
    fn derivable_relations(
        &self,
        context: &BTreeSet<BasicSentence>,
        goal_labels: &BTreeSet<Label>,
    ) -> Vec<(RelAssumption, AtomicDerivation)> {
        let mut pool = self.budget.pool.clone();
        pool.extend(self.base_labels.iter().cloned());
        pool.extend(context_labels(context));
        pool.extend(goal_labels.iter().cloned());
        let mut out: Vec<(RelAssumption, AtomicDerivation)> = Vec::new();
        for s in context {
            if let BasicSentence::Rel(r) = s {
                out.push((
                    r.clone(),
                    AtomicDerivation {
                        step: DerivStep::Ref,
                        context: context.clone(),
                        conclusion: s.clone(),
                        children: Vec::new(),
                    },
                ));
            }
        }
        let mut axioms: Vec<BasicRule> = self
            .base
            .ground()
            .iter()
            .filter(|r| r.antecedents().is_empty() && !r.conclusion().is_atom())
            .cloned()
            .collect();
        for s in self.base.schematic() {
            if s.antecedents.is_empty() {
                axioms.extend(
                    s.instantiate(&pool)
                        .into_iter()
                        .filter(|r| !r.conclusion().is_atom()),
                );
            }
        }
        axioms.sort();
        axioms.dedup();
        for rule in axioms {
            if let BasicSentence::Rel(r) = rule.conclusion() {
                out.push((
                    r.clone(),
                    AtomicDerivation {
                        step: DerivStep::App(rule.clone()),
                        context: context.clone(),
                        conclusion: rule.conclusion().clone(),
                        children: Vec::new(),
                    },
                ));
            }
        }
        out.sort_by(|(a, _), (b, _)| a.cmp(b));
        out.dedup_by(|(a, _), (b, _)| a == b);
        out
    }

    fn go(
        &mut self,
        context: BTreeSet<BasicSentence>,
        goal: BasicSentence,
        depth: usize,
        modal: usize,
        fresh: usize,
    ) -> Result<AtomicDerivation, Fail> {
        let state: State = (context, goal);
        match self.memo.get(&state) {
            Some(Memo::Found(d)) => return Ok(d.clone()),
            Some(Memo::Failed(points)) => {
                if let Some(p) = points
                    .iter()
                    .find(|p| p.depth >= depth && p.modal >= modal && p.fresh >= fresh)
                {
                    return Err(Fail { truncated: p.truncated, guarded: false });
                }
            }
            None => {}
        }
        // A state already open on this branch cannot contribute a smaller
        // derivation.
        if self.path.contains(&state) {
            return Err(Fail { truncated: false, guarded: true });
        }
        if depth == 0 {
            return Err(Fail { truncated: true, guarded: false });
        }
        self.path.push(state.clone());
        let result = self.expand(&state.0, &state.1, depth, modal, fresh);
        self.path.pop();
        match &result {
            Ok(d) => {
                self.memo.insert(state, Memo::Found(d.clone()));
            }
            Err(fail) if !fail.guarded => {
                let point = FailPoint { depth, modal, fresh, truncated: fail.truncated };
                match self.memo.entry(state).or_insert_with(|| Memo::Failed(Vec::new())) {
                    Memo::Failed(points) => {
                        points.retain(|p| {
                            !(point.depth >= p.depth
                                && point.modal >= p.modal
                                && point.fresh >= p.fresh)
                        });
                        points.push(point);
                    }
                    Memo::Found(_) => {}
                }
            }
            Err(_) => {}
        }
        result
    }

    fn expand(
        &mut self,
        context: &BTreeSet<BasicSentence>,
        goal: &BasicSentence,
        depth: usize,
        modal: usize,
        fresh: usize,
    ) -> Result<AtomicDerivation, Fail> {
        let mut fail = Fail::default();
        if context.contains(goal) {
            return Ok(AtomicDerivation {
                step: DerivStep::Ref,
                context: context.clone(),
                conclusion: goal.clone(),
                children: Vec::new(),
            });
        }
        for rule in self.rules_for(context, goal) {
            match self.try_app(context, goal, &rule, depth, modal, fresh) {
                Ok(d) => return Ok(d),
                Err(f) => fail.absorb(f),
            }
        }
        if goal.is_atom() && !self.gamma.is_empty() {
            if modal == 0 {
                // Modal cases exist but are not affordable.
                fail.truncated = true;
            } else {
                match self.try_modal(context, goal, depth, modal, fresh) {
                    Ok(d) => return Ok(d),
                    Err(f) => fail.absorb(f),
                }
            }
        }
        Err(fail)
    }

    fn try_app(
        &mut self,
        context: &BTreeSet<BasicSentence>,
        goal: &BasicSentence,
        rule: &BasicRule,
        depth: usize,
        modal: usize,
        fresh: usize,
    ) -> Result<AtomicDerivation, Fail> {
        let mut children = Vec::new();
        for ant in rule.antecedents() {
            let mut ctx = context.clone();
            ctx.extend(ant.premises().iter().cloned());
            match self.go(ctx, ant.head().clone(), depth - 1, modal, fresh) {
                Ok(d) => children.push(d),
                Err(f) => return Err(f),
            }
        }
        Ok(AtomicDerivation {
            step: DerivStep::App(rule.clone()),
            context: context.clone(),
            conclusion: goal.clone(),
            children,
        })
    }

    fn try_modal(
        &mut self,
        context: &BTreeSet<BasicSentence>,
        goal: &BasicSentence,
        depth: usize,
        modal: usize,
        fresh: usize,
    ) -> Result<AtomicDerivation, Fail> {
        let mut fail = Fail::default();
        let goal_label = goal.atom_label().expect("atom goal").clone();
        let goal_labels: BTreeSet<Label> = [goal_label.clone()].into();
        let enum_labels: BTreeSet<Label> = self.pool_for(context, goal);

        // Fresh eigenlabels avoid everything in sight; the side conditions
        // only require avoiding the context and clause labels.
        let mut eigen_avoid = enum_labels.clone();
        eigen_avoid.extend(avoid_labels(context, goal));

        if self.gamma.has(FrameCondition::D) {
            for x in &enum_labels {
                if fresh == 0 {
                    fail.truncated = true;
                    break;
                }
                let eigen = fresh_label(&eigen_avoid);
                let rel = RelAssumption { from: x.clone(), to: eigen.clone() };
                let mut ctx = context.clone();
                ctx.insert(BasicSentence::Rel(rel));
                match self.go(ctx, goal.clone(), depth - 1, modal - 1, fresh - 1) {
                    Ok(d) => {
                        return Ok(AtomicDerivation {
                            step: DerivStep::D { from: x.clone(), eigen },
                            context: context.clone(),
                            conclusion: goal.clone(),
                            children: vec![d],
                        })
                    }
                    Err(f) => fail.absorb(f),
                }
            }
        }
        if self.gamma.has(FrameCondition::T) {
            for x in &enum_labels {
                let mut ctx = context.clone();
                ctx.insert(BasicSentence::Rel(RelAssumption { from: x.clone(), to: x.clone() }));
                match self.go(ctx, goal.clone(), depth - 1, modal - 1, fresh) {
                    Ok(d) => {
                        return Ok(AtomicDerivation {
                            step: DerivStep::T { at: x.clone() },
                            context: context.clone(),
                            conclusion: goal.clone(),
                            children: vec![d],
                        })
                    }
                    Err(f) => fail.absorb(f),
                }
            }
        }
        let needs_rels = [FrameCondition::B, FrameCondition::Four, FrameCondition::Five, FrameCondition::Two]
            .iter()
            .any(|c| self.gamma.has(*c));
        if !needs_rels {
            return Err(fail);
        }
        let rels = self.derivable_relations(context, &goal_labels);
        if self.gamma.has(FrameCondition::B) {
            for (rel, rel_deriv) in &rels {
                let mut ctx = context.clone();
                ctx.insert(BasicSentence::Rel(RelAssumption {
                    from: rel.to.clone(),
                    to: rel.from.clone(),
                }));
                match self.go(ctx, goal.clone(), depth - 1, modal - 1, fresh) {
                    Ok(d) => {
                        return Ok(AtomicDerivation {
                            step: DerivStep::B { rel: rel.clone() },
                            context: context.clone(),
                            conclusion: goal.clone(),
                            children: vec![rel_deriv.clone(), d],
                        })
                    }
                    Err(f) => fail.absorb(f),
                }
            }
        }
        if self.gamma.has(FrameCondition::Four) {
            for (r1, d1) in &rels {
                for (r2, d2) in &rels {
                    if r1.to != r2.from {
                        continue;
                    }
                    let mut ctx = context.clone();
                    ctx.insert(BasicSentence::Rel(RelAssumption {
                        from: r1.from.clone(),
                        to: r2.to.clone(),
                    }));
                    match self.go(ctx, goal.clone(), depth - 1, modal - 1, fresh) {
                        Ok(d) => {
                            return Ok(AtomicDerivation {
                                step: DerivStep::Four { first: r1.clone(), second: r2.clone() },
                                context: context.clone(),
                                conclusion: goal.clone(),
                                children: vec![d1.clone(), d2.clone(), d],
                            })
                        }
                        Err(f) => fail.absorb(f),
                    }
                }
            }
        }
        if self.gamma.has(FrameCondition::Five) {
            for (r1, d1) in &rels {
                for (r2, d2) in &rels {
                    if r1.from != r2.from {
                        continue;
                    }
                    let mut ctx = context.clone();
                    ctx.insert(BasicSentence::Rel(RelAssumption {
                        from: r1.to.clone(),
                        to: r2.to.clone(),
                    }));
                    match self.go(ctx, goal.clone(), depth - 1, modal - 1, fresh) {
                        Ok(d) => {
                            return Ok(AtomicDerivation {
                                step: DerivStep::Five { first: r1.clone(), second: r2.clone() },
                                context: context.clone(),
                                conclusion: goal.clone(),
                                children: vec![d1.clone(), d2.clone(), d],
                            })
                        }
                        Err(f) => fail.absorb(f),
                    }
                }
            }
        }
        if self.gamma.has(FrameCondition::Two) {
            for (r1, d1) in &rels {
                for (r2, d2) in &rels {
                    if r1.from != r2.from {
                        continue;
                    }
                    if fresh == 0 {
                        fail.truncated = true;
                        continue;
                    }
                    let mut avoid = eigen_avoid.clone();
                    avoid.extend([r1.to.clone(), r2.to.clone(), r1.from.clone()]);
                    let eigen = fresh_label(&avoid);
                    let mut ctx = context.clone();
                    ctx.insert(BasicSentence::Rel(RelAssumption {
                        from: r1.to.clone(),
                        to: eigen.clone(),
                    }));
                    ctx.insert(BasicSentence::Rel(RelAssumption {
                        from: r2.to.clone(),
                        to: eigen.clone(),
                    }));
                    match self.go(ctx, goal.clone(), depth - 1, modal - 1, fresh - 1) {
                        Ok(d) => {
                            return Ok(AtomicDerivation {
                                step: DerivStep::Two {
                                    first: r1.clone(),
                                    second: r2.clone(),
                                    eigen,
                                },
                                context: context.clone(),
                                conclusion: goal.clone(),
                                children: vec![d1.clone(), d2.clone(), d],
                            })
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
    use crate::base::text::{rule, sentence};

    fn ctx(items: &[&str]) -> BTreeSet<BasicSentence> {
        items.iter().map(|s| sentence(s)).collect()
    }

    #[test]
    fn ref_derives_context_member() {
        let d = derives(
            &Base::empty(),
            &FrameSpec::empty(),
            &ctx(&["p@x"]),
            &sentence("p@x"),
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(d.step, DerivStep::Ref);
        assert!(check_atomic_derivation(&Base::empty(), &FrameSpec::empty(), &d).is_ok());
    }

    #[test]
    fn axiom_app() {
        let base = Base::from_rules([rule("=> q@y")]);
        let d = derives(
            &base,
            &FrameSpec::empty(),
            &BTreeSet::new(),
            &sentence("q@y"),
            &SearchBudget::default(),
        )
        .unwrap();
        assert!(matches!(d.step, DerivStep::App(_)));
        assert!(check_atomic_derivation(&base, &FrameSpec::empty(), &d).is_ok());
    }

    #[test]
    fn reflexivity_closure_discharges_loop_edge() {
        // Under T the hypothetical edge x R x becomes available, the rule
        // fires, and the closure case discharges the edge.
        let base = Base::from_rules([rule("(=> x R x) => p@y")]);
        let gamma: FrameSpec = FrameCondition::T.into();
        let outcome = derive_with_status(
            &base,
            &gamma,
            &BTreeSet::new(),
            &sentence("p@y"),
            &SearchBudget::default(),
        );
        let d = outcome.derivation.expect("derivable under T");
        assert!(check_atomic_derivation(&base, &gamma, &d).is_ok());
        // Not derivable without T, and that failure is definitive.
        let without = derive_with_status(
            &base,
            &FrameSpec::empty(),
            &BTreeSet::new(),
            &sentence("p@y"),
            &SearchBudget::default(),
        );
        assert!(without.definitively_fails());
    }

    #[test]
    fn checker_rejects_stale_eigenlabel() {
        let base = Base::empty();
        let gamma: FrameSpec = FrameCondition::D.into();
        // Context mentioning w0 makes w0 unusable as the D eigenlabel.
        let context = ctx(&["p@w0"]);
        let mut child_ctx = context.clone();
        child_ctx.insert(sentence("x R w0"));
        let child = AtomicDerivation {
            step: DerivStep::Ref,
            context: child_ctx,
            conclusion: sentence("p@w0"),
            children: Vec::new(),
        };
        let d = AtomicDerivation {
            step: DerivStep::D { from: Label::new("x"), eigen: Label::new("w0") },
            context,
            conclusion: sentence("p@w0"),
            children: vec![child],
        };
        let err = check_atomic_derivation(&base, &gamma, &d).unwrap_err();
        assert!(err.reason.contains("eigenlabel"));
    }

    #[test]
    fn checker_rejects_rule_outside_base() {
        let d = AtomicDerivation {
            step: DerivStep::App(rule("=> q@y")),
            context: BTreeSet::new(),
            conclusion: sentence("q@y"),
            children: Vec::new(),
        };
        let err = check_atomic_derivation(&Base::empty(), &FrameSpec::empty(), &d).unwrap_err();
        assert!(err.reason.contains("not in base"));
    }
}
