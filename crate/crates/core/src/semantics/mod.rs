//! Bounded evaluation and falsification of the support relation.
//!
//! Support extends atomic derivability to all formulae clause by clause;
//! its universal quantifiers over base extensions, atoms, and labels are
//! instantiated over a deterministic finite universe derived from the
//! query. A `Falsified` verdict carries a replayable witness extension; a
//! `Supported` verdict from the quantified clauses means "no counterexample
//! within bounds", except where a clause is decided exactly.
//!
//! Two choices make the bounds bite in the right places. First, a query
//! whose context and goal are all basic sentences is decided directly by
//! derivability with that context, which coincides with the quantified
//! reading over extensions; this makes the premises of the box and diamond
//! clauses exact instead of vacuous at unseen labels. Second, the
//! candidate extensions include label-schematic rule families (an edge
//! premise with a free target) alongside ground rules: the genuine
//! witnesses against box formulae consume edges to arbitrary labels, and
//! no finite set of ground rules expresses that.

use std::collections::{BTreeSet, HashMap};

use crate::base::derive::{derive_with_status, SearchBudget};
use crate::base::{
    AtomTerm, Base, BasicRule, BasicSentence, BasicSequent, LabelTerm, MetaVar, SchematicRule,
    SentenceTemplate, SequentTemplate,
};
use crate::nd::check::check_nd_proof;
use crate::nd::{Graph, NdProof};
use crate::syntax::{
    fresh_atom, fresh_labels, Atom, ContextItem, ExtendedSequent, Formula, FrameSpec,
    Label, LabelledFormula, RelAssumption, Sequent,
};

/// Verdict of the bounded evaluator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportVerdict {
    /// No counterexample within bounds; `exact` records that no
    /// sub-evaluation was cut by a search budget.
    Supported { exact: bool },
    /// A replayable refutation.
    Falsified(Box<FalsifyWitness>),
    /// A search budget was exhausted before a verdict was reached.
    Unknown,
}

impl SupportVerdict {
    pub fn is_supported(&self) -> bool {
        matches!(self, SupportVerdict::Supported { .. })
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, SupportVerdict::Falsified(_))
    }
}

/// The extension and failing sub-query refuting a support claim.
/// Re-evaluating the query at the witness base reproduces the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalsifyWitness {
    pub base: Base,
    pub query: ExtendedSequent,
}

/// A candidate rule for base extension: ground, or a one-metavariable
/// family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CandidateRule {
    Ground(BasicRule),
    Schematic(SchematicRule),
}

/// The finite stand-in for "for all extensions": every quantifier over
/// bases ranges over the root base extended by at most `max_extra`
/// candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionUniverse {
    atoms: Vec<Atom>,
    labels: Vec<Label>,
    /// The representative for "all other labels": never mentioned by any
    /// candidate rule, so support claims must hold at it generically.
    generic_label: Label,
    candidates: Vec<CandidateRule>,
    max_extra: usize,
}

impl ExtensionUniverse {
    /// Builds the default universe for a query: one fresh atom and one
    /// fresh label join the query's own, candidate rules are all axioms
    /// `=> s` and conditionals `(s1 => s2)` over those, plus the
    /// label-schematic edge-consumer families.
    pub fn for_query(q: &ExtendedSequent, max_extra: usize) -> Self {
        let mut atoms = BTreeSet::new();
        let mut labels = BTreeSet::new();
        for item in q.context().iter().chain(std::iter::once(q.goal())) {
            match item {
                ContextItem::Formula(lf) => {
                    atoms.extend(lf.formula.atoms());
                    labels.insert(lf.label.clone());
                }
                ContextItem::Rel(r) => {
                    labels.extend([r.from.clone(), r.to.clone()]);
                }
            }
        }
        atoms.insert(fresh_atom(&atoms));
        let fresh = fresh_labels(&labels, 2);
        labels.insert(fresh[0].clone());
        let generic_label = fresh[1].clone();

        let atoms: Vec<Atom> = atoms.into_iter().collect();
        let labels: Vec<Label> = labels.into_iter().collect();
        let mut sentences: Vec<BasicSentence> = Vec::new();
        for a in &atoms {
            for l in &labels {
                sentences.push(BasicSentence::Atom(a.clone(), l.clone()));
            }
        }
        for from in &labels {
            for to in &labels {
                sentences.push(BasicSentence::Rel(RelAssumption {
                    from: from.clone(),
                    to: to.clone(),
                }));
            }
        }
        sentences.sort();

        let mut candidates: Vec<CandidateRule> = Vec::new();
        for s in &sentences {
            candidates.push(CandidateRule::Ground(BasicRule::axiom(s.clone())));
        }
        for s1 in &sentences {
            for s2 in &sentences {
                if s1 == s2 || !s2.is_atom() {
                    continue;
                }
                let rule = BasicRule::new(
                    [BasicSequent::fact(s1.clone())],
                    s2.clone(),
                )
                .expect("atom conclusion");
                candidates.push(CandidateRule::Ground(rule));
            }
        }
        // Edge-consumer families: (l R ?u => a@?u) and (l R ?u => a@l').
        let meta = MetaVar::new("u");
        for from in &labels {
            for a in &atoms {
                let premise = SequentTemplate {
                    premises: BTreeSet::new(),
                    head: SentenceTemplate::Rel {
                        from: LabelTerm::Label(from.clone()),
                        to: LabelTerm::Meta(meta.clone()),
                    },
                };
                candidates.push(CandidateRule::Schematic(SchematicRule {
                    antecedents: [premise.clone()].into(),
                    conclusion: SentenceTemplate::Atom {
                        name: AtomTerm::Atom(a.clone()),
                        label: LabelTerm::Meta(meta.clone()),
                    },
                    constraints: vec![],
            fresh_metas: vec![],
                }));
                for at in &labels {
                    candidates.push(CandidateRule::Schematic(SchematicRule {
                        antecedents: [premise.clone()].into(),
                        conclusion: SentenceTemplate::Atom {
                            name: AtomTerm::Atom(a.clone()),
                            label: LabelTerm::Label(at.clone()),
                        },
                        constraints: vec![],
            fresh_metas: vec![],
                    }));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        ExtensionUniverse { atoms, labels, generic_label, candidates, max_extra }
    }

    pub fn for_sequent(seq: &Sequent, max_extra: usize) -> Self {
        Self::for_query(&seq.clone().into(), max_extra)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn candidates(&self) -> &[CandidateRule] {
        &self.candidates
    }

    /// The label samples for "for all labels y": the pool plus the generic
    /// representative.
    fn label_samples(&self) -> Vec<Label> {
        let mut out = self.labels.clone();
        out.push(self.generic_label.clone());
        out
    }

    /// The target samples for "for all atoms p^z".
    fn targets(&self) -> Vec<LabelledFormula> {
        let mut out = Vec::new();
        for a in &self.atoms {
            for l in &self.labels {
                out.push(LabelledFormula { formula: Formula::Atom(a.clone()), label: l.clone() });
            }
        }
        out
    }

    fn apply(&self, base: &Base, subset: &[usize]) -> Base {
        let mut out = base.clone();
        for &i in subset {
            match &self.candidates[i] {
                CandidateRule::Ground(r) => out.insert(r.clone()),
                CandidateRule::Schematic(s) => out.insert_schematic(s.clone()),
            }
        }
        out
    }

    /// All candidate-index subsets of size at most `max_extra`, smallest
    /// first, lexicographic within a size.
    fn subsets(&self) -> Vec<Vec<usize>> {
        let n = self.candidates.len();
        let mut out = vec![Vec::new()];
        if self.max_extra >= 1 {
            out.extend((0..n).map(|i| vec![i]));
        }
        if self.max_extra >= 2 {
            for i in 0..n {
                for j in (i + 1)..n {
                    out.push(vec![i, j]);
                }
            }
        }
        if self.max_extra > 2 {
            // Larger universes grow combinatorially; extend on demand.
            let mut frontier: Vec<Vec<usize>> =
                out.iter().filter(|s| s.len() == 2).cloned().collect();
            for _ in 2..self.max_extra {
                let mut next = Vec::new();
                for s in &frontier {
                    let last = *s.last().unwrap();
                    for j in (last + 1)..n {
                        let mut t = s.clone();
                        t.push(j);
                        next.push(t);
                    }
                }
                out.extend(next.iter().cloned());
                frontier = next;
            }
        }
        out
    }
}

/// Evaluates support of `q` at `base` within the universe's bounds.
pub fn supports(
    base: &Base,
    gamma: &FrameSpec,
    q: &ExtendedSequent,
    uni: &ExtensionUniverse,
    budget: &SearchBudget,
) -> SupportVerdict {
    Evaluator::new(base, gamma, uni, budget).eval_root(q)
}

/// Searches for a counterexample to the validity of `seq`: support is
/// evaluated at the empty base, which decides validity because support is
/// monotone in the base.
pub fn falsify_validity(
    gamma: &FrameSpec,
    seq: &Sequent,
    uni: &ExtensionUniverse,
    budget: &SearchBudget,
) -> SupportVerdict {
    supports(&Base::empty(), gamma, &seq.clone().into(), uni, budget)
}

/// Cross-checks a checked proof against the falsifier: a counterexample to
/// a proved sequent indicates a defect in the proof system, the
/// derivability engine, or the evaluator.
pub fn soundness_spotcheck(
    gamma: &FrameSpec,
    proof: &NdProof,
    claim: &Sequent,
    uni: &ExtensionUniverse,
    budget: &SearchBudget,
) -> bool {
    let graph = Graph::new(claim.labels(), []).expect("claim has a label");
    if check_nd_proof(gamma, &graph, proof, claim).is_err() {
        return false;
    }
    !falsify_validity(gamma, claim, uni, budget).is_falsified()
}

struct Evaluator<'a> {
    gamma: &'a FrameSpec,
    uni: &'a ExtensionUniverse,
    budget: SearchBudget,
    subsets: Vec<Vec<usize>>,
    members: Vec<Base>,
    memo: HashMap<(usize, ExtendedSequent), SupportVerdict>,
}

/// Accumulates quantifier sweeps: tracks budget cuts and inexactness.
struct Sweep {
    unknown: bool,
    exact: bool,
}

impl Sweep {
    fn new() -> Self {
        Sweep { unknown: false, exact: true }
    }

    fn absorb(&mut self, v: &SupportVerdict) {
        match v {
            SupportVerdict::Supported { exact } => self.exact &= exact,
            SupportVerdict::Unknown => {
                self.unknown = true;
                self.exact = false;
            }
            SupportVerdict::Falsified(_) => {}
        }
    }

    fn close(self) -> SupportVerdict {
        if self.unknown {
            SupportVerdict::Unknown
        } else {
            SupportVerdict::Supported { exact: self.exact }
        }
    }
}

impl<'a> Evaluator<'a> {
    fn new(
        base: &Base,
        gamma: &'a FrameSpec,
        uni: &'a ExtensionUniverse,
        budget: &SearchBudget,
    ) -> Self {
        let subsets = uni.subsets();
        let members: Vec<Base> = subsets.iter().map(|s| uni.apply(base, s)).collect();
        let mut budget = budget.clone();
        budget.pool.extend(uni.label_samples());
        Evaluator { gamma, uni, budget, subsets, members, memo: HashMap::new() }
    }

    fn eval_root(&mut self, q: &ExtendedSequent) -> SupportVerdict {
        self.eval(0, q)
    }

    /// Indices of universe members extending member `m`.
    fn extensions(&self, m: usize) -> Vec<usize> {
        let sub = &self.subsets[m];
        (0..self.subsets.len())
            .filter(|&j| sub.iter().all(|i| self.subsets[j].contains(i)))
            .collect()
    }

    fn eval(&mut self, m: usize, q: &ExtendedSequent) -> SupportVerdict {
        let key = (m, q.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.compute(m, q);
        self.memo.insert(key, v.clone());
        v
    }

    /// Basic sentences and droppable constants of a context item. `None`
    /// means the item is a genuine formula.
    fn basic_item(item: &ContextItem) -> Option<Option<BasicSentence>> {
        match item {
            ContextItem::Rel(r) => Some(Some(BasicSentence::Rel(r.clone()))),
            ContextItem::Formula(lf) => match &lf.formula {
                Formula::Atom(a) => {
                    Some(Some(BasicSentence::Atom(a.clone(), lf.label.clone())))
                }
                Formula::Top => Some(None),
                _ => None,
            },
        }
    }

    /// The exact fast path: a query whose context is all basic (constants
    /// dropped) and whose goal is basic coincides with derivability from
    /// that context.
    fn basic_view(q: &ExtendedSequent) -> Option<(BTreeSet<BasicSentence>, Option<BasicSentence>)> {
        let mut ctx = BTreeSet::new();
        for item in q.context() {
            match Self::basic_item(item)? {
                Some(s) => {
                    ctx.insert(s);
                }
                None => {}
            }
        }
        let goal = match q.goal() {
            ContextItem::Formula(lf) if lf.formula == Formula::Top => None,
            item => Some(Self::basic_item(item)??),
        };
        Some((ctx, goal))
    }

    fn derive_verdict(
        &mut self,
        m: usize,
        ctx: &BTreeSet<BasicSentence>,
        goal: &BasicSentence,
        q: &ExtendedSequent,
    ) -> SupportVerdict {
        let outcome = derive_with_status(&self.members[m], self.gamma, ctx, goal, &self.budget);
        if outcome.derivation.is_some() {
            SupportVerdict::Supported { exact: true }
        } else if outcome.truncated {
            SupportVerdict::Unknown
        } else {
            SupportVerdict::Falsified(Box::new(FalsifyWitness {
                base: self.members[m].clone(),
                query: q.clone(),
            }))
        }
    }

    fn compute(&mut self, m: usize, q: &ExtendedSequent) -> SupportVerdict {
        if let Some((ctx, goal)) = Self::basic_view(q) {
            return match goal {
                None => SupportVerdict::Supported { exact: true },
                Some(goal) => self.derive_verdict(m, &ctx, &goal, q),
            };
        }
        if q.context().is_empty() {
            let lf = match q.goal() {
                ContextItem::Formula(lf) => lf.clone(),
                // Relational goals are basic and were handled above.
                ContextItem::Rel(_) => unreachable!("relational goals are basic"),
            };
            self.compute_formula(m, &lf)
        } else {
            self.compute_inf(m, q)
        }
    }

    fn compute_formula(&mut self, m: usize, lf: &LabelledFormula) -> SupportVerdict {
        let x = &lf.label;
        match &lf.formula {
            // Atoms, top, and relational goals never reach here.
            Formula::Atom(_) | Formula::Top => unreachable!("basic goals are handled earlier"),
            Formula::Bot => {
                let mut sweep = Sweep::new();
                for t in self.uni.targets() {
                    let v = self.eval(m, &ExtendedSequent::goal_only(ContextItem::Formula(t)));
                    if v.is_falsified() {
                        return v;
                    }
                    sweep.absorb(&v);
                }
                sweep.close()
            }
            Formula::And(l, r) => {
                let mut sweep = Sweep::new();
                for part in [l, r] {
                    let sub = LabelledFormula { formula: (**part).clone(), label: x.clone() };
                    let v = self.eval(m, &ExtendedSequent::goal_only(ContextItem::Formula(sub)));
                    if v.is_falsified() {
                        return v;
                    }
                    sweep.absorb(&v);
                }
                sweep.close()
            }
            Formula::Imp(l, r) => {
                let premise = LabelledFormula { formula: (**l).clone(), label: x.clone() };
                let goal = LabelledFormula { formula: (**r).clone(), label: x.clone() };
                let q = ExtendedSequent::new(
                    [ContextItem::Formula(premise)],
                    ContextItem::Formula(goal),
                )
                .expect("formula goal");
                self.eval(m, &q)
            }
            Formula::Box(body) => {
                let mut sweep = Sweep::new();
                for y in self.uni.label_samples() {
                    let rel = RelAssumption { from: x.clone(), to: y.clone() };
                    let goal = LabelledFormula { formula: (**body).clone(), label: y };
                    let q = ExtendedSequent::new(
                        [ContextItem::Rel(rel)],
                        ContextItem::Formula(goal),
                    )
                    .expect("formula goal");
                    let v = self.eval(m, &q);
                    if v.is_falsified() {
                        return v;
                    }
                    sweep.absorb(&v);
                }
                sweep.close()
            }
            Formula::Or(l, r) => {
                let mut sweep = Sweep::new();
                for c in self.extensions(m) {
                    for t in self.uni.targets() {
                        let target = ContextItem::Formula(t);
                        let mut premises_hold = true;
                        for part in [l, r] {
                            let sub =
                                LabelledFormula { formula: (**part).clone(), label: x.clone() };
                            let q = ExtendedSequent::new(
                                [ContextItem::Formula(sub)],
                                target.clone(),
                            )
                            .expect("formula goal");
                            let v = self.eval(c, &q);
                            sweep.absorb(&v);
                            if !v.is_supported() {
                                premises_hold = false;
                                break;
                            }
                        }
                        if !premises_hold {
                            continue;
                        }
                        let v = self.eval(c, &ExtendedSequent::goal_only(target));
                        if v.is_falsified() {
                            return v;
                        }
                        sweep.absorb(&v);
                    }
                }
                sweep.close()
            }
            Formula::Dia(body) => {
                let mut sweep = Sweep::new();
                for c in self.extensions(m) {
                    for t in self.uni.targets() {
                        let target = ContextItem::Formula(t);
                        let mut premises_hold = true;
                        for y in self.uni.label_samples() {
                            let rel = RelAssumption { from: x.clone(), to: y.clone() };
                            let at_y =
                                LabelledFormula { formula: (**body).clone(), label: y.clone() };
                            let q = ExtendedSequent::new(
                                [ContextItem::Rel(rel), ContextItem::Formula(at_y)],
                                target.clone(),
                            )
                            .expect("formula goal");
                            let v = self.eval(c, &q);
                            sweep.absorb(&v);
                            if !v.is_supported() {
                                premises_hold = false;
                                break;
                            }
                        }
                        if !premises_hold {
                            continue;
                        }
                        let v = self.eval(c, &ExtendedSequent::goal_only(target));
                        if v.is_falsified() {
                            return v;
                        }
                        sweep.absorb(&v);
                    }
                }
                sweep.close()
            }
        }
    }

    fn compute_inf(&mut self, m: usize, q: &ExtendedSequent) -> SupportVerdict {
        let mut sweep = Sweep::new();
        for c in self.extensions(m) {
            let mut premises_hold = true;
            for item in q.context() {
                let v = self.eval(c, &ExtendedSequent::goal_only(item.clone()));
                sweep.absorb(&v);
                if !v.is_supported() {
                    premises_hold = false;
                    break;
                }
            }
            if !premises_hold {
                continue;
            }
            let v = self.eval(c, &ExtendedSequent::goal_only(q.goal().clone()));
            if v.is_falsified() {
                return v;
            }
            sweep.absorb(&v);
        }
        sweep.close()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::text::rule;
    use crate::syntax::FrameCondition;

    fn uni_for(seq: &Sequent) -> ExtensionUniverse {
        ExtensionUniverse::for_sequent(seq, 2)
    }

    fn budget() -> SearchBudget {
        SearchBudget::default().with_depth(8)
    }

    #[test]
    fn top_is_always_supported() {
        let seq = Sequent::theorem(Formula::Top.at("x"));
        let v = falsify_validity(&FrameSpec::empty(), &seq, &uni_for(&seq), &budget());
        assert_eq!(v, SupportVerdict::Supported { exact: true });
    }

    #[test]
    fn bare_atom_is_falsified_at_the_empty_base() {
        let seq = Sequent::theorem(Formula::atom("p").at("x"));
        let v = falsify_validity(&FrameSpec::empty(), &seq, &uni_for(&seq), &budget());
        let SupportVerdict::Falsified(w) = v else { panic!("expected a counterexample") };
        assert!(w.base.is_empty());
    }

    #[test]
    fn identity_implication_is_supported() {
        let seq = Sequent::theorem(
            Formula::imp(Formula::atom("p"), Formula::atom("p")).at("x"),
        );
        let v = falsify_validity(&FrameSpec::empty(), &seq, &uni_for(&seq), &budget());
        assert!(v.is_supported(), "got {v:?}");
    }

    #[test]
    fn assumption_supports_itself_exactly() {
        let p = Formula::atom("p").at("x");
        let seq = Sequent::new([p.clone()], p);
        let v = falsify_validity(&FrameSpec::empty(), &seq, &uni_for(&seq), &budget());
        assert_eq!(v, SupportVerdict::Supported { exact: true });
    }

    #[test]
    fn reflexivity_axiom_falsified_without_t_but_not_with_it() {
        let seq = Sequent::theorem(
            Formula::imp(Formula::boxed(Formula::atom("p")), Formula::atom("p")).at("x"),
        );
        let uni = uni_for(&seq);
        let v = falsify_validity(&FrameSpec::empty(), &seq, &uni, &budget());
        assert!(v.is_falsified(), "got {v:?}");
        let v_t = falsify_validity(&FrameCondition::T.into(), &seq, &uni, &budget());
        assert!(!v_t.is_falsified(), "got {v_t:?}");
    }

    #[test]
    fn witness_replays() {
        let seq = Sequent::theorem(
            Formula::imp(Formula::boxed(Formula::atom("p")), Formula::atom("p")).at("x"),
        );
        let uni = uni_for(&seq);
        let v = falsify_validity(&FrameSpec::empty(), &seq, &uni, &budget());
        let SupportVerdict::Falsified(w) = v else { panic!("expected a counterexample") };
        let replay = supports(&w.base, &FrameSpec::empty(), &w.query, &uni, &budget());
        assert_eq!(replay, SupportVerdict::Falsified(w));
    }

    #[test]
    fn support_is_monotone_under_extension() {
        let seq = Sequent::theorem(Formula::atom("p").at("x"));
        let uni = uni_for(&seq);
        let q: ExtendedSequent = seq.clone().into();
        let with_axiom = Base::from_rules([rule("=> p@x")]);
        assert!(supports(&with_axiom, &FrameSpec::empty(), &q, &uni, &budget()).is_supported());
        assert!(supports(&Base::empty(), &FrameSpec::empty(), &q, &uni, &budget()).is_falsified());
    }
}
