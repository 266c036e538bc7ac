//! Bases of atomic rules: basic sentences, basic rules, schematic rule
//! families, and base extension.
//!
//! A base plays the role a model plays in truth-conditional semantics: all
//! of its rules mention only labelled atoms and relational assumptions.
//! Infinite rule families are represented by [`SchematicRule`] templates
//! with label metavariables and disequality constraints; they denote the
//! set of their ground instances.

pub mod derive;
pub mod text;

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Atom, ContextItem, Formula, Label, LabelledFormula, RelAssumption};

/// The atom name used as the flat image of a relational assumption with
/// source `from`; the target label becomes the atom's label.
pub fn rel_flat_atom(from: &Label) -> Atom {
    Atom::new(format!("r_{}", from.name()))
}

/// Recovers the source label from a flat relational atom name.
pub fn rel_flat_from(atom: &Atom) -> Option<Label> {
    atom.name().strip_prefix("r_").map(Label::new)
}

/// The labels of a sentence, including the source hidden in a flat
/// relational atom name. Eigenlabel avoidance uses this view so that
/// freshness is preserved by unflattening.
pub fn effective_labels(s: &BasicSentence) -> Vec<Label> {
    let mut out: Vec<Label> = s.labels().into_iter().cloned().collect();
    if let BasicSentence::Atom(a, _) = s {
        if let Some(src) = rel_flat_from(a) {
            out.push(src);
        }
    }
    out
}

/// A labelled propositional letter or a relational assumption.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicSentence {
    Atom(Atom, Label),
    Rel(RelAssumption),
}

impl BasicSentence {
    pub fn atom(name: impl Into<String>, label: impl Into<String>) -> Self {
        BasicSentence::Atom(Atom::new(name), Label::new(label))
    }

    pub fn rel(from: impl Into<String>, to: impl Into<String>) -> Self {
        BasicSentence::Rel(RelAssumption::new(from, to))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, BasicSentence::Atom(_, _))
    }

    pub fn labels(&self) -> Vec<&Label> {
        match self {
            BasicSentence::Atom(_, l) => vec![l],
            BasicSentence::Rel(r) => vec![&r.from, &r.to],
        }
    }

    /// The label of a labelled atom; `None` for relational assumptions.
    pub fn atom_label(&self) -> Option<&Label> {
        match self {
            BasicSentence::Atom(_, l) => Some(l),
            BasicSentence::Rel(_) => None,
        }
    }
}

impl From<BasicSentence> for ContextItem {
    fn from(s: BasicSentence) -> Self {
        match s {
            BasicSentence::Atom(a, l) => {
                ContextItem::Formula(LabelledFormula { formula: Formula::Atom(a), label: l })
            }
            BasicSentence::Rel(r) => ContextItem::Rel(r),
        }
    }
}

impl fmt::Display for BasicSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicSentence::Atom(a, l) => write!(f, "{}@{}", a.name(), l.name()),
            BasicSentence::Rel(r) => write!(f, "{r}"),
        }
    }
}

/// Violation of the shape invariants on basic sequents and rules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleShapeError {
    #[error("a basic sequent with premises must conclude a labelled atom")]
    SequentHead,
    #[error("a basic rule with antecedents must conclude a labelled atom")]
    RuleConclusion,
}

/// A hypothetical premise `P => p`: derive `p` under extra hypotheses `P`.
/// `p` must be a labelled atom unless `P` is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicSequent {
    premises: BTreeSet<BasicSentence>,
    head: BasicSentence,
}

impl BasicSequent {
    pub fn new(
        premises: impl IntoIterator<Item = BasicSentence>,
        head: BasicSentence,
    ) -> Result<Self, RuleShapeError> {
        let premises: BTreeSet<BasicSentence> = premises.into_iter().collect();
        if !premises.is_empty() && !head.is_atom() {
            return Err(RuleShapeError::SequentHead);
        }
        Ok(BasicSequent { premises, head })
    }

    /// A premise-free sequent.
    pub fn fact(head: BasicSentence) -> Self {
        BasicSequent { premises: BTreeSet::new(), head }
    }

    pub fn premises(&self) -> &BTreeSet<BasicSentence> {
        &self.premises
    }

    pub fn head(&self) -> &BasicSentence {
        &self.head
    }
}

/// An atomic rule `(P1 => p1, ..., Pn => pn) => r`. The conclusion must be
/// a labelled atom unless the antecedent set is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicRule {
    antecedents: BTreeSet<BasicSequent>,
    conclusion: BasicSentence,
}

impl BasicRule {
    pub fn new(
        antecedents: impl IntoIterator<Item = BasicSequent>,
        conclusion: BasicSentence,
    ) -> Result<Self, RuleShapeError> {
        let antecedents: BTreeSet<BasicSequent> = antecedents.into_iter().collect();
        if !antecedents.is_empty() && !conclusion.is_atom() {
            return Err(RuleShapeError::RuleConclusion);
        }
        Ok(BasicRule { antecedents, conclusion })
    }

    /// An antecedent-free rule `=> r`.
    pub fn axiom(conclusion: BasicSentence) -> Self {
        BasicRule { antecedents: BTreeSet::new(), conclusion }
    }

    pub fn antecedents(&self) -> &BTreeSet<BasicSequent> {
        &self.antecedents
    }

    pub fn conclusion(&self) -> &BasicSentence {
        &self.conclusion
    }
}

/// A label metavariable, written `?y`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetaVar(String);

impl MetaVar {
    pub fn new(name: impl Into<String>) -> Self {
        MetaVar(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

/// A label position in a template: concrete or a metavariable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelTerm {
    Label(Label),
    Meta(MetaVar),
}

impl LabelTerm {
    fn subst(&self, assign: &[(MetaVar, Label)]) -> Option<Label> {
        match self {
            LabelTerm::Label(l) => Some(l.clone()),
            LabelTerm::Meta(m) => {
                assign.iter().find(|(v, _)| v == m).map(|(_, l)| l.clone())
            }
        }
    }

    fn meta(&self) -> Option<&MetaVar> {
        match self {
            LabelTerm::Meta(m) => Some(m),
            LabelTerm::Label(_) => None,
        }
    }
}

impl From<Label> for LabelTerm {
    fn from(l: Label) -> Self {
        LabelTerm::Label(l)
    }
}

impl From<MetaVar> for LabelTerm {
    fn from(m: MetaVar) -> Self {
        LabelTerm::Meta(m)
    }
}

/// An atom-name position: concrete, or the flat-relational name `r_<l>`
/// computed from a label metavariable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomTerm {
    Atom(Atom),
    RelName(MetaVar),
}

/// A basic sentence with metavariable positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SentenceTemplate {
    Atom { name: AtomTerm, label: LabelTerm },
    Rel { from: LabelTerm, to: LabelTerm },
}

impl SentenceTemplate {
    pub fn ground(s: &BasicSentence) -> Self {
        match s {
            BasicSentence::Atom(a, l) => SentenceTemplate::Atom {
                name: AtomTerm::Atom(a.clone()),
                label: LabelTerm::Label(l.clone()),
            },
            BasicSentence::Rel(r) => SentenceTemplate::Rel {
                from: LabelTerm::Label(r.from.clone()),
                to: LabelTerm::Label(r.to.clone()),
            },
        }
    }

    fn subst(&self, assign: &[(MetaVar, Label)]) -> Option<BasicSentence> {
        Some(match self {
            SentenceTemplate::Atom { name, label } => {
                let name = match name {
                    AtomTerm::Atom(a) => a.clone(),
                    AtomTerm::RelName(m) => {
                        let l = LabelTerm::Meta(m.clone()).subst(assign)?;
                        rel_flat_atom(&l)
                    }
                };
                BasicSentence::Atom(name, label.subst(assign)?)
            }
            SentenceTemplate::Rel { from, to } => BasicSentence::Rel(RelAssumption {
                from: from.subst(assign)?,
                to: to.subst(assign)?,
            }),
        })
    }

    fn collect_metas(&self, out: &mut Vec<MetaVar>) {
        let mut push = |m: Option<&MetaVar>| {
            if let Some(m) = m {
                if !out.contains(m) {
                    out.push(m.clone());
                }
            }
        };
        match self {
            SentenceTemplate::Atom { name, label } => {
                if let AtomTerm::RelName(m) = name {
                    push(Some(m));
                }
                push(label.meta());
            }
            SentenceTemplate::Rel { from, to } => {
                push(from.meta());
                push(to.meta());
            }
        }
    }

    /// Extends `assign` so that the template instantiates to `target`;
    /// fails on clash.
    fn match_against(
        &self,
        target: &BasicSentence,
        assign: &mut Vec<(MetaVar, Label)>,
    ) -> bool {
        fn bind(t: &LabelTerm, l: &Label, assign: &mut Vec<(MetaVar, Label)>) -> bool {
            match t {
                LabelTerm::Label(t) => t == l,
                LabelTerm::Meta(m) => match assign.iter().find(|(v, _)| v == m) {
                    Some((_, bound)) => bound == l,
                    None => {
                        assign.push((m.clone(), l.clone()));
                        true
                    }
                },
            }
        }
        match (self, target) {
            (SentenceTemplate::Atom { name, label }, BasicSentence::Atom(a, l)) => {
                let name_ok = match name {
                    AtomTerm::Atom(n) => n == a,
                    AtomTerm::RelName(m) => match rel_flat_from(a) {
                        Some(src) => bind(&LabelTerm::Meta(m.clone()), &src, assign),
                        None => false,
                    },
                };
                name_ok && bind(label, l, assign)
            }
            (SentenceTemplate::Rel { from, to }, BasicSentence::Rel(r)) => {
                bind(from, &r.from, assign) && bind(to, &r.to, assign)
            }
            _ => false,
        }
    }
}

/// A disequality constraint `?m != t` on instantiations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Disequality {
    pub meta: MetaVar,
    pub other: LabelTerm,
}

/// A template sequent `P => p` over metavariables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequentTemplate {
    pub premises: BTreeSet<SentenceTemplate>,
    pub head: SentenceTemplate,
}

/// A rule family: a basic rule over labels and label metavariables, with
/// disequality constraints. Every constraint-satisfying ground instance is
/// a member of the family.
///
/// Metavariables listed in `fresh_metas` are eigenlabels: at use sites they
/// must additionally avoid every label in play (the caller supplies the
/// avoid set), mirroring the freshness side conditions of the deduction
/// rules the family simulates. [`SchematicRule::instantiate`] ignores them;
/// goal-directed instance selection enforces them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchematicRule {
    pub antecedents: BTreeSet<SequentTemplate>,
    pub conclusion: SentenceTemplate,
    pub constraints: Vec<Disequality>,
    pub fresh_metas: Vec<MetaVar>,
}

impl SchematicRule {
    /// The metavariables of the template in first-occurrence order
    /// (conclusion first, then antecedents).
    pub fn metavars(&self) -> Vec<MetaVar> {
        let mut out = Vec::new();
        self.conclusion.collect_metas(&mut out);
        for ant in &self.antecedents {
            ant.head.collect_metas(&mut out);
            for p in &ant.premises {
                p.collect_metas(&mut out);
            }
        }
        out
    }

    fn constraints_ok(&self, assign: &[(MetaVar, Label)]) -> bool {
        self.constraints.iter().all(|d| {
            let lhs = LabelTerm::Meta(d.meta.clone()).subst(assign);
            let rhs = d.other.subst(assign);
            match (lhs, rhs) {
                (Some(a), Some(b)) => a != b,
                // Unbound positions cannot witness a violation.
                _ => true,
            }
        })
    }

    fn build(&self, assign: &[(MetaVar, Label)]) -> Option<BasicRule> {
        let conclusion = self.conclusion.subst(assign)?;
        let mut antecedents = Vec::new();
        for ant in &self.antecedents {
            let head = ant.head.subst(assign)?;
            let premises = ant
                .premises
                .iter()
                .map(|p| p.subst(assign))
                .collect::<Option<Vec<_>>>()?;
            antecedents.push(BasicSequent::new(premises, head).ok()?);
        }
        BasicRule::new(antecedents, conclusion).ok()
    }

    /// The single rule denoted by a template without metavariables.
    pub fn build_ground(&self) -> Option<BasicRule> {
        if self.metavars().is_empty() {
            self.build(&[])
        } else {
            None
        }
    }

    /// All ground instances with metavariables drawn from `pool` that
    /// satisfy the disequality constraints.
    pub fn instantiate(&self, pool: &BTreeSet<Label>) -> BTreeSet<BasicRule> {
        let metas = self.metavars();
        let mut out = BTreeSet::new();
        let mut assign: Vec<(MetaVar, Label)> = Vec::with_capacity(metas.len());
        self.enumerate(&metas, pool, &mut assign, &mut |rule, _| {
            out.insert(rule);
        });
        out
    }

    fn enumerate(
        &self,
        remaining: &[MetaVar],
        pool: &BTreeSet<Label>,
        assign: &mut Vec<(MetaVar, Label)>,
        emit: &mut dyn FnMut(BasicRule, &[(MetaVar, Label)]),
    ) {
        match remaining.split_first() {
            None => {
                if self.constraints_ok(assign) {
                    if let Some(rule) = self.build(assign) {
                        emit(rule, assign);
                    }
                }
            }
            Some((m, rest)) => {
                for l in pool {
                    assign.push((m.clone(), l.clone()));
                    if self.constraints_ok(assign) {
                        self.enumerate(rest, pool, assign, emit);
                    }
                    assign.pop();
                }
            }
        }
    }

    /// Instances whose conclusion equals `goal`, with unbound metavariables
    /// drawn from `pool`. Assignments sending a fresh metavariable into
    /// `avoid` are skipped.
    pub fn instances_concluding(
        &self,
        goal: &BasicSentence,
        pool: &BTreeSet<Label>,
        avoid: &BTreeSet<Label>,
    ) -> Vec<BasicRule> {
        let mut assign = Vec::new();
        if !self.conclusion.match_against(goal, &mut assign) || !self.constraints_ok(&assign) {
            return Vec::new();
        }
        let remaining: Vec<MetaVar> = self
            .metavars()
            .into_iter()
            .filter(|m| !assign.iter().any(|(v, _)| v == m))
            .collect();
        let mut out = Vec::new();
        self.enumerate(&remaining, pool, &mut assign, &mut |rule, assign| {
            if self
                .fresh_metas
                .iter()
                .all(|m| assign.iter().find(|(v, _)| v == m).is_none_or(|(_, l)| !avoid.contains(l)))
            {
                out.push(rule);
            }
        });
        out.sort();
        out.dedup();
        out
    }
}

/// A set of basic rules, ground and schematic. Extension is by inclusion
/// of ground rules and denoted instances.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base {
    ground: BTreeSet<BasicRule>,
    schematic: BTreeSet<SchematicRule>,
}

impl Base {
    pub fn empty() -> Self {
        Base::default()
    }

    pub fn from_rules(rules: impl IntoIterator<Item = BasicRule>) -> Self {
        Base { ground: rules.into_iter().collect(), schematic: BTreeSet::new() }
    }

    pub fn ground(&self) -> &BTreeSet<BasicRule> {
        &self.ground
    }

    pub fn schematic(&self) -> &BTreeSet<SchematicRule> {
        &self.schematic
    }

    pub fn insert(&mut self, rule: BasicRule) {
        self.ground.insert(rule);
    }

    pub fn insert_schematic(&mut self, rule: SchematicRule) {
        self.schematic.insert(rule);
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty() && self.schematic.is_empty()
    }

    /// Union with a set of ground rules; the result extends `self`.
    pub fn extend(&self, more: impl IntoIterator<Item = BasicRule>) -> Base {
        let mut out = self.clone();
        out.ground.extend(more);
        out
    }

    /// Union of two bases.
    pub fn union(&self, other: &Base) -> Base {
        let mut out = self.clone();
        out.ground.extend(other.ground.iter().cloned());
        out.schematic.extend(other.schematic.iter().cloned());
        out
    }

    /// Extension ordering: every rule of `self` is a rule of `other`.
    pub fn is_subbase_of(&self, other: &Base) -> bool {
        self.ground.is_subset(&other.ground) && self.schematic.is_subset(&other.schematic)
    }

    /// Membership of a ground rule: listed, or an instance of a schematic
    /// rule (witnessed by some assignment over the labels occurring in it).
    /// Fresh-metavariable side conditions are not checked here; see
    /// [`Base::contains_rule_at`].
    pub fn contains_rule(&self, rule: &BasicRule) -> bool {
        self.contains_rule_at(rule, &BTreeSet::new())
    }

    /// Membership at a use site: `avoid` carries the labels in play there,
    /// which fresh metavariables must not hit.
    pub fn contains_rule_at(&self, rule: &BasicRule, avoid: &BTreeSet<Label>) -> bool {
        if self.ground.contains(rule) {
            return true;
        }
        let mut labels: BTreeSet<Label> = BTreeSet::new();
        collect_rule_labels(rule, &mut labels);
        self.schematic
            .iter()
            .any(|s| s.instances_concluding(rule.conclusion(), &labels, avoid).contains(rule))
    }

    /// All rule instances concluding `goal`; schematic instances are drawn
    /// from `pool` plus the labels of `goal`, with fresh metavariables
    /// avoiding `avoid`.
    pub fn rules_concluding(
        &self,
        goal: &BasicSentence,
        pool: &BTreeSet<Label>,
        avoid: &BTreeSet<Label>,
    ) -> Vec<BasicRule> {
        let mut out: Vec<BasicRule> = self
            .ground
            .iter()
            .filter(|r| r.conclusion() == goal)
            .cloned()
            .collect();
        for s in &self.schematic {
            out.extend(s.instances_concluding(goal, pool, avoid));
        }
        out.sort();
        out.dedup();
        out
    }

    /// All labels mentioned by ground rules and by concrete positions of
    /// schematic rules.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for r in &self.ground {
            collect_rule_labels(r, &mut out);
        }
        for s in &self.schematic {
            let mut visit = |t: &SentenceTemplate| match t {
                SentenceTemplate::Atom { name, label } => {
                    if let AtomTerm::Atom(a) = name {
                        if let Some(src) = rel_flat_from(a) {
                            out.insert(src);
                        }
                    }
                    if let LabelTerm::Label(l) = label {
                        out.insert(l.clone());
                    }
                }
                SentenceTemplate::Rel { from, to } => {
                    for t in [from, to] {
                        if let LabelTerm::Label(l) = t {
                            out.insert(l.clone());
                        }
                    }
                }
            };
            visit(&s.conclusion);
            for ant in &s.antecedents {
                visit(&ant.head);
                for p in &ant.premises {
                    visit(p);
                }
            }
        }
        out
    }
}

fn collect_rule_labels(rule: &BasicRule, out: &mut BTreeSet<Label>) {
    let mut visit = |s: &BasicSentence| {
        out.extend(s.labels().into_iter().cloned());
    };
    visit(rule.conclusion());
    for ant in rule.antecedents() {
        visit(ant.head());
        for p in ant.premises() {
            visit(p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool(names: &[&str]) -> BTreeSet<Label> {
        names.iter().map(|n| Label::new(*n)).collect()
    }

    #[test]
    fn rule_shape_invariants() {
        let p = BasicSentence::atom("p", "x");
        let rel = BasicSentence::rel("x", "y");
        assert!(BasicSequent::new([p.clone()], rel.clone()).is_err());
        assert!(BasicSequent::new([], rel.clone()).is_ok());
        let ant = BasicSequent::fact(p.clone());
        assert!(BasicRule::new([ant.clone()], rel.clone()).is_err());
        assert!(BasicRule::new([ant], p).is_ok());
        assert!(BasicRule::axiom(rel).antecedents().is_empty());
    }

    #[test]
    fn extend_is_union() {
        let b = Base::empty();
        let axiom = BasicRule::axiom(BasicSentence::atom("p", "x"));
        let b1 = b.extend([axiom.clone()]);
        assert_eq!(b1.ground().len(), 1);
        assert_eq!(b1.extend([]), b1);
        let r2 = BasicRule::axiom(BasicSentence::atom("q", "y"));
        assert_eq!(
            b.extend([axiom.clone()]).extend([r2.clone()]),
            b.extend([axiom, r2])
        );
    }

    #[test]
    fn instantiate_filters_constraints() {
        // (=> p@?y) with ?y != x over pool {x, y}: only y remains.
        let m = MetaVar::new("y");
        let rule = SchematicRule {
            antecedents: BTreeSet::new(),
            conclusion: SentenceTemplate::Atom {
                name: AtomTerm::Atom(Atom::new("p")),
                label: LabelTerm::Meta(m.clone()),
            },
            constraints: vec![Disequality {
                meta: m,
                other: LabelTerm::Label(Label::new("x")),
            }],
            fresh_metas: vec![],
        };
        let instances = rule.instantiate(&pool(&["x", "y"]));
        assert_eq!(
            instances,
            [BasicRule::axiom(BasicSentence::atom("p", "y"))].into_iter().collect()
        );
    }

    #[test]
    fn instantiate_empty_pool() {
        let rule = SchematicRule {
            antecedents: BTreeSet::new(),
            conclusion: SentenceTemplate::Atom {
                name: AtomTerm::Atom(Atom::new("p")),
                label: LabelTerm::Meta(MetaVar::new("y")),
            },
            constraints: vec![],
            fresh_metas: vec![],
        };
        assert!(rule.instantiate(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn rel_name_templates_instantiate() {
        // ({r_?z@?y} => p@?y) over pool {x}: name becomes r_x.
        let z = MetaVar::new("z");
        let y = MetaVar::new("y");
        let rule = SchematicRule {
            antecedents: [SequentTemplate {
                premises: [SentenceTemplate::Atom {
                    name: AtomTerm::RelName(z.clone()),
                    label: LabelTerm::Meta(y.clone()),
                }]
                .into_iter()
                .collect(),
                head: SentenceTemplate::Atom {
                    name: AtomTerm::Atom(Atom::new("p")),
                    label: LabelTerm::Meta(y.clone()),
                },
            }]
            .into_iter()
            .collect(),
            conclusion: SentenceTemplate::Atom {
                name: AtomTerm::Atom(Atom::new("p")),
                label: LabelTerm::Meta(y),
            },
            constraints: vec![],
            fresh_metas: vec![],
        };
        let instances = rule.instantiate(&pool(&["x"]));
        assert_eq!(instances.len(), 1);
        let inst = instances.first().unwrap();
        let ant = inst.antecedents().first().unwrap();
        assert_eq!(
            ant.premises().first().unwrap(),
            &BasicSentence::Atom(rel_flat_atom(&Label::new("x")), Label::new("x"))
        );
    }

    #[test]
    fn schematic_membership() {
        let m = MetaVar::new("y");
        let mut base = Base::empty();
        base.insert_schematic(SchematicRule {
            antecedents: BTreeSet::new(),
            conclusion: SentenceTemplate::Atom {
                name: AtomTerm::Atom(Atom::new("p")),
                label: LabelTerm::Meta(m.clone()),
            },
            constraints: vec![Disequality {
                meta: m,
                other: LabelTerm::Label(Label::new("x")),
            }],
            fresh_metas: vec![],
        });
        assert!(base.contains_rule(&BasicRule::axiom(BasicSentence::atom("p", "z"))));
        assert!(!base.contains_rule(&BasicRule::axiom(BasicSentence::atom("p", "x"))));
        assert!(!base.contains_rule(&BasicRule::axiom(BasicSentence::atom("q", "z"))));
    }
}
