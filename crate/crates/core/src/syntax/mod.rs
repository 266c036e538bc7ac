//! Core syntax: labels, atoms, modal formulae, labelled formulae, relational
//! assumptions, sequents, and frame-condition sets.
//!
//! All values are immutable after construction and ordered deterministically,
//! so they can be used directly as keys in canonical (sorted) collections.

mod print;
pub mod parse;
pub mod xi;

use std::collections::BTreeSet;
use std::fmt;

/// A label, i.e. an element of the countable label universe.
///
/// Labels of the form `w0, w1, ...` are reserved for fresh-label generation
/// and are rejected by the parser as user input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// True for members of the reserved fresh sequence `w0, w1, ...`.
    pub fn is_reserved(&self) -> bool {
        is_reserved_indexed(&self.0, 'w')
    }
}

/// A propositional atom. Disjoint namespace from [`Label`].
///
/// Atoms of the form `f0, f1, ...` are reserved for the flattening map, as
/// are `top`, `bot`, and any name containing `_` (used for flat images of
/// relational assumptions); none of these are accepted by the parser.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// True for names the parser refuses as user atoms.
    pub fn is_reserved(&self) -> bool {
        is_reserved_indexed(&self.0, 'f')
            || self.0 == "top"
            || self.0 == "bot"
            || self.0.contains('_')
    }
}

fn is_reserved_indexed(name: &str, prefix: char) -> bool {
    let mut chars = name.chars();
    chars.next() == Some(prefix)
        && name.len() > 1
        && chars.all(|c| c.is_ascii_digit())
}

/// Returns the first label of the reserved sequence `w0, w1, ...` that does
/// not occur in `avoid`.
pub fn fresh_label(avoid: &BTreeSet<Label>) -> Label {
    (0..)
        .map(|k| Label(format!("w{k}")))
        .find(|l| !avoid.contains(l))
        .unwrap()
}

/// Returns `n` pairwise-distinct fresh labels, none of which occur in `avoid`.
pub fn fresh_labels(avoid: &BTreeSet<Label>, n: usize) -> Vec<Label> {
    let mut avoid = avoid.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let l = fresh_label(&avoid);
        avoid.insert(l.clone());
        out.push(l);
    }
    out
}

/// Returns the first atom of the reserved sequence `f0, f1, ...` that does
/// not occur in `avoid`.
pub fn fresh_atom(avoid: &BTreeSet<Atom>) -> Atom {
    (0..)
        .map(|k| Atom(format!("f{k}")))
        .find(|a| !avoid.contains(a))
        .unwrap()
}

/// A propositional modal formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(Atom::new(name))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(l.into(), r.into())
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(l.into(), r.into())
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(l.into(), r.into())
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(f.into())
    }

    pub fn dia(f: Formula) -> Self {
        Formula::Dia(f.into())
    }

    pub fn at(self, label: impl Into<String>) -> LabelledFormula {
        LabelledFormula { formula: self, label: Label::new(label) }
    }

    /// Number of connectives on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                1 + l.depth().max(r.depth())
            }
            Formula::Box(f) | Formula::Dia(f) => 1 + f.depth(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Formula::Box(f) | Formula::Dia(f) => f.collect_atoms(out),
        }
    }
}

/// A formula paired with the label at which it is asserted, written `phi@x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelledFormula {
    pub formula: Formula,
    pub label: Label,
}

/// An ordered pair of labels, written `x R y`. Non-logical: it carries no
/// connective structure and is never symmetric unless `from == to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelAssumption {
    pub from: Label,
    pub to: Label,
}

impl RelAssumption {
    pub fn new(from: impl Into<String>, to: impl Into<String>) -> Self {
        RelAssumption { from: Label::new(from), to: Label::new(to) }
    }

    pub fn labels(&self) -> [&Label; 2] {
        [&self.from, &self.to]
    }
}

/// Either a labelled formula or a relational assumption: the items allowed
/// in extended contexts and as proof assumptions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContextItem {
    Formula(LabelledFormula),
    Rel(RelAssumption),
}

impl ContextItem {
    pub fn labels(&self) -> Vec<&Label> {
        match self {
            ContextItem::Formula(lf) => vec![&lf.label],
            ContextItem::Rel(r) => vec![&r.from, &r.to],
        }
    }

    pub fn as_formula(&self) -> Option<&LabelledFormula> {
        match self {
            ContextItem::Formula(lf) => Some(lf),
            ContextItem::Rel(_) => None,
        }
    }

    pub fn as_rel(&self) -> Option<&RelAssumption> {
        match self {
            ContextItem::Rel(r) => Some(r),
            ContextItem::Formula(_) => None,
        }
    }
}

impl From<LabelledFormula> for ContextItem {
    fn from(lf: LabelledFormula) -> Self {
        ContextItem::Formula(lf)
    }
}

impl From<RelAssumption> for ContextItem {
    fn from(r: RelAssumption) -> Self {
        ContextItem::Rel(r)
    }
}

/// A sequent `(Gamma : phi@x)` with a context of labelled formulae.
/// Contexts have set semantics: duplicates collapse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub context: BTreeSet<LabelledFormula>,
    pub goal: LabelledFormula,
}

impl Sequent {
    pub fn new(context: impl IntoIterator<Item = LabelledFormula>, goal: LabelledFormula) -> Self {
        Sequent { context: context.into_iter().collect(), goal }
    }

    pub fn theorem(goal: LabelledFormula) -> Self {
        Sequent { context: BTreeSet::new(), goal }
    }

    /// All labels occurring in the sequent.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.context
            .iter()
            .map(|lf| lf.label.clone())
            .chain(std::iter::once(self.goal.label.clone()))
            .collect()
    }

    /// All atoms occurring in the sequent.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.goal.formula.atoms();
        for lf in &self.context {
            out.extend(lf.formula.atoms());
        }
        out
    }
}

/// A sequent whose context may mix formulae and relational assumptions and
/// whose goal may be a relational assumption when the context is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedSequent {
    context: BTreeSet<ContextItem>,
    goal: ContextItem,
}

/// Error for extended sequents with a relational goal under a nonempty context.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("relational goal with nonempty context")]
pub struct RelationalGoalError;

impl ExtendedSequent {
    pub fn new(
        context: impl IntoIterator<Item = ContextItem>,
        goal: ContextItem,
    ) -> Result<Self, RelationalGoalError> {
        let context: BTreeSet<ContextItem> = context.into_iter().collect();
        if matches!(goal, ContextItem::Rel(_)) && !context.is_empty() {
            return Err(RelationalGoalError);
        }
        Ok(ExtendedSequent { context, goal })
    }

    pub fn goal_only(goal: ContextItem) -> Self {
        ExtendedSequent { context: BTreeSet::new(), goal }
    }

    pub fn context(&self) -> &BTreeSet<ContextItem> {
        &self.context
    }

    pub fn goal(&self) -> &ContextItem {
        &self.goal
    }
}

impl From<Sequent> for ExtendedSequent {
    fn from(seq: Sequent) -> Self {
        ExtendedSequent {
            context: seq.context.into_iter().map(ContextItem::Formula).collect(),
            goal: ContextItem::Formula(seq.goal),
        }
    }
}

/// One of the six frame conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameCondition {
    D,
    T,
    B,
    Four,
    Five,
    Two,
}

impl FrameCondition {
    pub const ALL: [FrameCondition; 6] = [
        FrameCondition::D,
        FrameCondition::T,
        FrameCondition::B,
        FrameCondition::Four,
        FrameCondition::Five,
        FrameCondition::Two,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FrameCondition::D => "D",
            FrameCondition::T => "T",
            FrameCondition::B => "B",
            FrameCondition::Four => "4",
            FrameCondition::Five => "5",
            FrameCondition::Two => "2",
        }
    }
}

/// A set of frame conditions; the empty set selects the base logic.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrameSpec(BTreeSet<FrameCondition>);

impl FrameSpec {
    pub fn empty() -> Self {
        FrameSpec::default()
    }

    pub fn all() -> Self {
        FrameCondition::ALL.into_iter().collect()
    }

    pub fn has(&self, c: FrameCondition) -> bool {
        self.0.contains(&c)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conditions(&self) -> impl Iterator<Item = FrameCondition> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &FrameSpec) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Parses a comma-separated subset of `{D,T,B,4,5,2}`; whitespace is
    /// ignored and the empty string denotes the empty set.
    pub fn parse(text: &str) -> Result<Self, parse::ParseError> {
        let mut out = BTreeSet::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let c = match tok {
                "D" => FrameCondition::D,
                "T" => FrameCondition::T,
                "B" => FrameCondition::B,
                "4" => FrameCondition::Four,
                "5" => FrameCondition::Five,
                "2" => FrameCondition::Two,
                _ => {
                    return Err(parse::ParseError::new(
                        format!("unknown frame condition `{tok}`"),
                        0,
                    ))
                }
            };
            out.insert(c);
        }
        Ok(FrameSpec(out))
    }
}

impl FromIterator<FrameCondition> for FrameSpec {
    fn from_iter<I: IntoIterator<Item = FrameCondition>>(iter: I) -> Self {
        FrameSpec(iter.into_iter().collect())
    }
}

impl From<FrameCondition> for FrameSpec {
    fn from(c: FrameCondition) -> Self {
        FrameSpec([c].into_iter().collect())
    }
}

impl fmt::Display for FrameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<&str> = FrameCondition::ALL
            .iter()
            .filter(|c| self.has(**c))
            .map(|c| c.token())
            .collect();
        write!(f, "{}", toks.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> BTreeSet<Label> {
        names.iter().map(|n| Label::new(*n)).collect()
    }

    #[test]
    fn fresh_label_skips_avoided() {
        assert_eq!(fresh_label(&labels(&["x", "y"])), Label::new("w0"));
        assert_eq!(fresh_label(&labels(&["x", "w0"])), Label::new("w1"));
        assert_eq!(fresh_label(&BTreeSet::new()), Label::new("w0"));
    }

    #[test]
    fn reserved_namespaces() {
        assert!(Label::new("w0").is_reserved());
        assert!(Label::new("w17").is_reserved());
        assert!(!Label::new("w").is_reserved());
        assert!(!Label::new("world").is_reserved());
        assert!(Atom::new("f3").is_reserved());
        assert!(Atom::new("top").is_reserved());
        assert!(Atom::new("r_x").is_reserved());
        assert!(!Atom::new("fog").is_reserved());
    }

    #[test]
    fn extended_sequent_invariant() {
        let rel = ContextItem::Rel(RelAssumption::new("x", "y"));
        let p = ContextItem::Formula(Formula::atom("p").at("x"));
        assert!(ExtendedSequent::new([], rel.clone()).is_ok());
        assert_eq!(
            ExtendedSequent::new([p], rel),
            Err(RelationalGoalError)
        );
    }

    #[test]
    fn context_items_collapse() {
        let p = Formula::atom("p").at("x");
        let seq = Sequent::new([p.clone(), p.clone()], Formula::atom("q").at("y"));
        assert_eq!(seq.context.len(), 1);
    }
}
