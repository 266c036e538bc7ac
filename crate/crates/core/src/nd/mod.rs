//! Proof objects for the labelled natural deduction systems: tree-shaped
//! proofs with per-premise discharge bookkeeping and eigenlabels, plus the
//! JSON wire format.

pub mod check;
pub mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::syntax::parse::{parse_item, ParseError};
use crate::syntax::{ContextItem, Label, RelAssumption};

/// Rule tags. `Hyp` is the assumption pseudo-rule: a zero-premise leaf
/// whose conclusion may also be a relational assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NdRule {
    Hyp,
    TopI,
    BotE,
    ImpI,
    ImpE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    BoxI,
    BoxE,
    DiaI,
    DiaE,
    RD,
    RT,
    RB,
    R4,
    R5,
    R2,
}

impl fmt::Display for NdRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A graph of labels: the relational backdrop for derivability claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<Label>,
    edges: BTreeSet<RelAssumption>,
}

/// Construction error: empty vertex set or an edge endpoint outside it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph needs a nonempty vertex set")]
    Empty,
    #[error("edge endpoint `{0}` is not a vertex")]
    DanglingEdge(String),
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = RelAssumption>,
    ) -> Result<Self, GraphError> {
        let vertices: BTreeSet<Label> = vertices.into_iter().collect();
        let edges: BTreeSet<RelAssumption> = edges.into_iter().collect();
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        for e in &edges {
            for l in e.labels() {
                if !vertices.contains(l) {
                    return Err(GraphError::DanglingEdge(l.name().to_string()));
                }
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// The one-vertex, edge-free graph used for theoremhood.
    pub fn trivial(label: Label) -> Self {
        Graph { vertices: [label].into(), edges: BTreeSet::new() }
    }

    pub fn vertices(&self) -> &BTreeSet<Label> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<RelAssumption> {
        &self.edges
    }
}

/// A natural deduction proof tree.
///
/// `discharged[i]` lists the assumptions discharged into premise `i`;
/// discharge is optional per item (vacuous discharge is allowed). `eigen`
/// carries the fresh label of the rules that have one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdProof {
    pub rule: NdRule,
    pub conclusion: ContextItem,
    pub premises: Vec<NdProof>,
    pub discharged: Vec<BTreeSet<ContextItem>>,
    pub eigen: Option<Label>,
}

impl NdProof {
    /// An assumption leaf.
    pub fn hyp(conclusion: impl Into<ContextItem>) -> Self {
        NdProof {
            rule: NdRule::Hyp,
            conclusion: conclusion.into(),
            premises: Vec::new(),
            discharged: Vec::new(),
            eigen: None,
        }
    }

    pub fn node(
        rule: NdRule,
        conclusion: impl Into<ContextItem>,
        premises: Vec<NdProof>,
        discharged: Vec<BTreeSet<ContextItem>>,
        eigen: Option<Label>,
    ) -> Self {
        NdProof { rule, conclusion: conclusion.into(), premises, discharged, eigen }
    }

    /// Number of rule applications (assumption leaves are free).
    pub fn size(&self) -> usize {
        let here = usize::from(self.rule != NdRule::Hyp);
        here + self.premises.iter().map(NdProof::size).sum::<usize>()
    }

    /// Leaf assumptions minus everything discharged on the way down.
    pub fn open_assumptions(&self) -> BTreeSet<ContextItem> {
        match self.rule {
            NdRule::Hyp => [self.conclusion.clone()].into(),
            _ => {
                let mut out = BTreeSet::new();
                for (i, premise) in self.premises.iter().enumerate() {
                    let mut open = premise.open_assumptions();
                    if let Some(d) = self.discharged.get(i) {
                        for item in d {
                            open.remove(item);
                        }
                    }
                    out.extend(open);
                }
                out
            }
        }
    }

    /// Every label occurring anywhere in the proof.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<Label>) {
        out.extend(self.conclusion.labels().into_iter().cloned());
        if let Some(e) = &self.eigen {
            out.insert(e.clone());
        }
        for d in &self.discharged {
            for item in d {
                out.extend(item.labels().into_iter().cloned());
            }
        }
        for p in &self.premises {
            p.collect_labels(out);
        }
    }

    /// Renames a label everywhere in the proof (conclusions, discharges,
    /// eigenlabels). Labels do not occur inside formulae, so the renaming
    /// is capture-free as long as `to` is fresh for the proof.
    pub fn rename_label(&self, from: &Label, to: &Label) -> NdProof {
        let fix_label = |l: &Label| if l == from { to.clone() } else { l.clone() };
        let fix_item = |item: &ContextItem| match item {
            ContextItem::Formula(lf) => ContextItem::Formula(crate::syntax::LabelledFormula {
                formula: lf.formula.clone(),
                label: fix_label(&lf.label),
            }),
            ContextItem::Rel(r) => ContextItem::Rel(RelAssumption {
                from: fix_label(&r.from),
                to: fix_label(&r.to),
            }),
        };
        NdProof {
            rule: self.rule,
            conclusion: fix_item(&self.conclusion),
            premises: self.premises.iter().map(|p| p.rename_label(from, to)).collect(),
            discharged: self
                .discharged
                .iter()
                .map(|d| d.iter().map(fix_item).collect())
                .collect(),
            eigen: self.eigen.as_ref().map(fix_label),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proofs serialize")
    }

    pub fn from_json(text: &str) -> Result<NdProof, ProofJsonError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Failure to read a proof from JSON.
#[derive(Debug, thiserror::Error)]
pub enum ProofJsonError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Serialize, Deserialize)]
struct ProofDto {
    rule: NdRule,
    conclusion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigen: Option<String>,
    discharged: Vec<Vec<String>>,
    premises: Vec<ProofDto>,
}

impl From<&NdProof> for ProofDto {
    fn from(p: &NdProof) -> Self {
        ProofDto {
            rule: p.rule,
            conclusion: p.conclusion.to_string(),
            eigen: p.eigen.as_ref().map(|l| l.name().to_string()),
            discharged: p
                .discharged
                .iter()
                .map(|d| d.iter().map(ContextItem::to_string).collect())
                .collect(),
            premises: p.premises.iter().map(ProofDto::from).collect(),
        }
    }
}

impl TryFrom<ProofDto> for NdProof {
    type Error = ParseError;

    fn try_from(dto: ProofDto) -> Result<Self, ParseError> {
        Ok(NdProof {
            rule: dto.rule,
            conclusion: parse_item(&dto.conclusion)?,
            eigen: dto.eigen.map(Label::new),
            discharged: dto
                .discharged
                .into_iter()
                .map(|d| d.into_iter().map(|s| parse_item(&s)).collect())
                .collect::<Result<_, _>>()?,
            premises: dto
                .premises
                .into_iter()
                .map(NdProof::try_from)
                .collect::<Result<_, _>>()?,
        })
    }
}

impl Serialize for NdProof {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ProofDto::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NdProof {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = ProofDto::deserialize(deserializer)?;
        NdProof::try_from(dto).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Formula;

    #[test]
    fn open_assumptions_of_leaf() {
        let p = NdProof::hyp(Formula::atom("p").at("x"));
        assert_eq!(
            p.open_assumptions(),
            [ContextItem::Formula(Formula::atom("p").at("x"))].into()
        );
    }

    #[test]
    fn imp_intro_discharges() {
        let p = Formula::atom("p").at("x");
        let proof = NdProof::node(
            NdRule::ImpI,
            Formula::imp(Formula::atom("p"), Formula::atom("p")).at("x"),
            vec![NdProof::hyp(p.clone())],
            vec![[ContextItem::Formula(p)].into()],
            None,
        );
        assert!(proof.open_assumptions().is_empty());
    }

    #[test]
    fn box_elim_keeps_both_assumptions_open() {
        let boxp = Formula::boxed(Formula::atom("p")).at("x");
        let rel = RelAssumption::new("x", "y");
        let proof = NdProof::node(
            NdRule::BoxE,
            Formula::atom("p").at("y"),
            vec![NdProof::hyp(boxp.clone()), NdProof::hyp(rel.clone())],
            vec![BTreeSet::new(), BTreeSet::new()],
            None,
        );
        assert_eq!(
            proof.open_assumptions(),
            [ContextItem::Formula(boxp), ContextItem::Rel(rel)].into()
        );
    }

    #[test]
    fn json_round_trip() {
        let p = Formula::atom("p").at("x");
        let proof = NdProof::node(
            NdRule::ImpI,
            Formula::imp(Formula::atom("p"), Formula::atom("p")).at("x"),
            vec![NdProof::hyp(p.clone())],
            vec![[ContextItem::Formula(p)].into()],
            None,
        );
        let json = proof.to_json();
        let back = NdProof::from_json(&json).unwrap();
        assert_eq!(back, proof);
        assert_eq!(back.to_json(), json);
    }
}
