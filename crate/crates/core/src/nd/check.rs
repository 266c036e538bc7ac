//! Proof checking for the labelled natural deduction systems.
//!
//! A proof is accepted when every node instantiates a rule schema of the
//! base system, or of the frame-rule extension licensed by the active
//! frame conditions; eigenlabel side conditions are checked against the
//! open assumptions remaining at each node; and the root's open
//! assumptions are covered by the claimed context and the graph's edges.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{
    ContextItem, Formula, FrameCondition, FrameSpec, Label, LabelledFormula, RelAssumption,
    Sequent,
};

use super::{Graph, NdProof, NdRule};

/// A rejected proof: the premise path from the root and the violated
/// condition. `malformed` marks shape defects (arity, missing eigenlabel)
/// as opposed to schema or side-condition violations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct NdCheckError {
    pub path: Vec<usize>,
    pub reason: String,
    pub malformed: bool,
}

impl fmt::Display for NdCheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid proof at node {:?}: {}", self.path, self.reason)
    }
}

fn invalid(path: &[usize], reason: impl Into<String>) -> NdCheckError {
    NdCheckError { path: path.to_vec(), reason: reason.into(), malformed: false }
}

fn malformed(path: &[usize], reason: impl Into<String>) -> NdCheckError {
    NdCheckError { path: path.to_vec(), reason: reason.into(), malformed: true }
}

/// Checks `proof` against `claim` relative to a graph and frame conditions.
///
/// The graph's vertex set must contain every label of the claim; its edges
/// act as relational assumptions available at leaves.
pub fn check_nd_proof(
    gamma: &FrameSpec,
    graph: &Graph,
    proof: &NdProof,
    claim: &Sequent,
) -> Result<(), NdCheckError> {
    for label in claim.labels() {
        if !graph.vertices().contains(&label) {
            return Err(invalid(&[], format!("claim label `{}` is not a graph vertex", label.name())));
        }
    }
    let mut path = Vec::new();
    check_node(gamma, proof, &mut path)?;
    if proof.conclusion != ContextItem::Formula(claim.goal.clone()) {
        return Err(invalid(
            &[],
            format!("proof concludes `{}`, claim wants `{}`", proof.conclusion, claim.goal),
        ));
    }
    let allowed: BTreeSet<ContextItem> = claim
        .context
        .iter()
        .cloned()
        .map(ContextItem::Formula)
        .chain(graph.edges().iter().cloned().map(ContextItem::Rel))
        .collect();
    for open in proof.open_assumptions() {
        if !allowed.contains(&open) {
            return Err(invalid(&[], format!("open assumption `{open}` is not in the claim")));
        }
    }
    Ok(())
}

fn formula_conclusion<'p>(
    proof: &'p NdProof,
    path: &[usize],
) -> Result<&'p LabelledFormula, NdCheckError> {
    proof
        .conclusion
        .as_formula()
        .ok_or_else(|| invalid(path, format!("{} must conclude a labelled formula", proof.rule)))
}

fn premise_formula<'p>(
    node: &'p NdProof,
    i: usize,
    path: &[usize],
) -> Result<&'p LabelledFormula, NdCheckError> {
    node.premises[i]
        .conclusion
        .as_formula()
        .ok_or_else(|| invalid(path, format!("premise {i} of {} must be a formula", node.rule)))
}

fn premise_rel<'p>(
    node: &'p NdProof,
    i: usize,
    path: &[usize],
) -> Result<&'p RelAssumption, NdCheckError> {
    node.premises[i]
        .conclusion
        .as_rel()
        .ok_or_else(|| {
            invalid(path, format!("premise {i} of {} must be a relational assumption", node.rule))
        })
}

fn eigen<'p>(node: &'p NdProof, path: &[usize]) -> Result<&'p Label, NdCheckError> {
    node.eigen
        .as_ref()
        .ok_or_else(|| malformed(path, format!("{} needs an eigenlabel", node.rule)))
}

/// The labels of the assumptions still open at this node, after its own
/// discharges.
fn open_labels(node: &NdProof) -> BTreeSet<Label> {
    node.open_assumptions()
        .iter()
        .flat_map(|item| item.labels().into_iter().cloned())
        .collect()
}

fn check_discharge(
    node: &NdProof,
    i: usize,
    allowed: &BTreeSet<ContextItem>,
    path: &[usize],
) -> Result<(), NdCheckError> {
    for item in &node.discharged[i] {
        if !allowed.contains(item) {
            return Err(invalid(
                path,
                format!("{} may not discharge `{item}` into premise {i}", node.rule),
            ));
        }
    }
    Ok(())
}

fn no_discharge(node: &NdProof, path: &[usize]) -> Result<(), NdCheckError> {
    for (i, d) in node.discharged.iter().enumerate() {
        if !d.is_empty() {
            return Err(invalid(path, format!("{} discharges nothing into premise {i}", node.rule)));
        }
    }
    Ok(())
}

fn check_frame_gate(
    gamma: &FrameSpec,
    rule: NdRule,
    path: &[usize],
) -> Result<(), NdCheckError> {
    let needed = match rule {
        NdRule::RD => Some(FrameCondition::D),
        NdRule::RT => Some(FrameCondition::T),
        NdRule::RB => Some(FrameCondition::B),
        NdRule::R4 => Some(FrameCondition::Four),
        NdRule::R5 => Some(FrameCondition::Five),
        NdRule::R2 => Some(FrameCondition::Two),
        _ => None,
    };
    match needed {
        Some(c) if !gamma.has(c) => Err(invalid(
            path,
            format!("{rule} requires frame condition {} which is not active", c.token()),
        )),
        _ => Ok(()),
    }
}

fn check_node(gamma: &FrameSpec, node: &NdProof, path: &mut Vec<usize>) -> Result<(), NdCheckError> {
    let arity: usize = match node.rule {
        NdRule::Hyp | NdRule::TopI => 0,
        NdRule::BotE
        | NdRule::ImpI
        | NdRule::AndE1
        | NdRule::AndE2
        | NdRule::OrI1
        | NdRule::OrI2
        | NdRule::BoxI
        | NdRule::RD
        | NdRule::RT => 1,
        NdRule::ImpE | NdRule::AndI | NdRule::BoxE | NdRule::DiaI | NdRule::DiaE | NdRule::RB => 2,
        NdRule::OrE | NdRule::R4 | NdRule::R5 | NdRule::R2 => 3,
    };
    if node.premises.len() != arity {
        return Err(malformed(
            path,
            format!("{} expects {arity} premises, found {}", node.rule, node.premises.len()),
        ));
    }
    if node.discharged.len() != node.premises.len() {
        return Err(malformed(
            path,
            format!(
                "{} has {} discharge slots for {} premises",
                node.rule,
                node.discharged.len(),
                node.premises.len()
            ),
        ));
    }
    check_frame_gate(gamma, node.rule, path)?;
    // Only assumption leaves may stand for relational assumptions.
    if node.rule != NdRule::Hyp && node.conclusion.as_rel().is_some() {
        return Err(invalid(path, format!("{} cannot conclude a relational assumption", node.rule)));
    }

    match node.rule {
        NdRule::Hyp => {
            if node.eigen.is_some() {
                return Err(malformed(path, "assumption leaves carry no eigenlabel"));
            }
        }
        NdRule::TopI => {
            let c = formula_conclusion(node, path)?;
            if c.formula != Formula::Top {
                return Err(invalid(path, "TopI concludes top"));
            }
        }
        NdRule::BotE => {
            let p = premise_formula(node, 0, path)?;
            formula_conclusion(node, path)?;
            if p.formula != Formula::Bot {
                return Err(invalid(path, "BotE eliminates bot"));
            }
            no_discharge(node, path)?;
        }
        NdRule::ImpI => {
            let c = formula_conclusion(node, path)?;
            let Formula::Imp(l, r) = &c.formula else {
                return Err(invalid(path, "ImpI concludes an implication"));
            };
            let p = premise_formula(node, 0, path)?;
            if p.formula != **r || p.label != c.label {
                return Err(invalid(path, "ImpI premise must be the consequent at the same label"));
            }
            let antecedent =
                ContextItem::Formula(LabelledFormula { formula: (**l).clone(), label: c.label.clone() });
            check_discharge(node, 0, &[antecedent].into(), path)?;
        }
        NdRule::ImpE => {
            let c = formula_conclusion(node, path)?;
            let major = premise_formula(node, 0, path)?;
            let minor = premise_formula(node, 1, path)?;
            let Formula::Imp(l, r) = &major.formula else {
                return Err(invalid(path, "ImpE eliminates an implication"));
            };
            if **l != minor.formula
                || **r != c.formula
                || major.label != c.label
                || minor.label != c.label
            {
                return Err(invalid(path, "ImpE premises do not fit the conclusion"));
            }
            no_discharge(node, path)?;
        }
        NdRule::AndI => {
            let c = formula_conclusion(node, path)?;
            let Formula::And(l, r) = &c.formula else {
                return Err(invalid(path, "AndI concludes a conjunction"));
            };
            let p0 = premise_formula(node, 0, path)?;
            let p1 = premise_formula(node, 1, path)?;
            if p0.formula != **l || p1.formula != **r || p0.label != c.label || p1.label != c.label
            {
                return Err(invalid(path, "AndI premises do not fit the conclusion"));
            }
            no_discharge(node, path)?;
        }
        NdRule::AndE1 | NdRule::AndE2 => {
            let c = formula_conclusion(node, path)?;
            let p = premise_formula(node, 0, path)?;
            let Formula::And(l, r) = &p.formula else {
                return Err(invalid(path, "And elimination needs a conjunction premise"));
            };
            let want = if node.rule == NdRule::AndE1 { l } else { r };
            if **want != c.formula || p.label != c.label {
                return Err(invalid(path, "And elimination does not fit the conclusion"));
            }
            no_discharge(node, path)?;
        }
        NdRule::OrI1 | NdRule::OrI2 => {
            let c = formula_conclusion(node, path)?;
            let Formula::Or(l, r) = &c.formula else {
                return Err(invalid(path, "Or introduction concludes a disjunction"));
            };
            let p = premise_formula(node, 0, path)?;
            let want = if node.rule == NdRule::OrI1 { l } else { r };
            if **want != p.formula || p.label != c.label {
                return Err(invalid(path, "Or introduction premise does not fit"));
            }
            no_discharge(node, path)?;
        }
        NdRule::OrE => {
            let c = formula_conclusion(node, path)?;
            let major = premise_formula(node, 0, path)?;
            let Formula::Or(l, r) = &major.formula else {
                return Err(invalid(path, "OrE eliminates a disjunction"));
            };
            for i in [1, 2] {
                let p = premise_formula(node, i, path)?;
                if p != c {
                    return Err(invalid(path, "OrE minor premises must match the conclusion"));
                }
            }
            let left = ContextItem::Formula(LabelledFormula {
                formula: (**l).clone(),
                label: major.label.clone(),
            });
            let right = ContextItem::Formula(LabelledFormula {
                formula: (**r).clone(),
                label: major.label.clone(),
            });
            check_discharge(node, 0, &BTreeSet::new(), path)?;
            check_discharge(node, 1, &[left].into(), path)?;
            check_discharge(node, 2, &[right].into(), path)?;
        }
        NdRule::BoxI => {
            let c = formula_conclusion(node, path)?;
            let Formula::Box(body) = &c.formula else {
                return Err(invalid(path, "BoxI concludes a box"));
            };
            let y = eigen(node, path)?.clone();
            let p = premise_formula(node, 0, path)?;
            if p.formula != **body || p.label != y {
                return Err(invalid(path, "BoxI premise must be the body at the eigenlabel"));
            }
            let rel = ContextItem::Rel(RelAssumption { from: c.label.clone(), to: y.clone() });
            check_discharge(node, 0, &[rel].into(), path)?;
            if y == c.label {
                return Err(invalid(path, "BoxI eigenlabel must differ from the conclusion label"));
            }
            if open_labels(node).contains(&y) {
                return Err(invalid(path, "BoxI eigenlabel occurs in an open assumption"));
            }
        }
        NdRule::BoxE => {
            let c = formula_conclusion(node, path)?;
            let major = premise_formula(node, 0, path)?;
            let rel = premise_rel(node, 1, path)?;
            let Formula::Box(body) = &major.formula else {
                return Err(invalid(path, "BoxE eliminates a box"));
            };
            if **body != c.formula || rel.from != major.label || rel.to != c.label {
                return Err(invalid(path, "BoxE premises do not fit the conclusion"));
            }
            no_discharge(node, path)?;
        }
        NdRule::DiaI => {
            let c = formula_conclusion(node, path)?;
            let Formula::Dia(body) = &c.formula else {
                return Err(invalid(path, "DiaI concludes a diamond"));
            };
            let p = premise_formula(node, 0, path)?;
            let rel = premise_rel(node, 1, path)?;
            if p.formula != **body || rel.from != c.label || rel.to != p.label {
                return Err(invalid(path, "DiaI premises do not fit the conclusion"));
            }
            no_discharge(node, path)?;
        }
        NdRule::DiaE => {
            let c = formula_conclusion(node, path)?;
            let major = premise_formula(node, 0, path)?;
            let minor = premise_formula(node, 1, path)?;
            let Formula::Dia(body) = &major.formula else {
                return Err(invalid(path, "DiaE eliminates a diamond"));
            };
            if minor != c {
                return Err(invalid(path, "DiaE minor premise must match the conclusion"));
            }
            let y = eigen(node, path)?.clone();
            let body_item = ContextItem::Formula(LabelledFormula {
                formula: (**body).clone(),
                label: y.clone(),
            });
            let rel_item =
                ContextItem::Rel(RelAssumption { from: major.label.clone(), to: y.clone() });
            check_discharge(node, 0, &BTreeSet::new(), path)?;
            check_discharge(node, 1, &[body_item, rel_item].into(), path)?;
            if y == major.label || y == c.label {
                return Err(invalid(path, "DiaE eigenlabel must differ from the rule's labels"));
            }
            if open_labels(node).contains(&y) {
                return Err(invalid(path, "DiaE eigenlabel occurs in an open assumption"));
            }
        }
        NdRule::RD => {
            let c = formula_conclusion(node, path)?;
            let p = premise_formula(node, 0, path)?;
            if p != c {
                return Err(invalid(path, "RD premise must match the conclusion"));
            }
            let y = eigen(node, path)?.clone();
            let d = &node.discharged[0];
            if d.len() > 1 {
                return Err(invalid(path, "RD discharges a single relational assumption"));
            }
            if let Some(item) = d.first() {
                let Some(rel) = item.as_rel() else {
                    return Err(invalid(path, "RD discharges a relational assumption"));
                };
                if rel.to != y {
                    return Err(invalid(path, "RD discharge must target the eigenlabel"));
                }
                if rel.from == y {
                    return Err(invalid(path, "RD eigenlabel must differ from the edge source"));
                }
            }
            if open_labels(node).contains(&y) {
                return Err(invalid(path, "RD eigenlabel occurs in an open assumption"));
            }
        }
        NdRule::RT => {
            let c = formula_conclusion(node, path)?;
            let p = premise_formula(node, 0, path)?;
            if p != c {
                return Err(invalid(path, "RT premise must match the conclusion"));
            }
            let d = &node.discharged[0];
            if d.len() > 1 {
                return Err(invalid(path, "RT discharges a single relational assumption"));
            }
            if let Some(item) = d.first() {
                match item.as_rel() {
                    Some(rel) if rel.from == rel.to => {}
                    _ => return Err(invalid(path, "RT discharges a reflexive edge")),
                }
            }
        }
        NdRule::RB => {
            let c = formula_conclusion(node, path)?;
            let rel = premise_rel(node, 0, path)?;
            let p = premise_formula(node, 1, path)?;
            if p != c {
                return Err(invalid(path, "RB minor premise must match the conclusion"));
            }
            let flipped =
                ContextItem::Rel(RelAssumption { from: rel.to.clone(), to: rel.from.clone() });
            check_discharge(node, 0, &BTreeSet::new(), path)?;
            check_discharge(node, 1, &[flipped].into(), path)?;
        }
        NdRule::R4 | NdRule::R5 => {
            let c = formula_conclusion(node, path)?;
            let r1 = premise_rel(node, 0, path)?;
            let r2 = premise_rel(node, 1, path)?;
            let p = premise_formula(node, 2, path)?;
            if p != c {
                return Err(invalid(path, "frame-rule minor premise must match the conclusion"));
            }
            let derived = if node.rule == NdRule::R4 {
                if r1.to != r2.from {
                    return Err(invalid(path, "R4 relational premises do not compose"));
                }
                RelAssumption { from: r1.from.clone(), to: r2.to.clone() }
            } else {
                if r1.from != r2.from {
                    return Err(invalid(path, "R5 relational premises must share a source"));
                }
                RelAssumption { from: r1.to.clone(), to: r2.to.clone() }
            };
            check_discharge(node, 0, &BTreeSet::new(), path)?;
            check_discharge(node, 1, &BTreeSet::new(), path)?;
            check_discharge(node, 2, &[ContextItem::Rel(derived)].into(), path)?;
        }
        NdRule::R2 => {
            let c = formula_conclusion(node, path)?;
            let r1 = premise_rel(node, 0, path)?;
            let r2 = premise_rel(node, 1, path)?;
            let p = premise_formula(node, 2, path)?;
            if p != c {
                return Err(invalid(path, "R2 minor premise must match the conclusion"));
            }
            if r1.from != r2.from {
                return Err(invalid(path, "R2 relational premises must share a source"));
            }
            let w = eigen(node, path)?.clone();
            let d1 = ContextItem::Rel(RelAssumption { from: r1.to.clone(), to: w.clone() });
            let d2 = ContextItem::Rel(RelAssumption { from: r2.to.clone(), to: w.clone() });
            check_discharge(node, 0, &BTreeSet::new(), path)?;
            check_discharge(node, 1, &BTreeSet::new(), path)?;
            check_discharge(node, 2, &[d1, d2].into(), path)?;
            if [&r1.from, &r1.to, &r2.to, &c.label].contains(&&w) {
                return Err(invalid(path, "R2 eigenlabel must differ from the rule's labels"));
            }
            if open_labels(node).contains(&w) {
                return Err(invalid(path, "R2 eigenlabel occurs in an open assumption"));
            }
        }
    }

    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        check_node(gamma, premise, path)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Formula;

    fn top_x() -> LabelledFormula {
        Formula::Top.at("x")
    }

    #[test]
    fn top_intro_checks() {
        let proof = NdProof::node(NdRule::TopI, top_x(), vec![], vec![], None);
        let claim = Sequent::theorem(top_x());
        let graph = Graph::trivial(Label::new("x"));
        assert!(check_nd_proof(&FrameSpec::empty(), &graph, &proof, &claim).is_ok());
    }

    #[test]
    fn box_intro_rejects_clashing_eigenlabel() {
        // []p at x introduced with eigenlabel x itself.
        let body = Formula::atom("p");
        let conclusion = Formula::boxed(body.clone()).at("x");
        let rel = RelAssumption::new("x", "x");
        let proof = NdProof::node(
            NdRule::BoxI,
            conclusion.clone(),
            vec![NdProof::hyp(body.at("x"))],
            vec![[ContextItem::Rel(rel)].into()],
            Some(Label::new("x")),
        );
        let claim = Sequent::theorem(conclusion);
        let graph = Graph::trivial(Label::new("x"));
        let err = check_nd_proof(&FrameSpec::empty(), &graph, &proof, &claim).unwrap_err();
        assert!(err.reason.contains("eigenlabel"));
    }

    #[test]
    fn frame_rules_are_gated() {
        // RT with an empty discharge is schema-valid but needs T active.
        let p = Formula::atom("p").at("x");
        let proof = NdProof::node(
            NdRule::RT,
            p.clone(),
            vec![NdProof::hyp(p.clone())],
            vec![BTreeSet::new()],
            None,
        );
        let claim = Sequent::new([p.clone()], p);
        let graph = Graph::trivial(Label::new("x"));
        assert!(check_nd_proof(&FrameCondition::T.into(), &graph, &proof, &claim).is_ok());
        let err = check_nd_proof(&FrameSpec::empty(), &graph, &proof, &claim).unwrap_err();
        assert!(err.reason.contains("frame condition"));
    }

    #[test]
    fn arity_mismatch_is_malformed() {
        let proof = NdProof::node(NdRule::AndI, top_x(), vec![], vec![], None);
        let claim = Sequent::theorem(top_x());
        let graph = Graph::trivial(Label::new("x"));
        let err = check_nd_proof(&FrameSpec::empty(), &graph, &proof, &claim).unwrap_err();
        assert!(err.malformed);
    }
}
