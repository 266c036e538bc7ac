//! Translation of derivations over the simulation base into natural
//! deduction proofs.
//!
//! Containment steps become assumption leaves of the unflattened sentence;
//! rule applications become the deduction rule recorded in the base's
//! provenance; the modal closure cases of the derivability relation become
//! the corresponding frame rules directly, with the raw relational
//! hypotheses they introduce read as relational assumptions. Eigenlabel
//! side conditions are asserted during translation.

use std::collections::BTreeSet;

use crate::base::derive::{AtomicDerivation, DerivStep};
use crate::base::{BasicRule, BasicSequent};
use crate::nd::{NdProof, NdRule};
use crate::syntax::{ContextItem, Formula, Label, LabelledFormula, RelAssumption};

use super::{FlatMap, SimulationBase};

/// A derivation that does not translate: it cites a rule outside the
/// simulation base's provenance, or its shape does not fit the recorded
/// schema.
#[derive(Debug, Clone, thiserror::Error)]
pub enum ExtractError {
    #[error("rule `{0}` has no provenance in the simulation base")]
    UnknownRule(BasicRule),
    #[error("step concluding `{0}` cannot yield a relational assumption")]
    RelationalConclusion(ContextItem),
    #[error("derivation does not fit schema {0}: {1}")]
    Shape(NdRule, String),
    #[error("eigenlabel side condition violated at {0}: {1}")]
    SideCondition(NdRule, String),
}

/// Translates a derivation over the simulation base into a natural
/// deduction proof of the unflattened conclusion.
pub fn extract_nd_proof(
    d: &AtomicDerivation,
    fm: &FlatMap,
    sim: &SimulationBase,
) -> Result<NdProof, ExtractError> {
    let proof = translate(d, fm, sim)?;
    Ok(proof)
}

fn shape(tag: NdRule, why: impl Into<String>) -> ExtractError {
    ExtractError::Shape(tag, why.into())
}

fn formula_of(item: &ContextItem, tag: NdRule) -> Result<LabelledFormula, ExtractError> {
    item.as_formula()
        .cloned()
        .ok_or_else(|| shape(tag, format!("expected a formula, got `{item}`")))
}

fn rel_of(item: &ContextItem, tag: NdRule) -> Result<RelAssumption, ExtractError> {
    item.as_rel()
        .cloned()
        .ok_or_else(|| shape(tag, format!("expected a relational assumption, got `{item}`")))
}

/// Checks the eigenlabel freshness of a finished frame or modal node
/// against its remaining open assumptions and clause labels.
fn check_eigen(
    node: &NdProof,
    eigen: &Label,
    clause_labels: &[&Label],
    tag: NdRule,
) -> Result<(), ExtractError> {
    if clause_labels.contains(&eigen) {
        return Err(ExtractError::SideCondition(
            tag,
            format!("eigenlabel `{}` clashes with a clause label", eigen.name()),
        ));
    }
    let open = node.open_assumptions();
    if open.iter().any(|item| item.labels().contains(&eigen)) {
        return Err(ExtractError::SideCondition(
            tag,
            format!("eigenlabel `{}` occurs in an open assumption", eigen.name()),
        ));
    }
    Ok(())
}

fn translate(
    d: &AtomicDerivation,
    fm: &FlatMap,
    sim: &SimulationBase,
) -> Result<NdProof, ExtractError> {
    let conclusion = fm.unflatten(&d.conclusion);
    let proof = match &d.step {
        DerivStep::Ref => NdProof::hyp(conclusion.clone()),
        DerivStep::App(rule) => {
            let tag = sim
                .schema_of(rule)
                .ok_or_else(|| ExtractError::UnknownRule(rule.clone()))?;
            let slots: Vec<(&BasicSequent, &AtomicDerivation)> =
                rule.antecedents().iter().zip(d.children.iter()).collect();
            translate_app(tag, &conclusion, &slots, fm, sim)?
        }
        DerivStep::D { from, eigen } => {
            let rel = RelAssumption { from: from.clone(), to: eigen.clone() };
            let premise = translate(&d.children[0], fm, sim)?;
            let node = NdProof::node(
                NdRule::RD,
                conclusion.clone(),
                vec![premise],
                vec![[ContextItem::Rel(rel.clone())].into()],
                Some(eigen.clone()),
            );
            check_eigen(&node, eigen, &[from], NdRule::RD)?;
            node
        }
        DerivStep::T { at } => {
            let rel = RelAssumption { from: at.clone(), to: at.clone() };
            let premise = translate(&d.children[0], fm, sim)?;
            NdProof::node(
                NdRule::RT,
                conclusion.clone(),
                vec![premise],
                vec![[ContextItem::Rel(rel)].into()],
                None,
            )
        }
        DerivStep::B { rel } => {
            let rel_proof = translate(&d.children[0], fm, sim)?;
            let main = translate(&d.children[1], fm, sim)?;
            let flipped = RelAssumption { from: rel.to.clone(), to: rel.from.clone() };
            NdProof::node(
                NdRule::RB,
                conclusion.clone(),
                vec![rel_proof, main],
                vec![BTreeSet::new(), [ContextItem::Rel(flipped)].into()],
                None,
            )
        }
        DerivStep::Four { first, second } => {
            let p1 = translate(&d.children[0], fm, sim)?;
            let p2 = translate(&d.children[1], fm, sim)?;
            let main = translate(&d.children[2], fm, sim)?;
            let derived = RelAssumption { from: first.from.clone(), to: second.to.clone() };
            NdProof::node(
                NdRule::R4,
                conclusion.clone(),
                vec![p1, p2, main],
                vec![BTreeSet::new(), BTreeSet::new(), [ContextItem::Rel(derived)].into()],
                None,
            )
        }
        DerivStep::Five { first, second } => {
            let p1 = translate(&d.children[0], fm, sim)?;
            let p2 = translate(&d.children[1], fm, sim)?;
            let main = translate(&d.children[2], fm, sim)?;
            let derived = RelAssumption { from: first.to.clone(), to: second.to.clone() };
            NdProof::node(
                NdRule::R5,
                conclusion.clone(),
                vec![p1, p2, main],
                vec![BTreeSet::new(), BTreeSet::new(), [ContextItem::Rel(derived)].into()],
                None,
            )
        }
        DerivStep::Two { first, second, eigen } => {
            let p1 = translate(&d.children[0], fm, sim)?;
            let p2 = translate(&d.children[1], fm, sim)?;
            let main = translate(&d.children[2], fm, sim)?;
            let d1 = RelAssumption { from: first.to.clone(), to: eigen.clone() };
            let d2 = RelAssumption { from: second.to.clone(), to: eigen.clone() };
            let node = NdProof::node(
                NdRule::R2,
                conclusion.clone(),
                vec![p1, p2, main],
                vec![
                    BTreeSet::new(),
                    BTreeSet::new(),
                    [ContextItem::Rel(d1), ContextItem::Rel(d2)].into(),
                ],
                Some(eigen.clone()),
            );
            let concl_label = conclusion
                .as_formula()
                .map(|lf| lf.label.clone())
                .ok_or_else(|| ExtractError::RelationalConclusion(conclusion.clone()))?;
            check_eigen(
                &node,
                eigen,
                &[&first.from, &first.to, &second.to, &concl_label],
                NdRule::R2,
            )?;
            node
        }
    };
    if proof.rule != NdRule::Hyp && proof.conclusion.as_rel().is_some() {
        return Err(ExtractError::RelationalConclusion(proof.conclusion));
    }
    Ok(proof)
}

/// Builds the deduction node for a rule application. `slots` pairs each
/// antecedent of the cited rule instance with the child derivation that
/// discharges it, in the order the checker aligns them.
fn translate_app(
    tag: NdRule,
    conclusion: &ContextItem,
    slots: &[(&BasicSequent, &AtomicDerivation)],
    fm: &FlatMap,
    sim: &SimulationBase,
) -> Result<NdProof, ExtractError> {
    let arity_err = || shape(tag, format!("unexpected antecedent count {}", slots.len()));
    let items: Vec<ContextItem> = slots.iter().map(|(a, _)| fm.unflatten(a.head())).collect();
    let discharges: Vec<BTreeSet<ContextItem>> = slots
        .iter()
        .map(|(a, _)| a.premises().iter().map(|p| fm.unflatten(p)).collect())
        .collect();
    let mut proofs = Vec::with_capacity(slots.len());
    for (_, child) in slots {
        proofs.push(translate(child, fm, sim)?);
    }

    // Orders premises so the checker's schema shapes line up; the slot
    // order inside a rule is the antecedent set order, which need not be
    // the schema's.
    let by_head = |want: &dyn Fn(&ContextItem) -> bool| -> Result<usize, ExtractError> {
        items
            .iter()
            .position(|i| want(i))
            .ok_or_else(|| shape(tag, "no antecedent fits the schema slot"))
    };

    let node = match tag {
        NdRule::Hyp => return Err(shape(tag, "assumptions are not applications")),
        NdRule::TopI => {
            if !slots.is_empty() {
                return Err(arity_err());
            }
            NdProof::node(NdRule::TopI, conclusion.clone(), vec![], vec![], None)
        }
        NdRule::BotE | NdRule::AndE1 | NdRule::AndE2 | NdRule::OrI1 | NdRule::OrI2 => {
            if slots.len() != 1 {
                return Err(arity_err());
            }
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs.remove(0)],
                vec![BTreeSet::new()],
                None,
            )
        }
        NdRule::ImpI => {
            if slots.len() != 1 {
                return Err(arity_err());
            }
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs.remove(0)],
                vec![discharges[0].clone()],
                None,
            )
        }
        NdRule::ImpE => {
            if slots.len() != 2 {
                return Err(arity_err());
            }
            let concl = formula_of(conclusion, tag)?;
            let major = by_head(&|i: &ContextItem| {
                matches!(
                    i.as_formula(),
                    Some(LabelledFormula { formula: Formula::Imp(_, r), label })
                        if **r == concl.formula && *label == concl.label
                )
            })?;
            let minor = 1 - major;
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs[major].clone(), proofs[minor].clone()],
                vec![BTreeSet::new(), BTreeSet::new()],
                None,
            )
        }
        NdRule::AndI => {
            if slots.len() != 2 {
                return Err(arity_err());
            }
            let concl = formula_of(conclusion, tag)?;
            let Formula::And(l, _) = &concl.formula else {
                return Err(shape(tag, "conclusion is not a conjunction"));
            };
            let left = by_head(&|i: &ContextItem| {
                matches!(i.as_formula(), Some(lf) if lf.formula == **l && lf.label == concl.label)
            })?;
            let right = 1 - left;
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs[left].clone(), proofs[right].clone()],
                vec![BTreeSet::new(), BTreeSet::new()],
                None,
            )
        }
        NdRule::OrE => {
            if slots.len() != 3 {
                return Err(arity_err());
            }
            let major = slots
                .iter()
                .position(|(a, _)| a.premises().is_empty())
                .ok_or_else(|| shape(tag, "missing major premise"))?;
            let major_lf = formula_of(&items[major], tag)?;
            let Formula::Or(l, _) = &major_lf.formula else {
                return Err(shape(tag, "major premise is not a disjunction"));
            };
            let left_item = ContextItem::Formula(LabelledFormula {
                formula: (**l).clone(),
                label: major_lf.label.clone(),
            });
            let minor1 = (0..3)
                .find(|i| *i != major && discharges[*i].contains(&left_item))
                .ok_or_else(|| shape(tag, "no antecedent discharges the left disjunct"))?;
            let minor2 = (0..3)
                .find(|i| *i != major && *i != minor1)
                .ok_or_else(|| shape(tag, "missing right minor premise"))?;
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs[major].clone(), proofs[minor1].clone(), proofs[minor2].clone()],
                vec![BTreeSet::new(), discharges[minor1].clone(), discharges[minor2].clone()],
                None,
            )
        }
        NdRule::BoxI => {
            if slots.len() != 1 {
                return Err(arity_err());
            }
            let rel = discharges[0]
                .iter()
                .find_map(|i| i.as_rel().cloned())
                .ok_or_else(|| shape(tag, "box introduction discharges an edge"))?;
            let eigen = rel.to.clone();
            let node = NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs.remove(0)],
                vec![discharges[0].clone()],
                Some(eigen.clone()),
            );
            check_eigen(&node, &eigen, &[&rel.from], tag)?;
            node
        }
        // Both schemas take the relational premise second.
        NdRule::BoxE | NdRule::DiaI => {
            if slots.len() != 2 {
                return Err(arity_err());
            }
            let rel = by_head(&|i: &ContextItem| i.as_rel().is_some())?;
            let other = 1 - rel;
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs[other].clone(), proofs[rel].clone()],
                vec![BTreeSet::new(), BTreeSet::new()],
                None,
            )
        }
        NdRule::DiaE => {
            if slots.len() != 2 {
                return Err(arity_err());
            }
            let major = slots
                .iter()
                .position(|(a, _)| a.premises().is_empty())
                .ok_or_else(|| shape(tag, "missing major premise"))?;
            let minor = 1 - major;
            let major_lf = formula_of(&items[major], tag)?;
            let rel = discharges[minor]
                .iter()
                .find_map(|i| i.as_rel().cloned())
                .ok_or_else(|| shape(tag, "diamond elimination discharges an edge"))?;
            let eigen = rel.to.clone();
            let concl_label = formula_of(conclusion, tag)?.label;
            let node = NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs[major].clone(), proofs[minor].clone()],
                vec![BTreeSet::new(), discharges[minor].clone()],
                Some(eigen.clone()),
            );
            check_eigen(&node, &eigen, &[&major_lf.label, &concl_label], tag)?;
            node
        }
        NdRule::RD => {
            if slots.len() != 1 {
                return Err(arity_err());
            }
            let rel = discharges[0]
                .iter()
                .find_map(|i| i.as_rel().cloned())
                .ok_or_else(|| shape(tag, "seriality discharges an edge"))?;
            let eigen = rel.to.clone();
            let node = NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs.remove(0)],
                vec![discharges[0].clone()],
                Some(eigen.clone()),
            );
            check_eigen(&node, &eigen, &[&rel.from], tag)?;
            node
        }
        NdRule::RT => {
            if slots.len() != 1 {
                return Err(arity_err());
            }
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs.remove(0)],
                vec![discharges[0].clone()],
                None,
            )
        }
        NdRule::RB => {
            if slots.len() != 2 {
                return Err(arity_err());
            }
            let fact = slots
                .iter()
                .position(|(a, _)| a.premises().is_empty())
                .ok_or_else(|| shape(tag, "missing relational premise"))?;
            let minor = 1 - fact;
            NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs[fact].clone(), proofs[minor].clone()],
                vec![BTreeSet::new(), discharges[minor].clone()],
                None,
            )
        }
        NdRule::R4 | NdRule::R5 | NdRule::R2 => {
            if slots.len() != 3 {
                return Err(arity_err());
            }
            let minor = slots
                .iter()
                .position(|(a, _)| !a.premises().is_empty())
                .ok_or_else(|| shape(tag, "missing hypothetical premise"))?;
            let facts: Vec<usize> = (0..3).filter(|i| *i != minor).collect();
            // Orient the relational premises so the discharged edges are
            // the ones the schema derives.
            let mut chosen: Option<(usize, usize, Option<Label>)> = None;
            for (i, j) in [(facts[0], facts[1]), (facts[1], facts[0])] {
                let first = rel_of(&items[i], tag)?;
                let second = rel_of(&items[j], tag)?;
                match tag {
                    NdRule::R4 => {
                        if first.to != second.from {
                            continue;
                        }
                        let derived = ContextItem::Rel(RelAssumption {
                            from: first.from.clone(),
                            to: second.to.clone(),
                        });
                        if discharges[minor].contains(&derived) {
                            chosen = Some((i, j, None));
                            break;
                        }
                    }
                    NdRule::R5 => {
                        if first.from != second.from {
                            continue;
                        }
                        let derived = ContextItem::Rel(RelAssumption {
                            from: first.to.clone(),
                            to: second.to.clone(),
                        });
                        if discharges[minor].contains(&derived) {
                            chosen = Some((i, j, None));
                            break;
                        }
                    }
                    NdRule::R2 => {
                        if first.from != second.from {
                            continue;
                        }
                        let Some(eigen) = discharges[minor]
                            .iter()
                            .find_map(|it| it.as_rel().map(|r| r.to.clone()))
                        else {
                            continue;
                        };
                        let d1 = ContextItem::Rel(RelAssumption {
                            from: first.to.clone(),
                            to: eigen.clone(),
                        });
                        let d2 = ContextItem::Rel(RelAssumption {
                            from: second.to.clone(),
                            to: eigen.clone(),
                        });
                        if discharges[minor].contains(&d1) && discharges[minor].contains(&d2) {
                            chosen = Some((i, j, Some(eigen)));
                            break;
                        }
                    }
                    _ => unreachable!(),
                }
            }
            let (i, j, eigen) =
                chosen.ok_or_else(|| shape(tag, "relational premises do not fit the schema"))?;
            let node = NdProof::node(
                tag,
                conclusion.clone(),
                vec![proofs[i].clone(), proofs[j].clone(), proofs[minor].clone()],
                vec![BTreeSet::new(), BTreeSet::new(), discharges[minor].clone()],
                eigen.clone(),
            );
            if tag == NdRule::R2 {
                let eigen = eigen.ok_or_else(|| shape(tag, "missing eigenlabel"))?;
                let concl_label = formula_of(conclusion, tag)?.label;
                let first = rel_of(&items[i], tag)?;
                let second = rel_of(&items[j], tag)?;
                check_eigen(
                    &node,
                    &eigen,
                    &[&first.from, &first.to, &second.to, &concl_label],
                    tag,
                )?;
            }
            node
        }
    };
    Ok(node)
}
