//! Construction of the simulation base: the flattened images of the
//! deduction rules, instantiated over the generalized-subformula closure.
//!
//! Rules whose labels range over the whole universe are emitted as
//! schematic families. Eigenlabel positions carry both their disequality
//! constraints and a freshness marker, so that instance selection at
//! search time excludes captures the deduction rules' side conditions
//! would reject. Frame-rule conclusions range over the formula-image part
//! of the flat alphabet; relational images are only ever hypotheses, which
//! keeps every derivation translatable.

use std::collections::BTreeSet;

use crate::base::{
    rel_flat_atom, AtomTerm, Base, BasicRule, Disequality, LabelTerm, MetaVar, SchematicRule,
    SentenceTemplate, SequentTemplate,
};
use crate::nd::NdRule;
use crate::syntax::xi::{LabelPattern, XiClosure};
use crate::syntax::{Formula, FrameCondition, FrameSpec, Label};

use super::FlatMap;

/// The simulation base together with the deduction-rule schema each of its
/// rules encodes.
#[derive(Debug, Clone)]
pub struct SimulationBase {
    base: Base,
    provenance: Vec<(RuleForm, NdRule)>,
}

#[derive(Debug, Clone)]
enum RuleForm {
    Ground(BasicRule),
    Schematic(SchematicRule),
}

impl SimulationBase {
    pub fn base(&self) -> &Base {
        &self.base
    }

    /// The deduction rule simulated by a rule instance, if any.
    pub fn schema_of(&self, rule: &BasicRule) -> Option<NdRule> {
        let mut labels: BTreeSet<Label> = BTreeSet::new();
        collect_labels(rule, &mut labels);
        for (form, tag) in &self.provenance {
            let hit = match form {
                RuleForm::Ground(r) => r == rule,
                RuleForm::Schematic(s) => s
                    .instances_concluding(rule.conclusion(), &labels, &BTreeSet::new())
                    .contains(rule),
            };
            if hit {
                return Some(*tag);
            }
        }
        None
    }

    fn push(&mut self, tag: NdRule, rule: SchematicRule) {
        if rule.metavars().is_empty() && rule.constraints.is_empty() && rule.fresh_metas.is_empty()
        {
            let ground = rule.build_ground().expect("closed template builds");
            self.base.insert(ground.clone());
            self.provenance.push((RuleForm::Ground(ground), tag));
        } else {
            self.base.insert_schematic(rule.clone());
            self.provenance.push((RuleForm::Schematic(rule), tag));
        }
    }
}

fn collect_labels(rule: &BasicRule, out: &mut BTreeSet<Label>) {
    let mut visit = |s: &crate::base::BasicSentence| {
        out.extend(crate::base::effective_labels(s));
    };
    visit(rule.conclusion());
    for ant in rule.antecedents() {
        visit(ant.head());
        for p in ant.premises() {
            visit(p);
        }
    }
}

/// An entry's label position as a template term.
fn term_of(pattern: &LabelPattern, meta: &str) -> LabelTerm {
    match pattern {
        LabelPattern::Exact(l) => LabelTerm::Label(l.clone()),
        LabelPattern::Any => LabelTerm::Meta(MetaVar::new(meta)),
    }
}

/// The flat image of a formula pattern at a label term.
fn flat(fm: &FlatMap, formula: &Formula, at: &LabelTerm) -> SentenceTemplate {
    let name = fm.name_of(formula).expect("closure formulae have flat names");
    SentenceTemplate::Atom { name: AtomTerm::Atom(name), label: at.clone() }
}

/// The flat image of an edge `from R to`.
fn flat_rel(from: &LabelTerm, to: &LabelTerm) -> SentenceTemplate {
    let name = match from {
        LabelTerm::Label(l) => AtomTerm::Atom(rel_flat_atom(l)),
        LabelTerm::Meta(m) => AtomTerm::RelName(m.clone()),
    };
    SentenceTemplate::Atom { name, label: to.clone() }
}

fn fact(head: SentenceTemplate) -> SequentTemplate {
    SequentTemplate { premises: BTreeSet::new(), head }
}

fn hypo(premises: impl IntoIterator<Item = SentenceTemplate>, head: SentenceTemplate) -> SequentTemplate {
    SequentTemplate { premises: premises.into_iter().collect(), head }
}

fn diseq(meta: &MetaVar, other: &LabelTerm) -> Disequality {
    Disequality { meta: meta.clone(), other: other.clone() }
}

/// Builds the simulation base for a closure: one family of flattened rules
/// per connective occurrence, plus the flattened frame rules for each
/// active condition.
pub fn build_simulation_base(xi: &XiClosure, fm: &FlatMap, gamma: &FrameSpec) -> SimulationBase {
    let mut sim = SimulationBase { base: Base::empty(), provenance: Vec::new() };

    // Conclusions "for every atom" range over the formula-image alphabet;
    // each target is a flat formula instance with its own label term.
    let targets: Vec<(SentenceTemplate, LabelTerm)> = xi
        .formula_entries()
        .iter()
        .map(|(formula, at)| {
            let term = term_of(at, "t");
            (flat(fm, formula, &term), term)
        })
        .collect();

    for (formula, at) in xi.formula_entries() {
        let anchor = term_of(&at, "a");
        let concl = flat(fm, &formula, &anchor);
        match &formula {
            Formula::Atom(_) => {}
            Formula::Top => {
                sim.push(
                    NdRule::TopI,
                    SchematicRule {
                        antecedents: BTreeSet::new(),
                        conclusion: concl,
                        constraints: vec![],
                        fresh_metas: vec![],
                    },
                );
            }
            Formula::Bot => {
                for (t, _) in &targets {
                    sim.push(
                        NdRule::BotE,
                        SchematicRule {
                            antecedents: [fact(concl.clone())].into(),
                            conclusion: t.clone(),
                            constraints: vec![],
                            fresh_metas: vec![],
                        },
                    );
                }
            }
            Formula::And(l, r) => {
                let left = flat(fm, l, &anchor);
                let right = flat(fm, r, &anchor);
                sim.push(
                    NdRule::AndI,
                    SchematicRule {
                        antecedents: [fact(left.clone()), fact(right.clone())].into(),
                        conclusion: concl.clone(),
                        constraints: vec![],
                        fresh_metas: vec![],
                    },
                );
                for (tag, side) in [(NdRule::AndE1, left), (NdRule::AndE2, right)] {
                    sim.push(
                        tag,
                        SchematicRule {
                            antecedents: [fact(concl.clone())].into(),
                            conclusion: side,
                            constraints: vec![],
                            fresh_metas: vec![],
                        },
                    );
                }
            }
            Formula::Or(l, r) => {
                let left = flat(fm, l, &anchor);
                let right = flat(fm, r, &anchor);
                for (tag, side) in
                    [(NdRule::OrI1, left.clone()), (NdRule::OrI2, right.clone())]
                {
                    sim.push(
                        tag,
                        SchematicRule {
                            antecedents: [fact(side)].into(),
                            conclusion: concl.clone(),
                            constraints: vec![],
                            fresh_metas: vec![],
                        },
                    );
                }
                for (t, _) in &targets {
                    sim.push(
                        NdRule::OrE,
                        SchematicRule {
                            antecedents: [
                                fact(concl.clone()),
                                hypo([left.clone()], t.clone()),
                                hypo([right.clone()], t.clone()),
                            ]
                            .into(),
                            conclusion: t.clone(),
                            constraints: vec![],
                            fresh_metas: vec![],
                        },
                    );
                }
            }
            Formula::Imp(l, r) => {
                let left = flat(fm, l, &anchor);
                let right = flat(fm, r, &anchor);
                sim.push(
                    NdRule::ImpI,
                    SchematicRule {
                        antecedents: [hypo([left.clone()], right.clone())].into(),
                        conclusion: concl.clone(),
                        constraints: vec![],
                        fresh_metas: vec![],
                    },
                );
                sim.push(
                    NdRule::ImpE,
                    SchematicRule {
                        antecedents: [fact(concl), fact(left)].into(),
                        conclusion: right,
                        constraints: vec![],
                        fresh_metas: vec![],
                    },
                );
            }
            Formula::Box(body) => {
                let y = MetaVar::new("y");
                let y_term = LabelTerm::Meta(y.clone());
                sim.push(
                    NdRule::BoxI,
                    SchematicRule {
                        antecedents: [hypo(
                            [flat_rel(&anchor, &y_term)],
                            flat(fm, body, &y_term),
                        )]
                        .into(),
                        conclusion: concl.clone(),
                        constraints: vec![diseq(&y, &anchor)],
                        fresh_metas: vec![y],
                    },
                );
                let z = LabelTerm::Meta(MetaVar::new("z"));
                sim.push(
                    NdRule::BoxE,
                    SchematicRule {
                        antecedents: [fact(concl), fact(flat_rel(&anchor, &z))].into(),
                        conclusion: flat(fm, body, &z),
                        constraints: vec![],
                        fresh_metas: vec![],
                    },
                );
            }
            Formula::Dia(body) => {
                let z = LabelTerm::Meta(MetaVar::new("z"));
                sim.push(
                    NdRule::DiaI,
                    SchematicRule {
                        antecedents: [
                            fact(flat(fm, body, &z)),
                            fact(flat_rel(&anchor, &z)),
                        ]
                        .into(),
                        conclusion: concl.clone(),
                        constraints: vec![],
                        fresh_metas: vec![],
                    },
                );
                let y = MetaVar::new("y");
                let y_term = LabelTerm::Meta(y.clone());
                for (t, t_label) in &targets {
                    sim.push(
                        NdRule::DiaE,
                        SchematicRule {
                            antecedents: [
                                fact(concl.clone()),
                                hypo(
                                    [flat(fm, body, &y_term), flat_rel(&anchor, &y_term)],
                                    t.clone(),
                                ),
                            ]
                            .into(),
                            conclusion: t.clone(),
                            constraints: vec![diseq(&y, &anchor), diseq(&y, t_label)],
                            fresh_metas: vec![y.clone()],
                        },
                    );
                }
            }
        }
    }

    for condition in gamma.conditions() {
        push_frame_rules(&mut sim, condition, &targets);
    }
    sim
}

fn push_frame_rules(
    sim: &mut SimulationBase,
    condition: FrameCondition,
    targets: &[(SentenceTemplate, LabelTerm)],
) {
    let x = MetaVar::new("x");
    let xt = LabelTerm::Meta(x.clone());
    let y = MetaVar::new("y");
    let yt = LabelTerm::Meta(y.clone());
    let z = MetaVar::new("z");
    let zt = LabelTerm::Meta(z.clone());
    let w = MetaVar::new("w");
    let wt = LabelTerm::Meta(w.clone());
    for (t, t_label) in targets {
        let (tag, rule) = match condition {
            FrameCondition::D => (
                NdRule::RD,
                SchematicRule {
                    antecedents: [hypo([flat_rel(&xt, &yt)], t.clone())].into(),
                    conclusion: t.clone(),
                    constraints: vec![diseq(&y, &xt), diseq(&y, t_label)],
                    fresh_metas: vec![y.clone()],
                },
            ),
            FrameCondition::T => (
                NdRule::RT,
                SchematicRule {
                    antecedents: [hypo([flat_rel(&xt, &xt)], t.clone())].into(),
                    conclusion: t.clone(),
                    constraints: vec![],
                    fresh_metas: vec![],
                },
            ),
            FrameCondition::B => (
                NdRule::RB,
                SchematicRule {
                    antecedents: [
                        fact(flat_rel(&xt, &zt)),
                        hypo([flat_rel(&zt, &xt)], t.clone()),
                    ]
                    .into(),
                    conclusion: t.clone(),
                    constraints: vec![],
                    fresh_metas: vec![],
                },
            ),
            FrameCondition::Four => (
                NdRule::R4,
                SchematicRule {
                    antecedents: [
                        fact(flat_rel(&xt, &wt)),
                        fact(flat_rel(&wt, &zt)),
                        hypo([flat_rel(&xt, &zt)], t.clone()),
                    ]
                    .into(),
                    conclusion: t.clone(),
                    constraints: vec![],
                    fresh_metas: vec![],
                },
            ),
            FrameCondition::Five => (
                NdRule::R5,
                SchematicRule {
                    antecedents: [
                        fact(flat_rel(&xt, &wt)),
                        fact(flat_rel(&xt, &zt)),
                        hypo([flat_rel(&wt, &zt)], t.clone()),
                    ]
                    .into(),
                    conclusion: t.clone(),
                    constraints: vec![],
                    fresh_metas: vec![],
                },
            ),
            FrameCondition::Two => (
                NdRule::R2,
                SchematicRule {
                    antecedents: [
                        fact(flat_rel(&xt, &wt)),
                        fact(flat_rel(&xt, &zt)),
                        hypo(
                            [flat_rel(&wt, &yt), flat_rel(&zt, &yt)],
                            t.clone(),
                        ),
                    ]
                    .into(),
                    conclusion: t.clone(),
                    constraints: vec![
                        diseq(&y, &xt),
                        diseq(&y, &wt),
                        diseq(&y, &zt),
                        diseq(&y, t_label),
                    ],
                    fresh_metas: vec![y.clone()],
                },
            ),
        };
        sim.push(tag, rule);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::flatten_map;
    use crate::syntax::xi::generalized_subformulae;
    use crate::syntax::Sequent;

    #[test]
    fn atomic_goal_yields_no_rules() {
        let seq = Sequent::theorem(Formula::atom("p").at("x"));
        let xi = generalized_subformulae(&seq);
        let sim = build_simulation_base(&xi, &flatten_map(&xi), &FrameSpec::empty());
        assert!(sim.base().is_empty());
    }

    #[test]
    fn box_goal_yields_intro_and_elim_families() {
        let seq = Sequent::theorem(Formula::boxed(Formula::atom("p")).at("x"));
        let xi = generalized_subformulae(&seq);
        let fm = flatten_map(&xi);
        let sim = build_simulation_base(&xi, &fm, &FrameSpec::empty());
        let tags: Vec<NdRule> = sim.provenance.iter().map(|(_, t)| *t).collect();
        assert!(tags.contains(&NdRule::BoxI));
        assert!(tags.contains(&NdRule::BoxE));
        assert!(!tags.contains(&NdRule::RT));
        // The intro family constrains and freshens its eigen metavariable.
        let intro = sim
            .provenance
            .iter()
            .find_map(|(form, tag)| match (form, tag) {
                (RuleForm::Schematic(s), NdRule::BoxI) => Some(s.clone()),
                _ => None,
            })
            .expect("schematic box intro");
        assert_eq!(intro.fresh_metas.len(), 1);
        assert_eq!(intro.constraints.len(), 1);
    }

    #[test]
    fn frame_condition_adds_frame_rules() {
        let seq = Sequent::theorem(
            Formula::imp(Formula::boxed(Formula::atom("p")), Formula::atom("p")).at("x"),
        );
        let xi = generalized_subformulae(&seq);
        let fm = flatten_map(&xi);
        let without = build_simulation_base(&xi, &fm, &FrameSpec::empty());
        let with = build_simulation_base(&xi, &fm, &FrameCondition::T.into());
        assert!(without.provenance.iter().all(|(_, t)| *t != NdRule::RT));
        assert!(with.provenance.iter().any(|(_, t)| *t == NdRule::RT));
    }
}
