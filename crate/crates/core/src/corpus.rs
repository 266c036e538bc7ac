//! The regression corpus: every acceptance criterion as a runnable check,
//! shared by the `corpus` CLI command and the acceptance test suite.

pub mod gen;

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::base::derive::{derives, SearchBudget};
use crate::completeness::{decide_validity, flatten_map, DecideOutcome};
use crate::nd::check::check_nd_proof;
use crate::nd::search::{is_theorem, prove_nd, prove_with_status};
use crate::nd::{Graph, NdProof};
use crate::semantics::{falsify_validity, supports, ExtensionUniverse, SupportVerdict};
use crate::syntax::parse::parse_formula;
use crate::syntax::xi::generalized_subformulae;
use crate::syntax::{FrameCondition, FrameSpec, Label, Sequent};

use gen::Gen;

/// Knobs shared by the CLI and the corpus.
#[derive(Debug, Clone)]
pub struct Config {
    /// For the corpus: only rows whose frame conditions are included run.
    pub frames: FrameSpec,
    pub depth: usize,
    pub modal_uses: usize,
    pub fresh: usize,
    pub pool_extra: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            frames: FrameSpec::all(),
            depth: 12,
            modal_uses: 4,
            fresh: 3,
            pool_extra: 2,
            seed: 0,
        }
    }
}

impl Config {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget::default()
            .with_depth(self.depth)
            .with_modal_uses(self.modal_uses)
            .with_fresh(self.fresh)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One row of the corpus report.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: String,
    pub status: Status,
    pub details: String,
}

impl CriterionReport {
    fn pass(id: &str, details: impl Into<String>) -> Self {
        CriterionReport { id: id.to_string(), status: Status::Pass, details: details.into() }
    }

    fn fail(id: &str, details: impl Into<String>) -> Self {
        CriterionReport { id: id.to_string(), status: Status::Fail, details: details.into() }
    }

    fn skipped(id: &str, details: impl Into<String>) -> Self {
        CriterionReport { id: id.to_string(), status: Status::Skipped, details: details.into() }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).expect("reports serialize"))
    }
}

/// The six axiom/frame-condition rows.
pub const AXIOM_ROWS: [(FrameCondition, &str); 6] = [
    (FrameCondition::D, "<>top"),
    (FrameCondition::T, "[]p -> p"),
    (FrameCondition::B, "p -> []<>p"),
    (FrameCondition::Four, "[]p -> [][]p"),
    (FrameCondition::Five, "<>p -> []<>p"),
    (FrameCondition::Two, "<>[]p -> []<>p"),
];

/// The base-logic theorems exercised by both pipelines.
pub const IK_THEOREMS: [&str; 4] = [
    "[](p -> q) -> ([]p -> []q)",
    "[](p & q) -> ([]p & []q)",
    "<>(p | q) -> (<>p | <>q)",
    "([]p & <>q) -> <>(p & q)",
];

/// Runs every criterion and returns the report rows in order.
pub fn run_corpus(config: &Config) -> Vec<CriterionReport> {
    let mut out = Vec::new();
    let mut proved: Vec<(FrameSpec, Sequent, NdProof)> = Vec::new();
    out.extend(axiom_frame_correspondence(config, &mut proved));
    out.extend(bounded_nonprovability(config));
    out.extend(ik_theorems(config, &mut proved));
    out.extend(base_metatheory(config));
    out.extend(soundness_spotchecks(config, &proved));
    out.extend(completeness_round_trip(config));
    out.extend(falsifier_sanity(config));
    out.push(flattening_laws(config));
    out
}

fn theorem_sequent(text: &str) -> Sequent {
    Sequent::theorem(parse_formula(text).expect("corpus formulae parse").at("x"))
}

fn check_against(gamma: &FrameSpec, proof: &NdProof, claim: &Sequent) -> Result<(), String> {
    let graph = Graph::new(claim.labels(), []).expect("claims have labels");
    check_nd_proof(gamma, &graph, proof, claim).map_err(|e| e.to_string())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Criterion 1: each frame-condition axiom is proved by both pipelines
/// under its condition, within five seconds each.
pub fn axiom_frame_correspondence(
    config: &Config,
    proved: &mut Vec<(FrameSpec, Sequent, NdProof)>,
) -> Vec<CriterionReport> {
    let budget = config.budget();
    let mut out = Vec::new();
    for (condition, axiom) in AXIOM_ROWS {
        let id = format!("1-axiom-{}", condition.token());
        if !config.frames.has(condition) {
            out.push(CriterionReport::skipped(&id, "frame condition filtered out"));
            continue;
        }
        let gamma: FrameSpec = condition.into();
        let seq = theorem_sequent(axiom);
        let start = Instant::now();
        let proof = is_theorem(&gamma, &seq.goal, &budget);
        let prove_time = start.elapsed();
        let start = Instant::now();
        let decided = decide_validity(&gamma, &seq, &budget);
        let decide_time = start.elapsed();
        let report = match (&proof, &decided) {
            (Some(p), DecideOutcome::Provable(q)) => {
                if let Err(e) = check_against(&gamma, p, &seq) {
                    CriterionReport::fail(&id, format!("searched proof rejected: {e}"))
                } else if let Err(e) = check_against(&gamma, q, &seq) {
                    CriterionReport::fail(&id, format!("extracted proof rejected: {e}"))
                } else if prove_time > Duration::from_secs(5) || decide_time > Duration::from_secs(5)
                {
                    CriterionReport::fail(
                        &id,
                        format!("over budget: prove {} decide {}", secs(prove_time), secs(decide_time)),
                    )
                } else {
                    proved.push((gamma.clone(), seq.clone(), p.clone()));
                    proved.push((gamma.clone(), seq.clone(), q.clone()));
                    CriterionReport::pass(
                        &id,
                        format!("{axiom}: prove {} decide {}", secs(prove_time), secs(decide_time)),
                    )
                }
            }
            (None, _) => CriterionReport::fail(&id, format!("{axiom}: search found no proof")),
            (_, DecideOutcome::NotProvedWithinBudget) => {
                CriterionReport::fail(&id, format!("{axiom}: decision pipeline found no proof"))
            }
        };
        out.push(report);
    }
    out
}

/// Criterion 2: under the empty frame set with depth 8, no modal budget,
/// and two fresh labels, the frame axioms that need a condition are not
/// proved, and the search space is exhausted.
pub fn bounded_nonprovability(_config: &Config) -> Vec<CriterionReport> {
    let budget = SearchBudget::default().with_depth(8).with_modal_uses(0).with_fresh(2);
    let axioms =
        [("T", "[]p -> p"), ("B", "p -> []<>p"), ("4", "[]p -> [][]p"), ("5", "<>p -> []<>p")];
    let mut out = Vec::new();
    for (name, axiom) in axioms {
        let id = format!("2-nonprovable-{name}");
        let seq = theorem_sequent(axiom);
        let graph = Graph::trivial(Label::new("x"));
        let outcome = prove_with_status(&FrameSpec::empty(), &graph, &seq, &budget);
        out.push(if outcome.proof.is_some() {
            CriterionReport::fail(&id, format!("{axiom}: proved without its frame condition"))
        } else {
            CriterionReport::pass(
                &id,
                format!("{axiom}: not proved within budget depth=8 modal_uses=0 fresh=2"),
            )
        });
    }
    out
}

/// Criterion 3: the base-logic theorems are proved by both pipelines under
/// the empty frame set, within ten seconds each.
pub fn ik_theorems(
    config: &Config,
    proved: &mut Vec<(FrameSpec, Sequent, NdProof)>,
) -> Vec<CriterionReport> {
    let budget = config.budget();
    let gamma = FrameSpec::empty();
    let mut out = Vec::new();
    for (i, text) in IK_THEOREMS.iter().enumerate() {
        let id = format!("3-ik-{}", i + 1);
        let seq = theorem_sequent(text);
        let start = Instant::now();
        let proof = is_theorem(&gamma, &seq.goal, &budget);
        let prove_time = start.elapsed();
        let start = Instant::now();
        let decided = decide_validity(&gamma, &seq, &budget);
        let decide_time = start.elapsed();
        let report = match (&proof, &decided) {
            (Some(p), DecideOutcome::Provable(_)) => {
                if let Err(e) = check_against(&gamma, p, &seq) {
                    CriterionReport::fail(&id, format!("searched proof rejected: {e}"))
                } else if prove_time > Duration::from_secs(10)
                    || decide_time > Duration::from_secs(10)
                {
                    CriterionReport::fail(
                        &id,
                        format!("over budget: prove {} decide {}", secs(prove_time), secs(decide_time)),
                    )
                } else {
                    proved.push((gamma.clone(), seq.clone(), p.clone()));
                    CriterionReport::pass(
                        &id,
                        format!("{text}: prove {} decide {}", secs(prove_time), secs(decide_time)),
                    )
                }
            }
            (None, _) => CriterionReport::fail(&id, format!("{text}: search found no proof")),
            (_, DecideOutcome::NotProvedWithinBudget) => {
                CriterionReport::fail(&id, format!("{text}: decision pipeline found no proof"))
            }
        };
        out.push(report);
    }
    out
}

/// Criterion 4: randomized metatheory of the derivability relation:
/// weakening, base monotonicity, budget monotonicity, and the
/// finite-witness direction of the hypothetical-judgment lemma.
pub fn base_metatheory(config: &Config) -> Vec<CriterionReport> {
    const INSTANCES: usize = 1000;
    let mut out = Vec::new();

    let mut g = Gen::new(config.seed);
    let mut failures = 0;
    for _ in 0..INSTANCES {
        let (base, gamma, context, goal, budget) = g.derivable_instance();
        let extra = g.sentences(2);
        let mut widened = context.clone();
        widened.extend(extra.iter().cloned());
        let wider = budget.clone().with_depth(budget.depth + extra.len());
        if derives(&base, &gamma, &widened, &goal, &wider).is_none() {
            failures += 1;
        }
    }
    out.push(report_counts("4-weakening", INSTANCES, failures));

    let mut g = Gen::new(config.seed.wrapping_add(1));
    let mut failures = 0;
    for _ in 0..INSTANCES {
        let (base, gamma, context, goal, budget) = g.derivable_instance();
        let bigger = base.extend(g.rules(2));
        if derives(&bigger, &gamma, &context, &goal, &budget).is_none() {
            failures += 1;
        }
    }
    out.push(report_counts("4-monotonicity", INSTANCES, failures));

    let mut g = Gen::new(config.seed.wrapping_add(2));
    let mut failures = 0;
    for _ in 0..INSTANCES {
        let (base, gamma, context, goal, budget) = g.derivable_instance();
        let roomier = SearchBudget {
            depth: budget.depth + 3,
            modal_uses: budget.modal_uses + 2,
            fresh: budget.fresh + 1,
            pool: budget.pool.clone(),
        };
        if derives(&base, &gamma, &context, &goal, &roomier).is_none() {
            failures += 1;
        }
    }
    out.push(report_counts("4-budget-monotonicity", INSTANCES, failures));

    let mut g = Gen::new(config.seed.wrapping_add(3));
    let mut failures = 0;
    for _ in 0..INSTANCES {
        let (base, gamma, context, goal, budget) = g.axiom_witness_instance();
        // The premise: extending the base with each context sentence as an
        // axiom derives the goal outright.
        if derives(&base, &gamma, &context, &goal, &budget).is_none() {
            failures += 1;
        }
    }
    out.push(report_counts("4-hypothetical-witness", INSTANCES, failures));
    out
}

fn report_counts(id: &str, instances: usize, failures: usize) -> CriterionReport {
    if failures == 0 {
        CriterionReport::pass(id, format!("{instances} randomized instances"))
    } else {
        CriterionReport::fail(id, format!("{failures} of {instances} instances failed"))
    }
}

/// Criterion 5: no proof produced by criteria 1 and 3 can be falsified.
pub fn soundness_spotchecks(
    config: &Config,
    proved: &[(FrameSpec, Sequent, NdProof)],
) -> Vec<CriterionReport> {
    let budget = config.budget();
    let mut out = Vec::new();
    let mut ok = 0;
    for (gamma, seq, _proof) in proved {
        let uni = ExtensionUniverse::for_sequent(seq, config.pool_extra);
        match falsify_validity(gamma, seq, &uni, &budget) {
            SupportVerdict::Falsified(w) => {
                out.push(CriterionReport::fail(
                    "5-soundness-spotcheck",
                    format!("proved sequent `{seq}` falsified by witness base:\n{}", w.base),
                ));
                return out;
            }
            _ => ok += 1,
        }
    }
    if proved.is_empty() {
        out.push(CriterionReport::skipped("5-soundness-spotcheck", "no proofs to check"));
    } else {
        out.push(CriterionReport::pass(
            "5-soundness-spotcheck",
            format!("{ok} proved sequents admit no counterexample"),
        ));
    }
    out
}

/// Criterion 6: decision round trip over a randomized corpus of provable
/// sequents; the extracted proof must check against the original sequent.
pub fn completeness_round_trip(config: &Config) -> Vec<CriterionReport> {
    const CORPUS: usize = 50;
    let gamma = FrameSpec::empty();
    let filter_budget = SearchBudget::default().with_depth(10);
    let budget = config.budget();
    let mut g = Gen::new(config.seed.wrapping_add(10));
    let mut done = 0;
    let mut attempts = 0;
    while done < CORPUS {
        attempts += 1;
        if attempts > 40 * CORPUS {
            return vec![CriterionReport::fail(
                "6-round-trip",
                format!("generator stalled after {attempts} attempts, {done} sequents"),
            )];
        }
        let seq = g.sequent(4);
        let graph = Graph::new(seq.labels(), []).expect("sequents have labels");
        if prove_nd(&gamma, &graph, &seq, &filter_budget).is_none() {
            continue;
        }
        match decide_validity(&gamma, &seq, &budget) {
            DecideOutcome::Provable(proof) => {
                if let Err(e) = check_against(&gamma, &proof, &seq) {
                    return vec![CriterionReport::fail(
                        "6-round-trip",
                        format!("extracted proof for `{seq}` rejected: {e}"),
                    )];
                }
            }
            DecideOutcome::NotProvedWithinBudget => {
                return vec![CriterionReport::fail(
                    "6-round-trip",
                    format!("provable sequent `{seq}` not decided within budget"),
                )];
            }
        }
        done += 1;
    }
    vec![CriterionReport::pass(
        "6-round-trip",
        format!("{CORPUS} provable sequents decided and re-checked"),
    )]
}

/// Criterion 7: the falsifier produces replayable witnesses for two
/// non-theorems and stays silent on the provable corpus of criterion 3.
pub fn falsifier_sanity(config: &Config) -> Vec<CriterionReport> {
    let budget = config.budget();
    let gamma = FrameSpec::empty();
    let mut out = Vec::new();
    for (name, text) in [("box-t", "[]p -> p"), ("excluded-middle", "p | (p -> bot)")] {
        let id = format!("7-falsify-{name}");
        let seq = theorem_sequent(text);
        let uni = ExtensionUniverse::for_sequent(&seq, config.pool_extra);
        match falsify_validity(&gamma, &seq, &uni, &budget) {
            SupportVerdict::Falsified(w) => {
                let replay = supports(&w.base, &gamma, &w.query, &uni, &budget);
                out.push(if replay == SupportVerdict::Falsified(w) {
                    CriterionReport::pass(&id, format!("{text}: witness found and replayed"))
                } else {
                    CriterionReport::fail(&id, format!("{text}: witness did not replay"))
                });
            }
            v => out.push(CriterionReport::fail(&id, format!("{text}: expected witness, got {v:?}"))),
        }
    }
    let mut silent = 0;
    for text in IK_THEOREMS {
        let seq = theorem_sequent(text);
        let uni = ExtensionUniverse::for_sequent(&seq, config.pool_extra);
        if falsify_validity(&gamma, &seq, &uni, &budget).is_falsified() {
            out.push(CriterionReport::fail(
                "7-falsify-silence",
                format!("theorem `{text}` falsified"),
            ));
            return out;
        }
        silent += 1;
    }
    out.push(CriterionReport::pass(
        "7-falsify-silence",
        format!("{silent} theorems admit no counterexample"),
    ));
    out
}

/// Criterion 8: flattening is injective with a left inverse over random
/// closures.
pub fn flattening_laws(config: &Config) -> CriterionReport {
    const INSTANCES: usize = 10_000;
    let mut g = Gen::new(config.seed.wrapping_add(20));
    for i in 0..INSTANCES {
        let seq = g.sequent(5);
        let xi = generalized_subformulae(&seq);
        let fm = flatten_map(&xi);
        // Materialize ground members plus family instances at sample labels.
        let mut members = Vec::new();
        for lf in xi.ground() {
            members.push(lf.clone());
        }
        for pattern in xi.formula_families() {
            for l in ["x", "q0", "q1"] {
                members.push(pattern.clone().at(l));
            }
        }
        let mut images = BTreeSet::new();
        for lf in &members {
            let Some(flat) = fm.flatten(lf) else {
                return CriterionReport::fail(
                    "8-flattening",
                    format!("instance {i}: member `{lf}` has no image"),
                );
            };
            if fm.unflatten(&flat) != crate::syntax::ContextItem::Formula(lf.clone()) {
                return CriterionReport::fail(
                    "8-flattening",
                    format!("instance {i}: `{lf}` does not invert"),
                );
            }
            images.insert(flat);
        }
        let distinct: BTreeSet<_> = members.iter().collect();
        if images.len() != distinct.len() {
            return CriterionReport::fail(
                "8-flattening",
                format!("instance {i}: flattening not injective on `{seq}`"),
            );
        }
        // Relational families invert as well.
        for from in xi.rel_families().iter().filter_map(|p| p.as_exact()) {
            for to in ["x", "q0"] {
                let rel = crate::syntax::RelAssumption { from: from.clone(), to: Label::new(to) };
                let flat = fm.flatten_rel(&rel);
                if fm.unflatten(&flat) != crate::syntax::ContextItem::Rel(rel) {
                    return CriterionReport::fail(
                        "8-flattening",
                        format!("instance {i}: edge image does not invert"),
                    );
                }
            }
        }
    }
    CriterionReport::pass("8-flattening", format!("{INSTANCES} random closures"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_rows_cover_all_conditions() {
        let conditions: BTreeSet<_> = AXIOM_ROWS.iter().map(|(c, _)| *c).collect();
        assert_eq!(conditions.len(), 6);
    }

    #[test]
    fn frame_filter_skips_rows() {
        let config = Config { frames: FrameSpec::empty(), ..Config::default() };
        let mut proved = Vec::new();
        let rows = axiom_frame_correspondence(&config, &mut proved);
        assert!(rows.iter().all(|r| r.status == Status::Skipped));
        assert!(proved.is_empty());
    }
}
