//! End-to-end checks of the validity decision pipeline against direct
//! proof search.

use imlbes::corpus::gen::Gen;
use imlbes::{
    check_nd_proof, decide_validity, parse_formula, parse_sequent, prove_nd, DecideOutcome,
    FrameCondition, FrameSpec, Graph, SearchBudget, Sequent,
};

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn decide_theorem(frames: &str, text: &str) -> DecideOutcome {
    let gamma = FrameSpec::parse(frames).unwrap();
    let seq = Sequent::theorem(parse_formula(text).unwrap().at("x"));
    decide_validity(&gamma, &seq, &budget())
}

#[test]
fn decides_assumption_sequent() {
    let seq = parse_sequent("p@x |- p@x").unwrap();
    let out = decide_validity(&FrameSpec::empty(), &seq, &budget());
    let proof = out.proof().expect("provable");
    assert_eq!(proof.size(), 0, "a bare assumption needs no rule");
}

#[test]
fn decides_seriality_axiom_under_d() {
    assert!(decide_theorem("D", "<>top").proof().is_some());
    assert!(decide_theorem("", "<>top").proof().is_none());
}

#[test]
fn decides_box_distribution() {
    assert!(decide_theorem("", "[](p & q) -> ([]p & []q)").proof().is_some());
}

#[test]
fn decides_box_collection() {
    assert!(decide_theorem("", "([]p & []q) -> [](p & q)").proof().is_some());
}

#[test]
fn rejects_invalid_box_claim() {
    // p at one label never forces box p elsewhere; the eigen side
    // conditions must keep the simulation from pretending otherwise.
    let seq = parse_sequent("p@y |- ([]p)@x").unwrap();
    assert!(decide_validity(&FrameSpec::empty(), &seq, &budget()).proof().is_none());
    let seq = parse_sequent("p@x |- ([]p)@x").unwrap();
    assert!(decide_validity(&FrameSpec::empty(), &seq, &budget()).proof().is_none());
}

#[test]
fn frame_axioms_decide_under_their_condition_only() {
    for (condition, axiom) in [
        (FrameCondition::T, "[]p -> p"),
        (FrameCondition::Four, "[]p -> [][]p"),
        (FrameCondition::B, "p -> []<>p"),
    ] {
        let with: FrameSpec = condition.into();
        let seq = Sequent::theorem(parse_formula(axiom).unwrap().at("x"));
        assert!(
            decide_validity(&with, &seq, &budget()).proof().is_some(),
            "{axiom} under {with}"
        );
        assert!(
            decide_validity(&FrameSpec::empty(), &seq, &budget()).proof().is_none(),
            "{axiom} under the empty frame set"
        );
    }
}

#[test]
fn pipelines_agree_on_random_sequents() {
    let gamma = FrameSpec::empty();
    let mut g = Gen::new(7);
    let prove_budget = SearchBudget::default().with_depth(10);
    let mut checked = 0;
    let mut provable = 0;
    while checked < 50 {
        let seq = g.sequent(4);
        checked += 1;
        let graph = Graph::new(seq.labels(), []).unwrap();
        let proof = prove_nd(&gamma, &graph, &seq, &prove_budget);
        let decided = decide_validity(&gamma, &seq, &budget());
        match (&proof, &decided) {
            (Some(_), DecideOutcome::Provable(extracted)) => {
                provable += 1;
                check_nd_proof(&gamma, &graph, extracted, &seq).expect("extracted proof checks");
            }
            (None, DecideOutcome::NotProvedWithinBudget) => {}
            (Some(_), DecideOutcome::NotProvedWithinBudget) => {
                panic!("search proved `{seq}` but the pipeline did not")
            }
            (None, DecideOutcome::Provable(_)) => {
                panic!("pipeline proved `{seq}` but search did not")
            }
        }
    }
    assert!(provable >= 5, "corpus too trivial: {provable} provable of {checked}");
}
