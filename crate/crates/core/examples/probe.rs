use imlbes::*;
use std::time::Instant;

fn main() {
    let budget = SearchBudget::default();
    let cases = [
        ("T", "[]p -> p"), ("", "[]p -> p"),
        ("4", "[]p -> [][]p"), ("", "[]p -> [][]p"),
        ("B", "p -> []<>p"), ("", "p -> []<>p"),
        ("D", "<>top"),
        ("5", "<>p -> []<>p"),
        ("2", "<>[]p -> []<>p"),
        ("", "[](p -> q) -> ([]p -> []q)"),
        ("", "[](p & q) -> ([]p & []q)"),
        ("", "<>(p | q) -> (<>p | <>q)"),
        ("", "([]p & <>q) -> <>(p & q)"),
    ];
    for (frames, text) in cases {
        let gamma = FrameSpec::parse(frames).unwrap();
        let seq = Sequent::theorem(parse_formula(text).unwrap().at("x"));
        let t = Instant::now();
        let out = decide_validity(&gamma, &seq, &budget);
        eprintln!("decide [{frames}] {text}: provable={} in {:?}", out.proof().is_some(), t.elapsed());
    }
}
