//! Structural classification of a few families: E8 with an extra vertex,
//! stars and chains.

use plumbing::classify::classify;
use plumbing::fixtures::{e8, e8_with, star};
use plumbing::graph::PlumbingGraph;

fn show(name: &str, g: &PlumbingGraph) {
    let r = classify(g);
    let violation = r
        .insulation_violation
        .as_ref()
        .map_or("none".to_string(), |(v, k)| format!("{v} ({})", k.as_str()));
    println!(
        "{name:<16} nd={:<5} very_bad={:<5} e8={:<5} insulated={:<5} violation={violation:<32} laufer={} prediction={}",
        r.negative_definite,
        r.very_bad_witness.is_some(),
        r.proper_e8_witness.is_some(),
        r.insulated,
        r.laufer_verdict.as_str(),
        r.prediction,
    );
}

fn main() {
    show("E8", &e8());
    for (at, w) in [("x4", -3), ("y2", -5), ("z1", -9), ("x4", -2)] {
        show(&format!("E8 + {w} at {at}"), &e8_with(at, w));
    }
    show("star(-2; 4x-2)", &star(-2, &[-2, -2, -2, -2]));
    show("star(-3; 3x-2)", &star(-3, &[-2, -2, -2]));
    show("star(-2; 3x-3)", &star(-2, &[-3, -3, -3]));
    show("chain -2,-3,-2", &PlumbingGraph::chain(&[-2, -3, -2]).unwrap());
}
