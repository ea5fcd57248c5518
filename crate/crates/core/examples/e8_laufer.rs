//! Laufer's computation sequence on the E8 tree, step by step.

use plumbing::fixtures::e8;
use plumbing::laufer::{chi, laufer_run, LauferOptions, TieBreak};

fn main() {
    let g = e8();
    let res = laufer_run(&g, &LauferOptions::full_trace()).expect("E8 is negative-definite");
    print!("{}", res.trace.as_ref().unwrap().render(&g));
    let z = res.z_min.as_ref().unwrap();
    println!("verdict: {}", res.verdict);
    println!("minimal cycle: {} (chi = {})", z.render(&g), chi(&g, z));

    for tb in [TieBreak::Last, TieBreak::MaxPairing, TieBreak::SeededRandom(7)] {
        let opts = LauferOptions {
            tie_break: tb,
            ..LauferOptions::full_trace()
        };
        let other = laufer_run(&g, &opts).unwrap();
        println!("tie-break {tb}: {} steps, same cycle: {}", other.iterations, other.z_min == res.z_min);
    }
}
