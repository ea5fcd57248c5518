//! Mumford's presentation of the fundamental group and its abelianization.

use plumbing::arith::tree_determinant;
use plumbing::fixtures::{e8, star};
use plumbing::pi1::{abelianization_invariants, mumford_presentation};

fn main() {
    for (name, g) in [("star(-2; -2,-3,-5)", star(-2, &[-2, -3, -5])), ("E8", e8()), ("star(-2; 3x-3)", star(-2, &[-3, -3, -3]))] {
        let p = mumford_presentation(&g, None).unwrap();
        println!("{name}");
        print!("{}", p.render());
        let d: Vec<String> = abelianization_invariants(&p).iter().map(|x| x.to_string()).collect();
        println!("H1 divisors: {} (|det| = {})\n", d.join(", "), tree_determinant(&g).magnitude());
    }
}
