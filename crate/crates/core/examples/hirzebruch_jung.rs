//! Hirzebruch-Jung continued fractions in both directions.

use plumbing::arith::{hj_expand, parse_rational, HJExpansion};

fn main() {
    for s in ["-3/2", "-7/3", "-10/7", "-15/8", "-5/4", "-6/5", "-1/2", "7/3"] {
        let r = parse_rational(s).unwrap();
        let e = hj_expand(&r).unwrap();
        println!("{r:>6} = {e}");
    }
    let x = HJExpansion::new(vec![-2, -3, -4]).unwrap();
    println!("{x} = {}", x.value());
}
