//! Parsing a graph file with a -1 vertex and reducing it to a minimal tree.

use plumbing::arith::tree_determinant;
use plumbing::graph::{blow_down_once, is_minimal, minimalize, parse_graph};

const INPUT: &str = "\
# a chain with a -1 bamboo and a -1 leaf
vertex a -3
vertex b -1
vertex c -3
vertex d -2
vertex e -1
edge a b
edge b c
edge c d
edge d e
";

fn main() {
    let g = parse_graph(INPUT).unwrap();
    println!("minimal: {}, det = {}", is_minimal(&g), tree_determinant(&g));
    let once = blow_down_once(&g, "b").unwrap();
    print!("after blowing down b:\n{}", once.serialize());
    let m = minimalize(&g);
    print!("minimalized:\n{}", m.serialize());
    println!("minimal: {}, det = {}", is_minimal(&m), tree_determinant(&m));

    match parse_graph("vertex a -2\nvertex b -2\nedge a c\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
