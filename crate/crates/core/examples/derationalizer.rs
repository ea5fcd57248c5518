//! Rooted diagonalisation, de-rationalisers and the surgered graph.

use plumbing::arith::{rational, tree_determinant};
use plumbing::diag::{delta, derationalizer, rooted_diagonalize, surger, MarkedGraph};
use plumbing::fixtures::six_vertex_example;

fn main() {
    let g = six_vertex_example();
    let form = rooted_diagonalize(&g, "b").unwrap();
    for (id, e) in g.ids().iter().zip(form.entries()) {
        println!("{id}: {e}");
    }
    println!("elimination order: {}", form.elimination_order().join(" "));

    let mg = MarkedGraph::new(g.clone(), "b").unwrap();
    let d = delta(&mg).unwrap();
    let r = derationalizer(&mg).unwrap();
    println!("delta_b = {d}, derationalizer = {r}");

    let filled = surger(&mg, &r).unwrap();
    println!("surgered along {r}: {} vertices, det = {}", filled.len(), tree_determinant(&filled));

    let other = surger(&mg, &rational(-7, 3)).unwrap();
    print!("surgered along -7/3:\n{}", other.serialize());
}
