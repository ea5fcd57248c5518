//! Named graphs that recur in tests, examples and documentation.

use crate::graph::PlumbingGraph;

/// The negative-definite E8 tree (Poincaré homology sphere). The center `X`
/// carries legs `x1-x2-x3-x4`, `y1-y2` and `z1`; every weight is `-2`.
pub fn e8() -> PlumbingGraph {
    PlumbingGraph::from_parts(
        &[
            ("X", -2),
            ("x1", -2),
            ("x2", -2),
            ("x3", -2),
            ("x4", -2),
            ("z1", -2),
            ("y1", -2),
            ("y2", -2),
        ],
        &[
            ("X", "x1"),
            ("x1", "x2"),
            ("x2", "x3"),
            ("x3", "x4"),
            ("X", "z1"),
            ("X", "y1"),
            ("y1", "y2"),
        ],
    )
    .expect("E8 is a tree")
}

/// E8 with one extra vertex `w` of the given weight attached at `at`.
pub fn e8_with(at: &str, weight: i64) -> PlumbingGraph {
    e8().with_leaf(at, "w", weight).expect("attachment point is an E8 vertex")
}

/// Six-vertex tree with weights `-3, -6, -2, -5, -3, -4` on `a..f` and
/// edges `a-b, b-d, c-d, d-e, e-f`. Diagonalising into `b` gives
/// `Δ_b = -1481/273`.
pub fn six_vertex_example() -> PlumbingGraph {
    PlumbingGraph::from_parts(
        &[("a", -3), ("b", -6), ("c", -2), ("d", -5), ("e", -3), ("f", -4)],
        &[("a", "b"), ("b", "d"), ("c", "d"), ("d", "e"), ("e", "f")],
    )
    .expect("example is a tree")
}

/// Star with a `center` weight and one leaf per entry of `leaves`.
pub fn star(center: i64, leaves: &[i64]) -> PlumbingGraph {
    let mut vertices = vec![("c".to_string(), center)];
    let mut edges = Vec::new();
    for (i, &w) in leaves.iter().enumerate() {
        let id = format!("l{}", i + 1);
        edges.push(("c".to_string(), id.clone()));
        vertices.push((id, w));
    }
    PlumbingGraph::new(vertices, edges).expect("a star is a tree")
}
