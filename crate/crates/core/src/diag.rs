//! Rooted diagonalisation of the tree's quadratic form, definiteness,
//! de-rationalisers, splitting along an edge and surgery along a
//! Hirzebruch-Jung chain.

use std::collections::VecDeque;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{hj_expand, HjError, Rational};
use crate::graph::{GraphError, PlumbingGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("diagonal entry at `{vertex}` is zero before its elimination")]
    Degenerate { vertex: String },
    #[error("graph is not negative-definite")]
    NotNegativeDefinite,
    #[error("no edge `{0}` -- `{1}`")]
    NoSuchEdge(String, String),
    #[error("0-surgery does not give a plumbing tree")]
    ZeroSurgery,
    #[error(transparent)]
    ContinuedFraction(#[from] HjError),
}

/// The diagonal of a congruent diagonal matrix obtained by eliminating
/// vertices from the leaves toward a chosen root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    ids: Vec<String>,
    root: usize,
    entries: Vec<Rational>,
    order: Vec<usize>,
}

impl DiagonalForm {
    pub fn root(&self) -> &str {
        &self.ids[self.root]
    }

    /// `Δ` at the root.
    pub fn root_entry(&self) -> &Rational {
        &self.entries[self.root]
    }

    /// Entries in declaration order of the graph's vertices.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn entry(&self, id: &str) -> Option<&Rational> {
        self.ids.iter().position(|x| x == id).map(|i| &self.entries[i])
    }

    /// Vertex ids from the first eliminated leaf to the root.
    pub fn elimination_order(&self) -> Vec<&str> {
        self.order.iter().map(|&v| self.ids[v].as_str()).collect()
    }

    pub fn product(&self) -> Rational {
        self.entries.iter().fold(Rational::one(), |acc, e| acc * e)
    }
}

/// Parent pointers and depths of a BFS from `root`.
fn bfs_tree(g: &PlumbingGraph, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let n = g.len();
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                parent[u] = Some(v);
                queue.push_back(u);
            }
        }
    }
    (parent, depth)
}

pub fn rooted_diagonalize(g: &PlumbingGraph, root: &str) -> Result<DiagonalForm, DiagError> {
    let root = g.require(root)?;
    rooted_diagonalize_at(g, root)
}

/// Deepest vertices go first; ties follow declaration order. Each eliminated
/// vertex passes `-1/entry` to its parent, and the root comes last.
pub fn rooted_diagonalize_at(g: &PlumbingGraph, root: usize) -> Result<DiagonalForm, DiagError> {
    let (parent, depth) = bfs_tree(g, root);
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| depth[b].cmp(&depth[a]).then(a.cmp(&b)));
    debug_assert_eq!(order.last(), Some(&root));

    let mut entries: Vec<Rational> = g
        .weights()
        .iter()
        .map(|&w| Rational::from_integer(w.into()))
        .collect();
    for &v in &order {
        let Some(p) = parent[v] else { continue };
        if entries[v].is_zero() {
            return Err(DiagError::Degenerate {
                vertex: g.id(v).to_string(),
            });
        }
        let shift = entries[v].recip();
        entries[p] -= shift;
    }
    Ok(DiagonalForm {
        ids: g.ids().to_vec(),
        root,
        entries,
        order,
    })
}

/// Negative-definite iff a rooted diagonalisation succeeds with every
/// entry negative (congruence preserves the signature). A zero met before
/// elimination means the form is not definite.
pub fn is_negative_definite(g: &PlumbingGraph) -> bool {
    match rooted_diagonalize_at(g, 0) {
        Ok(form) => form.entries().iter().all(|e| e.is_negative()),
        Err(_) => false,
    }
}

/// A tree with a distinguished boundary vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    graph: PlumbingGraph,
    mark: String,
}

impl MarkedGraph {
    pub fn new(graph: PlumbingGraph, mark: &str) -> Result<Self, GraphError> {
        graph.require(mark)?;
        Ok(MarkedGraph {
            graph,
            mark: mark.to_string(),
        })
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn mark(&self) -> &str {
        &self.mark
    }
}

/// Cuts the edge `v - w`, returning the component of `v` marked at `v` and
/// the component of `w` marked at `w`.
pub fn split(g: &PlumbingGraph, v: &str, w: &str) -> Result<(MarkedGraph, MarkedGraph), DiagError> {
    let (iv, iw) = (g.require(v)?, g.require(w)?);
    if !g.has_edge(iv, iw) {
        return Err(DiagError::NoSuchEdge(v.to_string(), w.to_string()));
    }
    let side = |start: usize, banned: usize| -> Vec<usize> {
        let mut seen = vec![false; g.len()];
        seen[start] = true;
        seen[banned] = true;
        let mut stack = vec![start];
        let mut out = vec![start];
        while let Some(x) = stack.pop() {
            for &u in g.neighbors(x) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                    out.push(u);
                }
            }
        }
        out
    };
    let gv = g.induced(&side(iv, iw))?;
    let gw = g.induced(&side(iw, iv))?;
    Ok((MarkedGraph::new(gv, v)?, MarkedGraph::new(gw, w)?))
}

/// `Δ_v`: the mark's entry after diagonalising into the mark.
pub fn delta(mg: &MarkedGraph) -> Result<Rational, DiagError> {
    if !is_negative_definite(&mg.graph) {
        return Err(DiagError::NotNegativeDefinite);
    }
    let form = rooted_diagonalize(&mg.graph, &mg.mark)?;
    let d = form.root_entry().clone();
    assert!(!d.is_zero(), "a negative-definite form has no zero pivot");
    Ok(d)
}

/// The de-rationaliser `1/Δ_v` of the marked vertex.
pub fn derationalizer(mg: &MarkedGraph) -> Result<Rational, DiagError> {
    Ok(delta(mg)?.recip())
}

/// `Γ^v(r)`: attaches at the mark a chain whose weights are the
/// Hirzebruch-Jung expansion of `r`, first entry adjacent to the mark.
/// Chain ids are `<mark>_s1, <mark>_s2, ...` (with extra underscores if
/// those are taken). The result is not minimalized.
pub fn surger(mg: &MarkedGraph, r: &Rational) -> Result<PlumbingGraph, DiagError> {
    if r.is_zero() {
        return Err(DiagError::ZeroSurgery);
    }
    let chain = hj_expand(r)?;
    let g = &mg.graph;
    let mut prefix = format!("{}_s", mg.mark);
    let fresh = |prefix: &str| (1..=chain.len()).all(|k| g.index_of(&format!("{prefix}{k}")).is_none());
    while !fresh(&prefix) {
        prefix.push('_');
    }

    let mut vertices: Vec<(String, i64)> = g
        .ids()
        .iter()
        .cloned()
        .zip(g.weights().iter().copied())
        .collect();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| (g.id(a).to_string(), g.id(b).to_string()))
        .collect();
    let mut prev = mg.mark.clone();
    for (k, &a) in chain.entries().iter().enumerate() {
        let id = format!("{prefix}{}", k + 1);
        vertices.push((id.clone(), a));
        edges.push((prev, id.clone()));
        prev = id;
    }
    Ok(PlumbingGraph::new(vertices, edges)?)
}
