//! Plumbing trees: the data model, the line-oriented file format, vertex
//! profiles (deficiency, shape, quality), the intersection form and the
//! `±1` blow-down move.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid vertex id `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidId(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}` -- `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge `{0}` -- `{1}` closes a cycle")]
    Cycle(String, String),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowDownError {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{id}` has weight {weight}; only +1 and -1 vertices blow down")]
    NotUnitWeight { id: String, weight: i64 },
    #[error("vertex `{id}` has valence {valence}; blow-down needs valence 1 or 2")]
    Valence { id: String, valence: usize },
}

pub(crate) fn is_valid_id(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A weighted tree with integer Euler numbers. Vertex order is declaration
/// order and is kept by every transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    ids: Vec<String>,
    weights: Vec<i64>,
    // neighbour lists, ascending by vertex index
    adj: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl PlumbingGraph {
    /// Builds and validates a tree from `(id, weight)` pairs and id pairs.
    pub fn new<S, T>(vertices: Vec<(S, i64)>, edges: Vec<(T, T)>) -> Result<Self, GraphError>
    where
        S: Into<String>,
        T: AsRef<str>,
    {
        let mut ids = Vec::with_capacity(vertices.len());
        let mut weights = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for (id, w) in vertices {
            let id = id.into();
            if !is_valid_id(&id) {
                return Err(GraphError::InvalidId(id));
            }
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
            ids.push(id);
            weights.push(w);
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            pairs.push((ia, ib));
        }
        Self::from_indexed(ids, weights, index, &pairs)
    }

    fn from_indexed(
        ids: Vec<String>,
        weights: Vec<i64>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let n = ids.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(ids[a].clone()));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(ids[a].clone(), ids[b].clone()));
            }
            if !uf.union(a, b) {
                return Err(GraphError::Cycle(ids[a].clone(), ids[b].clone()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let components = uf.components();
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(PlumbingGraph {
            ids,
            weights,
            adj,
            index,
        })
    }

    /// Convenience constructor from borrowed literals.
    pub fn from_parts(vertices: &[(&str, i64)], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        Self::new(vertices.to_vec(), edges.to_vec())
    }

    /// A linear chain `v1 - v2 - ... - vk` with the given weights.
    pub fn chain(weights: &[i64]) -> Result<Self, GraphError> {
        let vertices: Vec<(String, i64)> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (format!("v{}", i + 1), w))
            .collect();
        let edges: Vec<(String, String)> = (1..weights.len())
            .map(|i| (format!("v{i}"), format!("v{}", i + 1)))
            .collect();
        Self::new(vertices, edges)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    /// Always false for a validated graph; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.weights[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index_of(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (a, list) in self.adj.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A copy with one weight replaced.
    pub fn with_weight(&self, v: usize, weight: i64) -> Self {
        let mut g = self.clone();
        g.weights[v] = weight;
        g
    }

    /// A copy with a new vertex attached to `at`.
    pub fn with_leaf(&self, at: &str, id: &str, weight: i64) -> Result<Self, GraphError> {
        let at = self.require(at)?;
        let mut vertices: Vec<(String, i64)> = self
            .ids
            .iter()
            .cloned()
            .zip(self.weights.iter().copied())
            .collect();
        vertices.push((id.to_string(), weight));
        let mut edges: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
            .collect();
        edges.push((self.ids[at].clone(), id.to_string()));
        Self::new(vertices, edges)
    }

    /// The subgraph induced on `keep` (given in any order; declaration order
    /// is preserved). The induced subgraph must itself be a tree.
    pub fn induced(&self, keep: &[usize]) -> Result<Self, GraphError> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let ids: Vec<String> = keep.iter().map(|&v| self.ids[v].clone()).collect();
        let weights: Vec<i64> = keep.iter().map(|&v| self.weights[v]).collect();
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let pairs: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| remap[a] != usize::MAX && remap[b] != usize::MAX)
            .map(|(a, b)| (remap[a], remap[b]))
            .collect();
        Self::from_indexed(ids, weights, index, &pairs)
    }

    /// The graph with vertex ids replaced (same order, same edges).
    pub fn relabeled(&self, ids: Vec<String>) -> Result<Self, GraphError> {
        assert_eq!(ids.len(), self.len(), "relabeling must keep the vertex count");
        let vertices: Vec<(String, i64)> = ids.iter().cloned().zip(self.weights.iter().copied()).collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| (ids[a].clone(), ids[b].clone()))
            .collect();
        Self::new(vertices, edges)
    }

    /// The same tree with vertices declared in the order given by `order`
    /// (a permutation of the current indices).
    pub fn reordered(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.len());
        let vertices: Vec<(String, i64)> = order
            .iter()
            .map(|&v| (self.ids[v].clone(), self.weights[v]))
            .collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| (self.ids[a].clone(), self.ids[b].clone()))
            .collect();
        Self::new(vertices, edges).expect("reordering preserves validity")
    }

    /// Canonical text form: vertices in declaration order, then edges with
    /// endpoints and edge list both in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (id, w) in self.ids.iter().zip(&self.weights) {
            out.push_str(&format!("vertex {id} {w}\n"));
        }
        let mut edges: Vec<(&str, &str)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (self.ids[a].as_str(), self.ids[b].as_str());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort_unstable();
        for (a, b) in edges {
            out.push_str(&format!("edge {a} {b}\n"));
        }
        out
    }
}

impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for PlumbingGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Parses the line-oriented graph format:
///
/// ```text
/// # comment
/// vertex <id> <weight>
/// edge <id> <id>
/// ```
///
/// `edge` lines may precede the `vertex` lines that declare their endpoints.
pub fn parse_graph(text: &str) -> Result<PlumbingGraph, GraphError> {
    let mut vertices: Vec<(String, i64)> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut declared: HashMap<String, ()> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens = tokenize(raw);
        let syntax = |column: usize, message: String| GraphError::Syntax {
            line,
            column,
            message,
        };
        let (col0, kw) = tokens[0];
        match kw {
            "vertex" => {
                if tokens.len() != 3 {
                    let col = tokens.get(3).map_or(raw.len() + 1, |t| t.0);
                    return Err(syntax(col, format!("`vertex` takes 2 arguments, found {}", tokens.len() - 1)));
                }
                let (cid, id) = tokens[1];
                if !is_valid_id(id) {
                    return Err(syntax(cid, format!("invalid vertex id `{id}`")));
                }
                let (cw, w) = tokens[2];
                let weight: i64 = w
                    .parse()
                    .map_err(|_| syntax(cw, format!("invalid integer weight `{w}`")))?;
                if declared.insert(id.to_string(), ()).is_some() {
                    return Err(GraphError::DuplicateVertex(id.to_string()));
                }
                vertices.push((id.to_string(), weight));
            }
            "edge" => {
                if tokens.len() != 3 {
                    let col = tokens.get(3).map_or(raw.len() + 1, |t| t.0);
                    return Err(syntax(col, format!("`edge` takes 2 arguments, found {}", tokens.len() - 1)));
                }
                for &(c, id) in &tokens[1..] {
                    if !is_valid_id(id) {
                        return Err(syntax(c, format!("invalid vertex id `{id}`")));
                    }
                }
                edges.push((tokens[1].1.to_string(), tokens[2].1.to_string()));
            }
            other => {
                return Err(syntax(col0, format!("expected `vertex` or `edge`, found `{other}`")));
            }
        }
    }
    PlumbingGraph::new(vertices, edges)
}

// whitespace-separated tokens with 1-based byte columns
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Isolated,
    Leaf,
    Bamboo,
    Node,
}

/// Disjoint refinement of good / bad / very bad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quality {
    Good,
    Bad,
    VeryBad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexProfile {
    pub id: String,
    pub weight: i64,
    pub valence: usize,
    /// `valence - |weight|`
    pub deficiency: i64,
    pub shape: Shape,
    pub quality: Quality,
}

impl VertexProfile {
    pub fn is_good(&self) -> bool {
        self.deficiency <= 0
    }

    /// Bad in the inclusive sense `d >= 1` (very bad vertices are also bad).
    pub fn is_bad(&self) -> bool {
        self.deficiency >= 1
    }

    pub fn is_very_bad(&self) -> bool {
        self.deficiency >= 2
    }
}

impl PlumbingGraph {
    pub fn deficiency(&self, v: usize) -> i64 {
        self.valence(v) as i64 - self.weights[v].abs()
    }

    pub fn profile(&self, v: usize) -> VertexProfile {
        let valence = self.valence(v);
        let deficiency = self.deficiency(v);
        let shape = match valence {
            0 => Shape::Isolated,
            1 => Shape::Leaf,
            2 => Shape::Bamboo,
            _ => Shape::Node,
        };
        let quality = match deficiency {
            d if d <= 0 => Quality::Good,
            1 => Quality::Bad,
            _ => Quality::VeryBad,
        };
        VertexProfile {
            id: self.ids[v].clone(),
            weight: self.weights[v],
            valence,
            deficiency,
            shape,
            quality,
        }
    }

    pub fn profiles(&self) -> Vec<VertexProfile> {
        (0..self.len()).map(|v| self.profile(v)).collect()
    }
}

pub fn vertex_profile(g: &PlumbingGraph, id: &str) -> Result<VertexProfile, GraphError> {
    Ok(g.profile(g.require(id)?))
}

/// Symmetric integer matrix: weights on the diagonal, 1 on edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

pub fn intersection_matrix(g: &PlumbingGraph) -> IntersectionMatrix {
    let n = g.len();
    let mut entries = vec![vec![0i64; n]; n];
    for (v, row) in entries.iter_mut().enumerate() {
        row[v] = g.weight(v);
        for &u in g.neighbors(v) {
            row[u] = 1;
        }
    }
    IntersectionMatrix { entries }
}

fn is_minimality_violation(g: &PlumbingGraph, v: usize) -> bool {
    g.weight(v) == -1 && matches!(g.valence(v), 1 | 2)
}

/// No vertex of valence one or two carries weight `-1`.
pub fn is_minimal(g: &PlumbingGraph) -> bool {
    !(0..g.len()).any(|v| is_minimality_violation(g, v))
}

/// Vertices whose `-1` weight breaks minimality, in declaration order.
pub fn minimality_violations(g: &PlumbingGraph) -> Vec<usize> {
    (0..g.len()).filter(|&v| is_minimality_violation(g, v)).collect()
}

/// Removes a `±1` vertex of valence 1 or 2. Each neighbour's weight moves
/// by `-ε`, and the two neighbours of a bamboo become adjacent.
pub fn blow_down_once(g: &PlumbingGraph, id: &str) -> Result<PlumbingGraph, BlowDownError> {
    let v = g
        .index_of(id)
        .ok_or_else(|| BlowDownError::UnknownVertex(id.to_string()))?;
    let eps = g.weight(v);
    if eps != 1 && eps != -1 {
        return Err(BlowDownError::NotUnitWeight {
            id: id.to_string(),
            weight: eps,
        });
    }
    let nbrs = g.neighbors(v).to_vec();
    if nbrs.is_empty() || nbrs.len() > 2 {
        return Err(BlowDownError::Valence {
            id: id.to_string(),
            valence: nbrs.len(),
        });
    }
    if let [a, b] = nbrs[..] {
        // in a tree the two neighbours of a bamboo lie in different components of g - v
        assert!(!g.has_edge(a, b), "bamboo neighbours already adjacent");
    }

    let keep: Vec<usize> = (0..g.len()).filter(|&u| u != v).collect();
    let vertices: Vec<(String, i64)> = keep
        .iter()
        .map(|&u| {
            let w = if nbrs.contains(&u) { g.weight(u) - eps } else { g.weight(u) };
            (g.id(u).to_string(), w)
        })
        .collect();
    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| a != v && b != v)
        .map(|(a, b)| (g.id(a), g.id(b)))
        .collect();
    if let [a, b] = nbrs[..] {
        edges.push((g.id(a), g.id(b)));
    }
    Ok(PlumbingGraph::new(vertices, edges).expect("blow-down of a tree is a tree"))
}

fn first_blow_down_candidate(g: &PlumbingGraph) -> Option<usize> {
    (0..g.len()).find(|&v| g.weight(v).abs() == 1 && matches!(g.valence(v), 1 | 2))
}

/// Blows down `±1` vertices of valence 1 or 2 (first in declaration order
/// each round) until none remain. The result is minimal.
///
/// Isolated vertices are never blown down, so the graph never becomes empty.
pub fn minimalize(g: &PlumbingGraph) -> PlumbingGraph {
    let mut cur = g.clone();
    while let Some(v) = first_blow_down_candidate(&cur) {
        let id = cur.id(v).to_string();
        cur = blow_down_once(&cur, &id).expect("candidate is eligible");
    }
    debug_assert!(is_minimal(&cur));
    cur
}
