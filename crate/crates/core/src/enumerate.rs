//! Exhaustive enumeration of small weighted trees up to isomorphism, and
//! batch classification over them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{classify, ClassificationReport};
use crate::diag::is_negative_definite;
use crate::graph::{is_minimal, PlumbingGraph};

pub const DEFAULT_MAX_VERTICES: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("max_vertices {requested} exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("empty weight range {min}..{max}")]
    EmptyRange { min: i64, max: i64 },
}

/// Centers of a tree (one or two vertices minimising eccentricity).
fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    let mut c = layer;
    c.sort_unstable();
    c
}

// AHU code of the subtree at `v` plus the vertex order it induces
fn encode(adj: &[Vec<usize>], labels: &[i64], v: usize, parent: Option<usize>) -> (String, Vec<usize>) {
    let mut kids: Vec<(String, Vec<usize>)> = adj[v]
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| encode(adj, labels, u, Some(v)))
        .collect();
    kids.sort();
    let mut code = format!("({}", labels[v]);
    let mut order = vec![v];
    for (c, o) in kids {
        code.push_str(&c);
        order.extend(o);
    }
    code.push(')');
    (code, order)
}

/// Canonical encoding of a vertex-labelled tree and a vertex order under
/// which isomorphic trees coincide.
pub fn canonical_form(adj: &[Vec<usize>], labels: &[i64]) -> (String, Vec<usize>) {
    centers(adj)
        .into_iter()
        .map(|c| encode(adj, labels, c, None))
        .min()
        .expect("a tree has a center")
}

fn adjacency(g: &PlumbingGraph) -> Vec<Vec<usize>> {
    (0..g.len()).map(|v| g.neighbors(v).to_vec()).collect()
}

/// Canonical encoding of a weighted plumbing tree.
pub fn canonical_code(g: &PlumbingGraph) -> String {
    canonical_form(&adjacency(g), g.weights()).0
}

/// The tree relabelled `v0, v1, ...` in canonical order.
pub fn canonical_graph(g: &PlumbingGraph) -> PlumbingGraph {
    let (_, order) = canonical_form(&adjacency(g), g.weights());
    build(&adjacency(g), g.weights(), &order)
}

fn build(adj: &[Vec<usize>], weights: &[i64], order: &[usize]) -> PlumbingGraph {
    let mut pos = vec![0; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let vertices: Vec<(String, i64)> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (format!("v{i}"), weights[v]))
        .collect();
    let mut edges = Vec::new();
    for (v, list) in adj.iter().enumerate() {
        for &u in list {
            if v < u {
                edges.push((format!("v{}", pos[v]), format!("v{}", pos[u])));
            }
        }
    }
    PlumbingGraph::new(vertices, edges).expect("enumerated shapes are trees")
}

/// Unlabelled trees on exactly `n` vertices, as adjacency lists.
pub fn unlabeled_trees(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, Vec<Vec<usize>>> = BTreeMap::new();
    level.insert("(0)".into(), vec![Vec::new()]);
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for adj in level.values() {
            for v in 0..adj.len() {
                let mut grown = adj.clone();
                let leaf = grown.len();
                grown.push(vec![v]);
                grown[v].push(leaf);
                let zeros = vec![0; grown.len()];
                let (code, _) = canonical_form(&grown, &zeros);
                next.entry(code).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Every weighted tree with `1..=max_vertices` vertices and weights in
/// `weight_min..=weight_max`, one per isomorphism class, ordered by vertex
/// count and then canonical code.
pub fn weighted_trees(max_vertices: usize, weight_min: i64, weight_max: i64) -> Vec<PlumbingGraph> {
    let span = (weight_max - weight_min + 1) as usize;
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let mut seen: BTreeMap<String, PlumbingGraph> = BTreeMap::new();
        for adj in unlabeled_trees(n) {
            let total = span.pow(n as u32);
            for mut k in 0..total {
                let weights: Vec<i64> = (0..n)
                    .map(|_| {
                        let w = weight_min + (k % span) as i64;
                        k /= span;
                        w
                    })
                    .collect();
                let (code, order) = canonical_form(&adj, &weights);
                seen.entry(code).or_insert_with(|| build(&adj, &weights, &order));
            }
        }
        out.extend(seen.into_values());
    }
    out
}

/// Enumerates weighted trees, keeps the negative-definite minimal ones and
/// classifies each. Classification runs in parallel; the output order is
/// that of [`weighted_trees`].
pub fn enumerate_and_classify(
    max_vertices: usize,
    weight_min: i64,
    weight_max: i64,
) -> Result<Vec<(PlumbingGraph, ClassificationReport)>, EnumerateError> {
    enumerate_with_cap(max_vertices, weight_min, weight_max, DEFAULT_MAX_VERTICES)
}

pub fn enumerate_with_cap(
    max_vertices: usize,
    weight_min: i64,
    weight_max: i64,
    cap: usize,
) -> Result<Vec<(PlumbingGraph, ClassificationReport)>, EnumerateError> {
    if max_vertices > cap {
        return Err(EnumerateError::CapExceeded {
            requested: max_vertices,
            cap,
        });
    }
    if weight_min > weight_max {
        return Err(EnumerateError::EmptyRange {
            min: weight_min,
            max: weight_max,
        });
    }
    let graphs = weighted_trees(max_vertices, weight_min, weight_max);
    Ok(graphs
        .into_par_iter()
        .filter(|g| is_minimal(g) && is_negative_definite(g))
        .map(|g| {
            let report = classify(&g);
            (g, report)
        })
        .collect())
}
