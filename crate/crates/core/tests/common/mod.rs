#![allow(dead_code)]

use plumbing::diag::is_negative_definite;
use plumbing::graph::PlumbingGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tree from a parent list: vertex `i > 0` hangs off `parents[i - 1] < i`.
pub fn tree_from_parents(parents: &[usize], weights: &[i64]) -> PlumbingGraph {
    let vertices: Vec<(String, i64)> = weights.iter().enumerate().map(|(i, &w)| (format!("v{i}"), w)).collect();
    let edges: Vec<(String, String)> = parents
        .iter()
        .enumerate()
        .map(|(i, &p)| (format!("v{p}"), format!("v{}", i + 1)))
        .collect();
    PlumbingGraph::new(vertices, edges).unwrap()
}

pub fn random_tree(rng: &mut ChaCha8Rng, max_vertices: usize, wmin: i64, wmax: i64) -> PlumbingGraph {
    let n = rng.gen_range(1..=max_vertices);
    let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(wmin..=wmax)).collect();
    tree_from_parents(&parents, &weights)
}

pub fn random_nd_tree(rng: &mut ChaCha8Rng, max_vertices: usize, wmin: i64, wmax: i64) -> PlumbingGraph {
    loop {
        let g = random_tree(rng, max_vertices, wmin, wmax);
        if is_negative_definite(&g) {
            return g;
        }
    }
}

/// Determinant by cofactor expansion along the first row, for small matrices.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] as i128 * cofactor_det(&minor);
    }
    total
}

/// Negative-definiteness by Sylvester's criterion on leading minors.
pub fn sylvester_nd(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = cofactor_det(&minor);
        if k % 2 == 1 {
            d < 0
        } else {
            d > 0
        }
    })
}
