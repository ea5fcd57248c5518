//! Mumford's presentation of the fundamental group of a plumbed manifold
//! and its abelianization.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::PlumbingGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown vertex `{0}` in cyclic ordering")]
    UnknownVertex(String),
    #[error("ordering for `{vertex}` is not a permutation of its neighbours")]
    NotAPermutation { vertex: String },
}

/// A word `g1^e1 g2^e2 ...` with nonzero exponents, read as equal to 1.
pub type Word = Vec<(String, i64)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Word>,
    /// Chosen cyclic order of neighbours, per vertex in declaration order.
    pub neighbor_ordering: Vec<(String, Vec<String>)>,
}

fn render_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|(g, e)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

impl GroupPresentation {
    /// `gens: a, b, ...` followed by one relation word per line.
    pub fn render(&self) -> String {
        let mut out = format!("gens: {}\n", self.generators.join(", "));
        for r in &self.relations {
            out.push_str(&render_word(r));
            out.push('\n');
        }
        out
    }
}

/// One generator per vertex; per vertex the relation
/// `v^{-w(v)} = v_1 v_2 ... v_k` over its cyclically ordered neighbours,
/// stored as `v^{-w(v)} v_k^{-1} ... v_1^{-1}`; per edge the commutator
/// `a b a^{-1} b^{-1}`. The default order of neighbours is declaration order.
pub fn mumford_presentation(
    g: &PlumbingGraph,
    ordering: Option<&HashMap<String, Vec<String>>>,
) -> Result<GroupPresentation, PresentationError> {
    let mut chosen: Vec<Vec<usize>> = (0..g.len()).map(|v| g.neighbors(v).to_vec()).collect();
    if let Some(map) = ordering {
        for (id, order) in map {
            let v = g
                .index_of(id)
                .ok_or_else(|| PresentationError::UnknownVertex(id.clone()))?;
            let mut idx = Vec::with_capacity(order.len());
            for u in order {
                idx.push(
                    g.index_of(u)
                        .ok_or_else(|| PresentationError::UnknownVertex(u.clone()))?,
                );
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(PresentationError::NotAPermutation { vertex: id.clone() });
            }
            chosen[v] = idx;
        }
    }

    let name = |v: usize| g.id(v).to_string();
    let mut relations = Vec::with_capacity(2 * g.len());
    for (v, order) in chosen.iter().enumerate() {
        let mut word: Word = Vec::new();
        if g.weight(v) != 0 {
            word.push((name(v), -g.weight(v)));
        }
        for &u in order.iter().rev() {
            word.push((name(u), -1));
        }
        relations.push(word);
    }
    for (a, b) in g.edges() {
        relations.push(vec![(name(a), 1), (name(b), 1), (name(a), -1), (name(b), -1)]);
    }
    Ok(GroupPresentation {
        generators: g.ids().to_vec(),
        relations,
        neighbor_ordering: chosen
            .iter()
            .enumerate()
            .map(|(v, list)| (name(v), list.iter().map(|&u| name(u)).collect()))
            .collect(),
    })
}

/// Invariant factors of `H_1`: the Smith normal form diagonal of the
/// abelianized relation matrix, one entry per generator, each dividing the
/// next. Zeros stand for free summands.
pub fn abelianization_invariants(p: &GroupPresentation) -> Vec<BigInt> {
    let col: HashMap<&str, usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.as_str(), i))
        .collect();
    let mut rows: Vec<Vec<BigInt>> = p
        .relations
        .iter()
        .map(|w| {
            let mut row = vec![BigInt::zero(); p.generators.len()];
            for (g, e) in w {
                row[col[g.as_str()]] += *e;
            }
            row
        })
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    let mut d = smith_diagonal(&mut rows, p.generators.len());
    d.resize(p.generators.len(), BigInt::zero());
    d
}

/// Diagonal of the Smith normal form (length `min(rows, cols)`),
/// normalised to non-negative entries with `d_i | d_{i+1}`.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(m: &mut [Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let rank_bound = rows.min(cols);
    let mut diag = Vec::with_capacity(rank_bound);
    for t in 0..rank_bound {
        // pick the smallest nonzero entry in the remaining block as pivot
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(rank_bound, BigInt::zero());
                return normalise(diag);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&pivot);
                for j in t..cols {
                    let delta = &q * &m[t][j];
                    m[i][j] -= delta;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&pivot);
                for i in t..rows {
                    let delta = &q * &m[i][t];
                    m[i][j] -= delta;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &pivot).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let x = m[i][j].clone();
                        m[t][j] += x;
                    }
                }
                None => {
                    diag.push(pivot.abs());
                    break;
                }
            }
        }
    }
    normalise(diag)
}

// non-zero entries first in divisibility order, zeros last
fn normalise(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let zeros = d.iter().filter(|x| x.is_zero()).count();
    d.retain(|x| !x.is_zero());
    d.sort();
    d.extend(std::iter::repeat_n(BigInt::zero(), zeros));
    d
}
