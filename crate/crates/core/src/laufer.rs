//! Laufer's algorithm for the minimal (Artin) cycle, the weight function
//! `χ`, and the lattice-cohomology L-space verdict `χ(z_min) = 1`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diag::is_negative_definite;
use crate::graph::{GraphError, PlumbingGraph};

/// Integer vector over the vertices of one graph, stored densely in the
/// graph's declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coeffs: Vec<i64>,
}

impl LatticeVector {
    pub fn zeros(n: usize) -> Self {
        LatticeVector { coeffs: vec![0; n] }
    }

    /// `z_0 = Σ E_v`.
    pub fn ones(n: usize) -> Self {
        LatticeVector { coeffs: vec![1; n] }
    }

    pub fn basis(n: usize, v: usize) -> Self {
        let mut e = Self::zeros(n);
        e.coeffs[v] = 1;
        e
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        LatticeVector { coeffs }
    }

    /// Builds a vector from `(id, coefficient)` pairs; missing ids are 0.
    pub fn from_named(g: &PlumbingGraph, terms: &[(&str, i64)]) -> Result<Self, GraphError> {
        let mut v = Self::zeros(g.len());
        for &(id, c) in terms {
            v.coeffs[g.require(id)?] += c;
        }
        Ok(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, v: usize) -> i64 {
        self.coeffs[v]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_basis(&mut self, v: usize) {
        self.coeffs[v] += 1;
    }

    /// `id:coeff,...` in declaration order.
    pub fn render(&self, g: &PlumbingGraph) -> String {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(v, c)| format!("{}:{c}", g.id(v)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn check_dim(g: &PlumbingGraph, l: &LatticeVector) {
    assert_eq!(l.len(), g.len(), "lattice vector does not match the graph");
}

/// Coefficients `k_v = -w(v) - 2`. As a functional, `K` evaluates on `E_v`
/// to `k_v` (adjunction), which is how `χ` uses it.
pub fn canonical_vector(g: &PlumbingGraph) -> LatticeVector {
    LatticeVector::from_coeffs(g.weights().iter().map(|&w| -w - 2).collect())
}

/// `⟨a, E_v⟩`.
pub fn pairing_with_basis(g: &PlumbingGraph, a: &LatticeVector, v: usize) -> i64 {
    check_dim(g, a);
    g.weight(v) * a.get(v) + g.neighbors(v).iter().map(|&u| a.get(u)).sum::<i64>()
}

/// `aᵀ Γ b`.
pub fn pairing(g: &PlumbingGraph, a: &LatticeVector, b: &LatticeVector) -> i64 {
    check_dim(g, b);
    (0..g.len()).map(|v| pairing_with_basis(g, a, v) * b.get(v)).sum()
}

/// `χ(l) = -(⟨l, l⟩ + K(l)) / 2`, with `K(l) = Σ k_v l_v`.
pub fn chi(g: &PlumbingGraph, l: &LatticeVector) -> i64 {
    let k = canonical_vector(g);
    let kl: i64 = k.coeffs().iter().zip(l.coeffs()).map(|(a, b)| a * b).sum();
    let twice = pairing(g, l, l) + kl;
    // Σ w_v (l_v² - l_v) + 2·(edge terms) is always even
    assert!(twice % 2 == 0, "parity of <l,l> + K(l) must be even");
    -twice / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Lowest declaration index among the candidates.
    #[default]
    First,
    /// Highest declaration index.
    Last,
    /// Largest pairing, then lowest index.
    MaxPairing,
    /// Uniform choice from a ChaCha stream with the given seed.
    SeededRandom(u64),
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::First => write!(f, "first"),
            TieBreak::Last => write!(f, "last"),
            TieBreak::MaxPairing => write!(f, "max-pairing"),
            TieBreak::SeededRandom(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(TieBreak::First),
            "last" => Ok(TieBreak::Last),
            "max-pairing" => Ok(TieBreak::MaxPairing),
            _ => match s.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(TieBreak::SeededRandom)
                    .map_err(|_| format!("bad seed in `{s}`")),
                None => Err(format!(
                    "unknown tie-break `{s}` (first, last, max-pairing, random:<seed>)"
                )),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LauferOptions {
    pub tie_break: TieBreak,
    pub trace: bool,
    pub early_exit: bool,
    /// Run on graphs that are not negative-definite. Termination is then
    /// not guaranteed; the step limit ends the run instead of failing.
    pub allow_indefinite: bool,
}

impl Default for LauferOptions {
    fn default() -> Self {
        LauferOptions {
            tie_break: TieBreak::First,
            trace: false,
            early_exit: true,
            allow_indefinite: false,
        }
    }
}

impl LauferOptions {
    /// Full run to `z_min` with a trace, no early exit.
    pub fn full_trace() -> Self {
        LauferOptions {
            trace: true,
            early_exit: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    LatticeLSpace,
    NotLatticeLSpace,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::LatticeLSpace => "lattice_L_space",
            Verdict::NotLatticeLSpace => "not_lattice_L_space",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terminal {
    Converged,
    ChiDroppedEarlyExit,
    StepLimit,
}

impl Terminal {
    pub fn as_str(self) -> &'static str {
        match self {
            Terminal::Converged => "converged",
            Terminal::ChiDroppedEarlyExit => "chi_dropped_early_exit",
            Terminal::StepLimit => "step_limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LauferStep {
    /// `i` for the cycle `z_i` reached by this step (starts at 1).
    pub index: usize,
    pub vertex: String,
    pub cycle_after: LatticeVector,
    pub chi_after: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LauferTrace {
    pub steps: Vec<LauferStep>,
    pub terminal: Terminal,
}

impl LauferTrace {
    /// One `step=<i> vertex=<id> chi=<n> cycle=<id:coeff,...>` line per step.
    pub fn render(&self, g: &PlumbingGraph) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "step={} vertex={} chi={} cycle={}\n",
                s.index,
                s.vertex,
                s.chi_after,
                s.cycle_after.render(g)
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LauferResult {
    /// Present iff the run converged.
    pub z_min: Option<LatticeVector>,
    /// `χ` at the last cycle reached.
    pub chi_min: i64,
    pub verdict: Verdict,
    pub terminal: Terminal,
    pub iterations: usize,
    /// The last cycle reached (equals `z_min` when converged).
    pub last_cycle: LatticeVector,
    pub trace: Option<LauferTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LauferError {
    #[error("graph is not negative-definite; Laufer's algorithm need not terminate")]
    NotNegativeDefinite,
    #[error("step limit of {limit} exceeded on a negative-definite graph")]
    StepLimitExceeded { limit: usize },
}

/// Generous backstop; on negative-definite inputs the run always ends far
/// below it.
fn step_limit(g: &PlumbingGraph) -> usize {
    let n = g.len();
    let max_w = g.weights().iter().map(|w| w.unsigned_abs() as usize).max().unwrap_or(1);
    1000 * n * n * (max_w + 2)
}

struct Chooser {
    tie_break: TieBreak,
    rng: Option<ChaCha8Rng>,
}

impl Chooser {
    fn new(tie_break: TieBreak) -> Self {
        let rng = match tie_break {
            TieBreak::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Chooser { tie_break, rng }
    }

    fn choose(&mut self, pairings: &[i64]) -> Option<usize> {
        let mut candidates = (0..pairings.len()).filter(|&v| pairings[v] > 0);
        match self.tie_break {
            TieBreak::First => candidates.next(),
            TieBreak::Last => candidates.next_back(),
            TieBreak::MaxPairing => candidates.fold(None, |best: Option<usize>, v| match best {
                Some(b) if pairings[b] >= pairings[v] => Some(b),
                _ => Some(v),
            }),
            TieBreak::SeededRandom(_) => {
                let all: Vec<usize> = candidates.collect();
                if all.is_empty() {
                    None
                } else {
                    let rng = self.rng.as_mut().expect("seeded");
                    Some(all[rng.gen_range(0..all.len())])
                }
            }
        }
    }
}

/// Starts at `z_0 = Σ E_v` and adds `E_v` for some `v` with `⟨z, E_v⟩ > 0`
/// until every pairing is `≤ 0`. With `early_exit`, stops as soon as `χ`
/// drops below 1.
pub fn laufer_run(g: &PlumbingGraph, opts: &LauferOptions) -> Result<LauferResult, LauferError> {
    if !opts.allow_indefinite && !is_negative_definite(g) {
        return Err(LauferError::NotNegativeDefinite);
    }
    let n = g.len();
    let mut z = LatticeVector::ones(n);
    let mut pairings: Vec<i64> = (0..n).map(|v| pairing_with_basis(g, &z, v)).collect();
    let mut chi_cur = chi(g, &z);
    assert_eq!(chi_cur, 1, "χ(z_0) = 1 on every tree");

    let limit = step_limit(g);
    let mut chooser = Chooser::new(opts.tie_break);
    let mut steps = Vec::new();
    let mut iterations = 0usize;

    let terminal = loop {
        let Some(v) = chooser.choose(&pairings) else {
            break Terminal::Converged;
        };
        if iterations >= limit {
            if opts.allow_indefinite {
                break Terminal::StepLimit;
            }
            return Err(LauferError::StepLimitExceeded { limit });
        }
        // χ(z + E_v) = χ(z) + 1 - ⟨z, E_v⟩
        let next_chi = chi_cur + 1 - pairings[v];
        debug_assert!(next_chi <= chi_cur);
        z.add_basis(v);
        pairings[v] += g.weight(v);
        for &u in g.neighbors(v) {
            pairings[u] += 1;
        }
        chi_cur = next_chi;
        iterations += 1;
        debug_assert_eq!(chi_cur, chi(g, &z));
        if opts.trace {
            steps.push(LauferStep {
                index: iterations,
                vertex: g.id(v).to_string(),
                cycle_after: z.clone(),
                chi_after: chi_cur,
            });
        }
        if opts.early_exit && chi_cur < 1 {
            break Terminal::ChiDroppedEarlyExit;
        }
    };

    let converged = terminal == Terminal::Converged;
    let verdict = if converged && chi_cur == 1 {
        Verdict::LatticeLSpace
    } else {
        Verdict::NotLatticeLSpace
    };
    Ok(LauferResult {
        z_min: converged.then(|| z.clone()),
        chi_min: chi_cur,
        verdict,
        terminal,
        iterations,
        last_cycle: z,
        trace: opts.trace.then_some(LauferTrace { steps, terminal }),
    })
}

/// Laufer's algorithm rewritten on integer labels, starting from the
/// deficiencies: while some label is positive, a label `≥ 2` means "not an
/// L-space"; otherwise a label-1 vertex `v` gets `w(v)` added and its
/// neighbours gain 1. All labels `≤ 0` means "L-space".
pub fn deficiency_iteration(g: &PlumbingGraph) -> Result<Verdict, LauferError> {
    if !is_negative_definite(g) {
        return Err(LauferError::NotNegativeDefinite);
    }
    // for negative weights, valence - |w| = valence + w = ⟨z_0, E_v⟩
    let mut labels: Vec<i64> = (0..g.len()).map(|v| g.deficiency(v)).collect();
    let limit = step_limit(g);
    for _ in 0..=limit {
        if labels.iter().any(|&d| d >= 2) {
            return Ok(Verdict::NotLatticeLSpace);
        }
        let Some(v) = labels.iter().position(|&d| d == 1) else {
            return Ok(Verdict::LatticeLSpace);
        };
        labels[v] += g.weight(v);
        for &u in g.neighbors(v) {
            labels[u] += 1;
        }
    }
    Err(LauferError::StepLimitExceeded { limit })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("no vector in [1, {box_bound}]^N pairs non-positively with every E_v; enlarge the box")]
    NoCandidate { box_bound: i64 },
    #[error("coordinatewise minimum of the candidates is not itself a candidate")]
    MinimumNotCandidate,
    #[error("box [1, {box_bound}]^{dim} is too large to scan")]
    TooLarge { box_bound: i64, dim: usize },
}

/// Test oracle for `z_min`: scans the box `[1, box_bound]^N` for vectors `x`
/// with `⟨x, E_v⟩ ≤ 0` for all `v`, and returns their coordinatewise
/// minimum after checking it is itself such a vector.
pub fn min_cycle_bruteforce(g: &PlumbingGraph, box_bound: i64) -> Result<LatticeVector, BruteForceError> {
    let n = g.len();
    let too_large = BruteForceError::TooLarge { box_bound, dim: n };
    let total = (box_bound.max(1) as u64)
        .checked_pow(n as u32)
        .ok_or(too_large.clone())?;
    if box_bound < 1 || total > 50_000_000 {
        return Err(too_large);
    }
    let is_candidate = |x: &LatticeVector| (0..n).all(|v| pairing_with_basis(g, x, v) <= 0);

    let mut x = LatticeVector::ones(n);
    let mut best: Option<Vec<i64>> = None;
    loop {
        if is_candidate(&x) {
            best = Some(match best {
                None => x.coeffs.clone(),
                Some(b) => b.iter().zip(&x.coeffs).map(|(a, c)| *a.min(c)).collect(),
            });
        }
        // odometer increment
        let mut i = 0;
        while i < n && x.coeffs[i] == box_bound {
            x.coeffs[i] = 1;
            i += 1;
        }
        if i == n {
            break;
        }
        x.coeffs[i] += 1;
    }
    let min = LatticeVector::from_coeffs(best.ok_or(BruteForceError::NoCandidate { box_bound })?);
    if !is_candidate(&min) {
        return Err(BruteForceError::MinimumNotCandidate);
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{e8, e8_with, six_vertex_example, star};

    fn e8_zmin(g: &PlumbingGraph) -> LatticeVector {
        LatticeVector::from_named(
            g,
            &[("X", 6), ("x1", 5), ("x2", 4), ("x3", 3), ("x4", 2), ("z1", 3), ("y1", 4), ("y2", 2)],
        )
        .unwrap()
    }

    #[test]
    fn canonical_vector_examples() {
        assert_eq!(canonical_vector(&e8()).coeffs(), &[0; 8]);
        assert_eq!(canonical_vector(&PlumbingGraph::chain(&[-5]).unwrap()).coeffs(), &[3]);
        assert_eq!(canonical_vector(&six_vertex_example()).coeffs(), &[1, 4, 0, 3, 1, 2]);
    }

    #[test]
    fn pairing_examples() {
        let g = e8();
        let ex = LatticeVector::basis(8, 0);
        assert_eq!(pairing(&g, &ex, &ex), -2);
        assert_eq!(pairing(&g, &ex, &LatticeVector::basis(8, 1)), 1);
        assert_eq!(pairing(&g, &LatticeVector::ones(8), &ex), g.deficiency(0));
        assert_eq!(pairing(&g, &LatticeVector::ones(8), &ex), 1);
    }

    #[test]
    fn chi_examples() {
        let g = six_vertex_example();
        assert_eq!(chi(&g, &LatticeVector::zeros(6)), 0);
        for v in 0..6 {
            assert_eq!(chi(&g, &LatticeVector::basis(6, v)), 1);
        }
        let g = e8();
        assert_eq!(chi(&g, &e8_zmin(&g)), 1);
    }

    #[test]
    fn e8_converges_in_21_steps() {
        let g = e8();
        let res = laufer_run(&g, &LauferOptions::full_trace()).unwrap();
        assert_eq!(res.iterations, 21);
        assert_eq!(res.z_min, Some(e8_zmin(&g)));
        assert_eq!(res.chi_min, 1);
        assert_eq!(res.verdict, Verdict::LatticeLSpace);
        let trace = res.trace.unwrap();
        assert_eq!(trace.steps.len(), 21);
        assert_eq!(trace.terminal, Terminal::Converged);
        assert_eq!(
            trace.render(&g).lines().next().unwrap(),
            "step=1 vertex=X chi=1 cycle=X:2,x1:1,x2:1,x3:1,x4:1,z1:1,y1:1,y2:1"
        );
    }

    #[test]
    fn single_vertex_is_immediate() {
        let g = PlumbingGraph::chain(&[-2]).unwrap();
        let res = laufer_run(&g, &LauferOptions::default()).unwrap();
        assert_eq!(res.iterations, 0);
        assert_eq!(res.z_min, Some(LatticeVector::ones(1)));
        assert_eq!(res.verdict, Verdict::LatticeLSpace);
    }

    #[test]
    fn refuses_indefinite_graphs() {
        let g = e8_with("z1", -2);
        assert_eq!(laufer_run(&g, &LauferOptions::default()), Err(LauferError::NotNegativeDefinite));
        assert_eq!(deficiency_iteration(&g), Err(LauferError::NotNegativeDefinite));
    }

    #[test]
    fn abutting_vertex_at_z1_drops_chi() {
        // negative-definite once w <= -9
        let g = e8_with("z1", -9);
        let res = laufer_run(&g, &LauferOptions::default()).unwrap();
        assert_eq!(res.verdict, Verdict::NotLatticeLSpace);
        assert_eq!(res.terminal, Terminal::ChiDroppedEarlyExit);
        assert!(res.chi_min < 1);
        let z4 = LatticeVector::from_named(
            &g,
            &[("X", 2), ("x1", 2), ("x2", 1), ("x3", 1), ("x4", 1), ("z1", 2), ("w", 1), ("y1", 2), ("y2", 1)],
        )
        .unwrap();
        let x = g.index_of("X").unwrap();
        assert_eq!(pairing_with_basis(&g, &z4, x), 2);
    }

    #[test]
    fn deficiency_iteration_examples() {
        let very_bad = star(-2, &[-3, -3, -3, -3]);
        assert_eq!(deficiency_iteration(&very_bad), Ok(Verdict::NotLatticeLSpace));
        assert_eq!(deficiency_iteration(&e8()), Ok(Verdict::LatticeLSpace));
        let twin = PlumbingGraph::from_parts(
            &[("c", -2), ("a1", -3), ("a2", -3), ("d", -2), ("b1", -3), ("b2", -3)],
            &[("c", "a1"), ("c", "a2"), ("c", "d"), ("d", "b1"), ("d", "b2")],
        )
        .unwrap();
        assert!(is_negative_definite(&twin));
        assert_eq!(deficiency_iteration(&twin), Ok(Verdict::NotLatticeLSpace));
        assert_eq!(
            laufer_run(&twin, &LauferOptions::default()).unwrap().verdict,
            Verdict::NotLatticeLSpace
        );
    }

    #[test]
    fn bruteforce_examples() {
        let g = PlumbingGraph::chain(&[-2]).unwrap();
        assert_eq!(min_cycle_bruteforce(&g, 5).unwrap(), LatticeVector::ones(1));
        let g = PlumbingGraph::chain(&[-2, -3]).unwrap();
        assert_eq!(min_cycle_bruteforce(&g, 5).unwrap().coeffs(), &[1, 1]);
        let g = e8();
        assert_eq!(min_cycle_bruteforce(&g, 6).unwrap(), e8_zmin(&g));
        assert_eq!(
            min_cycle_bruteforce(&g, 5),
            Err(BruteForceError::NoCandidate { box_bound: 5 })
        );
    }

    #[test]
    fn tie_breaks_parse() {
        assert_eq!("random:7".parse::<TieBreak>(), Ok(TieBreak::SeededRandom(7)));
        assert_eq!("max-pairing".parse::<TieBreak>(), Ok(TieBreak::MaxPairing));
        assert!("middle".parse::<TieBreak>().is_err());
        for t in [TieBreak::First, TieBreak::Last, TieBreak::MaxPairing, TieBreak::SeededRandom(3)] {
            assert_eq!(t.to_string().parse::<TieBreak>(), Ok(t));
        }
    }
}
