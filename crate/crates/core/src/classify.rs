//! Structural predicates (very bad vertices, proper E8 subgraphs,
//! insulation) and the combined classification report.

use std::fmt;

use crate::diag::is_negative_definite;
use crate::graph::{is_minimal, minimalize, PlumbingGraph};
use crate::laufer::{laufer_run, LauferOptions, Verdict};

/// First vertex in declaration order with deficiency `≥ 2`.
pub fn find_very_bad(g: &PlumbingGraph) -> Option<usize> {
    (0..g.len()).find(|&v| g.deficiency(v) >= 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum E8Role {
    X,
    X1,
    X2,
    X3,
    X4,
    Z1,
    Y1,
    Y2,
}

impl E8Role {
    pub const ALL: [E8Role; 8] = [
        E8Role::X,
        E8Role::X1,
        E8Role::X2,
        E8Role::X3,
        E8Role::X4,
        E8Role::Z1,
        E8Role::Y1,
        E8Role::Y2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            E8Role::X => "X",
            E8Role::X1 => "x1",
            E8Role::X2 => "x2",
            E8Role::X3 => "x3",
            E8Role::X4 => "x4",
            E8Role::Z1 => "z1",
            E8Role::Y1 => "y1",
            E8Role::Y2 => "y2",
        }
    }
}

/// The eight vertices of an E8 subgraph, indexed like [`E8Role::ALL`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E8Witness {
    pub vertices: [usize; 8],
}

impl E8Witness {
    pub fn vertex(&self, role: E8Role) -> usize {
        self.vertices[role as usize]
    }

    pub fn labelled<'a>(&self, g: &'a PlumbingGraph) -> Vec<(E8Role, &'a str)> {
        E8Role::ALL
            .iter()
            .map(|&r| (r, g.id(self.vertex(r))))
            .collect()
    }
}

// all simple paths of `len` vertices that start at `first` and move away from `from`
fn arms(g: &PlumbingGraph, from: usize, first: usize, len: usize) -> Vec<Vec<usize>> {
    if g.weight(first) != -2 {
        return Vec::new();
    }
    if len == 1 {
        return vec![vec![first]];
    }
    let mut out = Vec::new();
    for &next in g.neighbors(first) {
        if next == from {
            continue;
        }
        for mut tail in arms(g, first, next, len - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// An induced E8 subtree (all weights `-2`, legs of length 4, 2 and 1 off a
/// center) in a graph with more than eight vertices. Search order: center
/// by declaration order, then leg starts, then leg continuations.
pub fn find_proper_e8(g: &PlumbingGraph) -> Option<E8Witness> {
    if g.len() <= 8 {
        return None;
    }
    for center in 0..g.len() {
        if g.weight(center) != -2 || g.valence(center) < 3 {
            continue;
        }
        let nbrs = g.neighbors(center);
        for &a in nbrs {
            for x_arm in arms(g, center, a, 4) {
                for &b in nbrs {
                    if b == a {
                        continue;
                    }
                    for y_arm in arms(g, center, b, 2) {
                        for &c in nbrs {
                            if c == a || c == b || g.weight(c) != -2 {
                                continue;
                            }
                            return Some(E8Witness {
                                vertices: [
                                    center, x_arm[0], x_arm[1], x_arm[2], x_arm[3], c, y_arm[0],
                                    y_arm[1],
                                ],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    HasVeryBad,
    GoodVertexDkPositive,
    AdjacentBadPair,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::HasVeryBad => "has_very_bad",
            ViolationKind::GoodVertexDkPositive => "good_vertex_dK_positive",
            ViolationKind::AdjacentBadPair => "adjacent_bad_pair",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsulationViolation {
    pub vertex: usize,
    pub kind: ViolationKind,
}

/// Number of neighbours with deficiency `≥ 1`.
pub fn bad_neighbor_count(g: &PlumbingGraph, v: usize) -> i64 {
    g.neighbors(v).iter().filter(|&&u| g.deficiency(u) >= 1).count() as i64
}

// neighbours that are bad but not very bad
fn strictly_bad_neighbor_count(g: &PlumbingGraph, v: usize) -> i64 {
    g.neighbors(v).iter().filter(|&&u| g.deficiency(u) == 1).count() as i64
}

/// The structural insulation conditions: no very bad vertex, `d(v) + K(v) ≤ 0`
/// at good vertices, no adjacent bad pair. Definiteness is checked
/// separately. Returns the first violation in declaration order.
pub fn is_insulated(g: &PlumbingGraph) -> (bool, Option<InsulationViolation>) {
    let has_very_bad = find_very_bad(g).is_some();
    for v in 0..g.len() {
        let d = g.deficiency(v);
        let violation = if d >= 2 {
            Some(ViolationKind::HasVeryBad)
        } else if d <= 0 {
            let k = bad_neighbor_count(g, v);
            if !has_very_bad {
                assert_eq!(k, strictly_bad_neighbor_count(g, v));
            }
            (d + k > 0).then_some(ViolationKind::GoodVertexDkPositive)
        } else if g.neighbors(v).iter().any(|&u| g.deficiency(u) >= 1) {
            Some(ViolationKind::AdjacentBadPair)
        } else {
            None
        };
        if let Some(kind) = violation {
            return (false, Some(InsulationViolation { vertex: v, kind }));
        }
    }
    (true, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LauferOutcome {
    LatticeLSpace,
    NotLatticeLSpace,
    SkippedNotNd,
}

impl LauferOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            LauferOutcome::LatticeLSpace => "lattice_L_space",
            LauferOutcome::NotLatticeLSpace => "not_lattice_L_space",
            LauferOutcome::SkippedNotNd => "skipped_not_ND",
        }
    }
}

impl From<Verdict> for LauferOutcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::LatticeLSpace => LauferOutcome::LatticeLSpace,
            Verdict::NotLatticeLSpace => LauferOutcome::NotLatticeLSpace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prediction {
    /// Left-orderable, not an L-space (very bad vertex or proper E8).
    LoNotLspace,
    /// Not left-orderable, an L-space (insulated).
    NotLoLspace,
    Undetermined,
}

impl Prediction {
    pub fn as_str(self) -> &'static str {
        match self {
            Prediction::LoNotLspace => "LO_not_Lspace",
            Prediction::NotLoLspace => "notLO_Lspace",
            Prediction::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub input: PlumbingGraph,
    /// The minimalized graph, when the input was not minimal. All other
    /// fields describe this graph in that case.
    pub minimalized: Option<PlumbingGraph>,
    pub negative_definite: bool,
    pub minimal: bool,
    pub very_bad_witness: Option<String>,
    pub proper_e8_witness: Option<Vec<(E8Role, String)>>,
    pub insulated: bool,
    pub insulation_violation: Option<(String, ViolationKind)>,
    pub laufer_verdict: LauferOutcome,
    pub prediction: Prediction,
}

impl ClassificationReport {
    /// The graph the verdict fields describe.
    pub fn analyzed(&self) -> &PlumbingGraph {
        self.minimalized.as_ref().unwrap_or(&self.input)
    }
}

/// Minimalizes if needed, then checks definiteness, the structural
/// predicates and Laufer's verdict, and combines them into a prediction.
pub fn classify(g: &PlumbingGraph) -> ClassificationReport {
    let minimal = is_minimal(g);
    let minimalized = (!minimal).then(|| minimalize(g));
    let h = minimalized.as_ref().unwrap_or(g);

    let negative_definite = is_negative_definite(h);
    let very_bad = find_very_bad(h);
    let e8 = find_proper_e8(h);
    let (structurally_insulated, violation) = is_insulated(h);
    let insulated = negative_definite && structurally_insulated;

    let laufer_verdict = if negative_definite {
        let res = laufer_run(h, &LauferOptions::default())
            .expect("Laufer terminates on negative-definite trees");
        LauferOutcome::from(res.verdict)
    } else {
        LauferOutcome::SkippedNotNd
    };
    if insulated {
        assert_eq!(laufer_verdict, LauferOutcome::LatticeLSpace, "insulated trees are L-spaces");
    }

    let prediction = if negative_definite && (very_bad.is_some() || e8.is_some()) {
        Prediction::LoNotLspace
    } else if insulated {
        Prediction::NotLoLspace
    } else {
        Prediction::Undetermined
    };

    ClassificationReport {
        input: g.clone(),
        minimal,
        negative_definite,
        very_bad_witness: very_bad.map(|v| h.id(v).to_string()),
        proper_e8_witness: e8.map(|w| {
            w.labelled(h)
                .into_iter()
                .map(|(r, id)| (r, id.to_string()))
                .collect()
        }),
        insulated,
        insulation_violation: violation.map(|iv| (h.id(iv.vertex).to_string(), iv.kind)),
        laufer_verdict,
        prediction,
        minimalized,
    }
}
