//! Exact lattice-cohomology L-space detection and structural classification
//! for negative-definite plumbing trees.
//!
//! The crate parses weighted plumbing trees, decides negative-definiteness
//! and minimality, runs Laufer's computation sequence for the minimal
//! cycle, computes rooted diagonalisations and de-rationalisers, expands
//! Hirzebruch-Jung continued fractions, detects very bad vertices, proper
//! `E8` configurations and insulation, and writes down Mumford's
//! presentation of the fundamental group.
//!
//! ```
//! use plumbing::fixtures::e8;
//! use plumbing::laufer::{laufer_run, LauferOptions, Verdict};
//!
//! let res = laufer_run(&e8(), &LauferOptions::default()).unwrap();
//! assert_eq!(res.verdict, Verdict::LatticeLSpace);
//! ```

pub mod arith;
pub mod classify;
pub mod cli;
pub mod diag;
pub mod enumerate;
pub mod fixtures;
pub mod graph;
pub mod laufer;
pub mod pi1;

pub use arith::{hj_expand, hj_value, tree_determinant, HJExpansion, Rational};
pub use classify::{classify, ClassificationReport, Prediction};
pub use diag::{delta, derationalizer, is_negative_definite, rooted_diagonalize, surger, MarkedGraph};
pub use graph::{is_minimal, minimalize, parse_graph, GraphError, PlumbingGraph};
pub use laufer::{laufer_run, LatticeVector, LauferOptions, LauferResult, TieBreak, Verdict};
pub use pi1::{abelianization_invariants, mumford_presentation, GroupPresentation};
