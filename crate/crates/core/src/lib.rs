//! Exact symbolic toolkit for the path-counting determinant of colored
//! acyclic digraphs.
//!
//! A `k`-colored acyclic digraph on vertices `1..=n` (every edge goes from a
//! smaller to a larger vertex, with up to `k` distinctly colored parallel
//! edges per pair) determines a square matrix over the polynomial ring
//! `Z[x_v^(c)]`. Its determinant equals the generating function of all
//! colored paths in the digraph, with the final vertex of each path summed
//! over every color. This crate builds the matrix, computes the determinant
//! by three independent routes, enumerates the paths and the equivalent
//! "best word" model, and exhibits the cancellation of the complex cycle
//! covers under an explicit sign-reversing, weight-preserving pairing.

pub mod determinant;
pub mod digraph;
pub mod lsd;
pub mod pathgf;
pub mod pathmatrix;
pub mod polyring;

pub use determinant::{
    det_division_free, det_division_free_with, det_leibniz, det_leibniz_with, DetError, DetOptions,
};
pub use digraph::{enumerate_colored_paths, graph_random, ColoredDigraph, ColoredPath, GraphError};
pub use lsd::{
    classify, det_via_lsd, det_via_lsd_with, enumerate_lsd, enumerate_lsd_with, involution_f,
    involution_step, lsd_signed_weight, verify_cancellation, verify_cancellation_with, Cycle,
    LinearSubdigraph, LsdError, Sign, SingularityReport,
};
pub use pathgf::{best_word_sum, enumerate_best_words, is_bad_pair, path_generating_function, Word};
pub use pathmatrix::{build_colored_matrix, build_stanley_matrix, MatrixError, PolyMatrix};
pub use polyring::{Monomial, Polynomial, PolyParseError, Variable};
