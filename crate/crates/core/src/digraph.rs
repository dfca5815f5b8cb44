//! Colored acyclic digraphs and their colored-path enumeration.
//!
//! Vertices are `1..=n` and every edge goes from a smaller to a larger
//! vertex, which encodes acyclicity directly in the data. An ordered pair
//! may carry up to `k` parallel edges, each with a distinct color from
//! `1..=k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("acyclicity violation: edge {from} -> {to} does not increase")]
    AcyclicityViolation { from: u32, to: u32 },
    #[error("duplicate color {color} on edge {from} -> {to}")]
    DuplicateColor { from: u32, to: u32, color: u32 },
    #[error("duplicate edge entry {from} -> {to}")]
    DuplicateEdge { from: u32, to: u32 },
    #[error("color {color} out of range 1..={k}")]
    ColorOutOfRange { color: u32, k: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("unsupported color count k = {k}; at least one color is required")]
    UnsupportedColorCount { k: usize },
}

/// JSON form of a graph: `{"n":4,"k":3,"edges":[{"from":1,"to":2,"colors":[1,2]},...]}`.
/// Unknown fields are rejected and edge entries may appear in any order, but
/// repeating a `(from, to)` pair is an error.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub from: u32,
    pub to: u32,
    pub colors: Vec<u32>,
}

/// A validated `k`-colored acyclic digraph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    k: usize,
    edges: BTreeMap<(u32, u32), BTreeSet<u32>>,
}

impl ColoredDigraph {
    /// Validates and builds a graph from `(from, to, colors)` triples.
    /// Idempotent on already-valid input.
    pub fn new(
        n: usize,
        k: usize,
        edges: impl IntoIterator<Item = (u32, u32, Vec<u32>)>,
    ) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::UnsupportedColorCount { k });
        }
        let mut map: BTreeMap<(u32, u32), BTreeSet<u32>> = BTreeMap::new();
        let mut seen_pairs: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (from, to, colors) in edges {
            for &v in [from, to].iter() {
                if v == 0 || v as usize > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if from >= to {
                return Err(GraphError::AcyclicityViolation { from, to });
            }
            if !seen_pairs.insert((from, to)) {
                return Err(GraphError::DuplicateEdge { from, to });
            }
            let mut set = BTreeSet::new();
            for color in colors {
                if color == 0 || color as usize > k {
                    return Err(GraphError::ColorOutOfRange { color, k });
                }
                if !set.insert(color) {
                    return Err(GraphError::DuplicateColor { from, to, color });
                }
            }
            if !set.is_empty() {
                map.insert((from, to), set);
            }
        }
        Ok(ColoredDigraph { n, k, edges: map })
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        ColoredDigraph::new(
            json.n,
            json.k,
            json.edges
                .iter()
                .map(|e| (e.from, e.to, e.colors.clone())),
        )
    }

    pub fn from_json_str(text: &str) -> Result<Self, serde_json::Error> {
        let json: GraphJson = serde_json::from_str(text)?;
        ColoredDigraph::from_json(&json).map_err(serde::de::Error::custom)
    }

    /// Canonical JSON value: edges sorted by `(from, to)`, colors ascending.
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            k: self.k,
            edges: self
                .edges
                .iter()
                .map(|(&(from, to), colors)| EdgeJson {
                    from,
                    to,
                    colors: colors.iter().copied().collect(),
                })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Colors present on the edge pair `(from, to)`; empty when absent.
    pub fn colors_on(&self, from: u32, to: u32) -> impl Iterator<Item = u32> + '_ {
        self.edges
            .get(&(from, to))
            .into_iter()
            .flat_map(|set| set.iter().copied())
    }

    pub fn has_colored_edge(&self, from: u32, to: u32, color: u32) -> bool {
        self.edges
            .get(&(from, to))
            .is_some_and(|set| set.contains(&color))
    }

    pub fn edge_pairs(&self) -> impl Iterator<Item = ((u32, u32), &BTreeSet<u32>)> {
        self.edges.iter().map(|(&pair, colors)| (pair, colors))
    }

    pub fn colored_edge_count(&self) -> usize {
        self.edges.values().map(|set| set.len()).sum()
    }
}

/// Generates a random graph: each `(i < j, color)` triple is included
/// independently with probability `density`.
///
/// The PRNG is ChaCha8 keyed by the 64-bit seed; inclusion of each triple,
/// visited in ascending `(i, j, color)` order, is decided by comparing the
/// next 64-bit draw against `density * 2^64`. The same seed therefore always
/// yields the same graph.
pub fn graph_random(n: usize, k: usize, density: f64, seed: u64) -> Result<ColoredDigraph, GraphError> {
    if k == 0 {
        return Err(GraphError::UnsupportedColorCount { k });
    }
    assert!(
        (0.0..=1.0).contains(&density),
        "density must lie in [0, 1], got {density}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold = (density * 2f64.powi(64)) as u128;
    let mut edges = Vec::new();
    for i in 1..=n as u32 {
        for j in (i + 1)..=n as u32 {
            let mut colors = Vec::new();
            for c in 1..=k as u32 {
                if (rand::RngCore::next_u64(&mut rng) as u128) < threshold {
                    colors.push(c);
                }
            }
            if !colors.is_empty() {
                edges.push((i, j, colors));
            }
        }
    }
    ColoredDigraph::new(n, k, edges)
}

/// A path along colored edges with strictly increasing vertices. A single
/// vertex with no steps is a valid path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColoredPath {
    pub vertices: Vec<u32>,
    pub edge_colors: Vec<u32>,
}

impl ColoredPath {
    /// Checks the path against its host graph.
    pub fn is_valid_in(&self, g: &ColoredDigraph) -> bool {
        if self.vertices.is_empty() || self.edge_colors.len() + 1 != self.vertices.len() {
            return false;
        }
        if !self.vertices.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        if self
            .vertices
            .iter()
            .any(|&v| v == 0 || v as usize > g.n())
        {
            return false;
        }
        self.vertices
            .windows(2)
            .zip(&self.edge_colors)
            .all(|(w, &c)| g.has_colored_edge(w[0], w[1], c))
    }
}

impl fmt::Display for ColoredPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (i, &c) in self.edge_colors.iter().enumerate() {
            write!(f, " -c{}-> {}", c, self.vertices[i + 1])?;
        }
        Ok(())
    }
}

/// Every colored path of the graph, singletons included, each exactly once,
/// sorted by vertex list and then by color list.
pub fn enumerate_colored_paths(g: &ColoredDigraph) -> Vec<ColoredPath> {
    let mut out = Vec::new();
    let mut vertices = Vec::new();
    let mut colors = Vec::new();
    for start in 1..=g.n() as u32 {
        vertices.push(start);
        extend_paths(g, &mut vertices, &mut colors, &mut out);
        vertices.pop();
    }
    out.sort();
    out
}

fn extend_paths(
    g: &ColoredDigraph,
    vertices: &mut Vec<u32>,
    colors: &mut Vec<u32>,
    out: &mut Vec<ColoredPath>,
) {
    out.push(ColoredPath {
        vertices: vertices.clone(),
        edge_colors: colors.clone(),
    });
    let last = *vertices.last().unwrap();
    for next in (last + 1)..=g.n() as u32 {
        for color in g.colors_on(last, next).collect::<Vec<_>>() {
            vertices.push(next);
            colors.push(color);
            extend_paths(g, vertices, colors, out);
            colors.pop();
            vertices.pop();
        }
    }
}

/// The worked four-vertex, three-color example used across the test suites:
/// edges 1->2 colored {1,2}, 2->3 colored {1}, 2->4 colored {1}.
pub fn example_graph() -> ColoredDigraph {
    ColoredDigraph::new(
        4,
        3,
        [
            (1, 2, vec![1, 2]),
            (2, 3, vec![1]),
            (2, 4, vec![1]),
        ],
    )
    .expect("example graph is valid")
}
