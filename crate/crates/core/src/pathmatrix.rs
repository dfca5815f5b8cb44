//! The path-counting matrix of a colored acyclic digraph.
//!
//! Row `i` of the matrix only ever mentions variables sourced at vertex `i`:
//! the diagonal entry is `1` plus the full color sum, a below-diagonal entry
//! is the full color sum, and an above-diagonal entry `(i, j)` sums exactly
//! the colors *missing* from the edge pair `(i, j)` (so it vanishes when all
//! `k` colors are present).

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::ColoredDigraph;
use crate::polyring::{Polynomial, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("single-color construction requires k = 1, got k = {k}")]
    NotSingleColor { k: usize },
}

/// A dense square matrix of polynomials. Rows and columns are addressed
/// 1-based so indices line up with vertex labels everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![Polynomial::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        PolyMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(row, col)`.
    pub fn entry(&self, row: u32, col: u32) -> &Polynomial {
        assert!(row >= 1 && row as usize <= self.n, "row {row} out of range");
        assert!(col >= 1 && col as usize <= self.n, "col {col} out of range");
        &self.entries[(row as usize - 1) * self.n + (col as usize - 1)]
    }

    pub fn set_entry(&mut self, row: u32, col: u32, value: Polynomial) {
        assert!(row >= 1 && row as usize <= self.n, "row {row} out of range");
        assert!(col >= 1 && col as usize <= self.n, "col {col} out of range");
        self.entries[(row as usize - 1) * self.n + (col as usize - 1)] = value;
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.n);
        for i in 1..=self.n as u32 {
            for j in 1..=self.n as u32 {
                out.set_entry(j, i, self.entry(i, j).clone());
            }
        }
        out
    }

    /// Plain-text grid with columns padded for alignment.
    pub fn to_text_grid(&self) -> String {
        let cells: Vec<Vec<String>> = (1..=self.n as u32)
            .map(|i| {
                (1..=self.n as u32)
                    .map(|j| self.entry(i, j).to_string())
                    .collect()
            })
            .collect();
        let mut widths = vec![0usize; self.n];
        for row in &cells {
            for (j, cell) in row.iter().enumerate() {
                widths[j] = widths[j].max(cell.len());
            }
        }
        let mut out = String::new();
        for row in &cells {
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                let _ = write!(out, "{cell:<width$}", width = widths[j]);
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }

    /// JSON rendering: an array of rows, each an array of canonical
    /// polynomial strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (1..=self.n as u32)
                .map(|i| {
                    serde_json::Value::Array(
                        (1..=self.n as u32)
                            .map(|j| serde_json::Value::String(self.entry(i, j).to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Sum of all `k` variables sourced at `vertex`.
fn full_color_sum(vertex: u32, k: usize) -> Polynomial {
    Polynomial::from_terms((1..=k as u32).map(|c| {
        (
            crate::polyring::Monomial::variable(Variable::new(vertex, c)),
            num_bigint::BigInt::from(1),
        )
    }))
}

/// Builds the colored path-counting matrix of a validated graph.
pub fn build_colored_matrix(g: &ColoredDigraph) -> PolyMatrix {
    let n = g.n();
    let k = g.k();
    let mut m = PolyMatrix::zero(n);
    for i in 1..=n as u32 {
        let row_sum = full_color_sum(i, k);
        for j in 1..=n as u32 {
            let entry = if i == j {
                Polynomial::one().add(&row_sum)
            } else if i > j {
                row_sum.clone()
            } else {
                let present: std::collections::BTreeSet<u32> = g.colors_on(i, j).collect();
                Polynomial::from_terms((1..=k as u32).filter(|c| !present.contains(c)).map(|c| {
                    (
                        crate::polyring::Monomial::variable(Variable::new(i, c)),
                        num_bigint::BigInt::from(1),
                    )
                }))
            };
            m.set_entry(i, j, entry);
        }
    }
    m
}

/// Builds the classical single-color matrix: `1 + x_i` on the diagonal,
/// `0` above the diagonal on edges, `x_i` everywhere else. Defined only for
/// `k = 1`, where it must agree with [`build_colored_matrix`] entry for
/// entry.
pub fn build_stanley_matrix(g: &ColoredDigraph) -> Result<PolyMatrix, MatrixError> {
    if g.k() != 1 {
        return Err(MatrixError::NotSingleColor { k: g.k() });
    }
    let n = g.n();
    let mut m = PolyMatrix::zero(n);
    for i in 1..=n as u32 {
        let x_i = Polynomial::variable(Variable::new(i, 1));
        for j in 1..=n as u32 {
            let entry = if i == j {
                Polynomial::one().add(&x_i)
            } else if i < j && g.colors_on(i, j).next().is_some() {
                Polynomial::zero()
            } else {
                x_i.clone()
            };
            m.set_entry(i, j, entry);
        }
    }
    Ok(m)
}

/// Checks the structural term-count contract of a built matrix: `1 + k`
/// terms on the diagonal, `k` below it, and `k - r` at `(i, j)` above it
/// where `r` counts the colors on the edge pair.
pub fn check_term_counts(g: &ColoredDigraph, m: &PolyMatrix) -> Result<(), String> {
    let n = g.n();
    let k = g.k();
    if m.n() != n {
        return Err(format!("dimension mismatch: matrix {} vs graph {n}", m.n()));
    }
    for i in 1..=n as u32 {
        for j in 1..=n as u32 {
            let got = m.entry(i, j).num_terms();
            let want = if i == j {
                1 + k
            } else if i > j {
                k
            } else {
                k - g.colors_on(i, j).count()
            };
            if got != want {
                return Err(format!("entry ({i},{j}) has {got} terms, expected {want}"));
            }
            let foreign = m
                .entry(i, j)
                .terms()
                .flat_map(|(mono, _)| mono.factors())
                .any(|&(var, _)| var.vertex != i);
            if foreign {
                return Err(format!("entry ({i},{j}) mentions a variable not sourced at row {i}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::example_graph;

    #[test]
    fn example_matrix_entries() {
        let m = build_colored_matrix(&example_graph());
        assert_eq!(m.entry(1, 2).to_string(), "x1_3");
        assert_eq!(m.entry(2, 3).to_string(), "x2_2 + x2_3");
        assert_eq!(m.entry(2, 4).to_string(), "x2_2 + x2_3");
        assert_eq!(m.entry(3, 4).to_string(), "x3_1 + x3_2 + x3_3");
        assert_eq!(m.entry(2, 1).to_string(), "x2_1 + x2_2 + x2_3");
        assert_eq!(m.entry(1, 1).to_string(), "1 + x1_1 + x1_2 + x1_3");
        check_term_counts(&example_graph(), &m).unwrap();
    }

    #[test]
    fn empty_two_vertex_single_color() {
        let g = ColoredDigraph::new(2, 1, []).unwrap();
        let m = build_colored_matrix(&g);
        assert_eq!(m.entry(1, 1).to_string(), "1 + x1_1");
        assert_eq!(m.entry(1, 2).to_string(), "x1_1");
        assert_eq!(m.entry(2, 1).to_string(), "x2_1");
        assert_eq!(m.entry(2, 2).to_string(), "1 + x2_1");
    }

    #[test]
    fn saturated_edge_zeroes_entry() {
        let g = ColoredDigraph::new(2, 3, [(1, 2, vec![1, 2, 3])]).unwrap();
        let m = build_colored_matrix(&g);
        assert!(m.entry(1, 2).is_zero());
        check_term_counts(&g, &m).unwrap();
    }

    #[test]
    fn stanley_matrix_matches_colored_for_single_color() {
        let g = ColoredDigraph::new(2, 1, [(1, 2, vec![1])]).unwrap();
        let s = build_stanley_matrix(&g).unwrap();
        assert_eq!(s.entry(1, 1).to_string(), "1 + x1_1");
        assert!(s.entry(1, 2).is_zero());
        assert_eq!(s.entry(2, 1).to_string(), "x2_1");
        assert_eq!(s, build_colored_matrix(&g));

        let empty = ColoredDigraph::new(2, 1, []).unwrap();
        assert_eq!(
            build_stanley_matrix(&empty).unwrap(),
            build_colored_matrix(&empty)
        );
    }

    #[test]
    fn stanley_requires_single_color() {
        let g = ColoredDigraph::new(2, 2, []).unwrap();
        assert_eq!(
            build_stanley_matrix(&g).unwrap_err(),
            MatrixError::NotSingleColor { k: 2 }
        );
    }

    #[test]
    fn text_grid_alignment() {
        let g = example_graph();
        let grid = build_colored_matrix(&g).to_text_grid();
        let lines: Vec<&str> = grid.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].contains("x1_3"));
    }
}
