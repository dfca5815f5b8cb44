//! The colored-path generating function and the equivalent word model.
//!
//! A colored path on vertices `i_1 < ... < i_t` contributes its edge-color
//! variables at `i_1 .. i_{t-1}` times each of the `k` variables at the
//! final vertex. The word model reaches the same sum from the other side:
//! a word over the variables is *nice* when its vertices strictly increase,
//! a consecutive pair is *bad* when the first letter's color is missing on
//! the edge between the two vertices, and a *best* word is a nice word with
//! no bad consecutive pair. Best words biject with colored paths carrying a
//! free final color: every letter but the last is forced to match an edge
//! color, while the last letter has no successor to constrain it — which is
//! exactly why the generating function sums the final vertex over all `k`
//! colors.

use std::fmt;

use num_bigint::BigInt;

use crate::digraph::{enumerate_colored_paths, ColoredDigraph};
use crate::polyring::{Monomial, Polynomial, Variable};

/// A word over the variable alphabet with strictly increasing vertex
/// indices. The empty word denotes `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Variable>,
}

impl Word {
    pub fn new(letters: Vec<Variable>) -> Self {
        assert!(
            letters.windows(2).all(|w| w[0].vertex < w[1].vertex),
            "word vertices must strictly increase"
        );
        Word { letters }
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[Variable] {
        &self.letters
    }

    /// Commutative image of the word: the product of its letters.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_powers(self.letters.iter().map(|&v| (v, 1)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.monomial())
    }
}

/// The pair `(first, x_{second_vertex}^(c))` is bad — for every color `c` —
/// exactly when the graph has no edge of `first`'s color from `first.vertex`
/// to `second_vertex`.
pub fn is_bad_pair(g: &ColoredDigraph, first: Variable, second_vertex: u32) -> bool {
    !g.has_colored_edge(first.vertex, second_vertex, first.color)
}

/// All best words of the graph, each exactly once, in lexicographic order
/// of their letter sequences (the empty word first).
pub fn enumerate_best_words(g: &ColoredDigraph) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut letters: Vec<Variable> = Vec::new();
    for vertex in 1..=g.n() as u32 {
        for color in 1..=g.k() as u32 {
            letters.push(Variable::new(vertex, color));
            extend_best_words(g, &mut letters, &mut out);
            letters.pop();
        }
    }
    out
}

fn extend_best_words(g: &ColoredDigraph, letters: &mut Vec<Variable>, out: &mut Vec<Word>) {
    out.push(Word::new(letters.clone()));
    let last = *letters.last().unwrap();
    // Extending by a letter at `next` is allowed only when (last, next) is
    // not a bad pair; the new letter's own color is unconstrained.
    for next in (last.vertex + 1)..=g.n() as u32 {
        if is_bad_pair(g, last, next) {
            continue;
        }
        for color in 1..=g.k() as u32 {
            letters.push(Variable::new(next, color));
            extend_best_words(g, letters, out);
            letters.pop();
        }
    }
}

/// Sum of the commutative images of all best words.
pub fn best_word_sum(g: &ColoredDigraph) -> Polynomial {
    Polynomial::from_terms(
        enumerate_best_words(g)
            .into_iter()
            .map(|w| (w.monomial(), BigInt::from(1))),
    )
}

/// `1` plus, for every colored path, the path's edge-color monomial times
/// each of the `k` variables at the final vertex.
pub fn path_generating_function(g: &ColoredDigraph) -> Polynomial {
    let mut terms = vec![(Monomial::one(), BigInt::from(1))];
    for path in enumerate_colored_paths(g) {
        let stem = Monomial::from_powers(
            path.vertices
                .iter()
                .zip(&path.edge_colors)
                .map(|(&v, &c)| (Variable::new(v, c), 1)),
        );
        let last = *path.vertices.last().unwrap();
        for color in 1..=g.k() as u32 {
            terms.push((
                stem.mul(&Monomial::variable(Variable::new(last, color))),
                BigInt::from(1),
            ));
        }
    }
    Polynomial::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{example_graph, graph_random, ColoredDigraph};
    use num_traits::One;

    #[test]
    fn empty_graph_generating_function() {
        let g = ColoredDigraph::new(2, 2, []).unwrap();
        let gf = path_generating_function(&g);
        let expected: Polynomial = "1 + x1_1 + x1_2 + x2_1 + x2_2".parse().unwrap();
        assert_eq!(gf, expected);
        assert_eq!(best_word_sum(&g), expected);
    }

    #[test]
    fn zero_vertex_graph() {
        let g = ColoredDigraph::new(0, 1, []).unwrap();
        assert!(path_generating_function(&g).is_one());
        assert!(best_word_sum(&g).is_one());
    }

    #[test]
    fn bad_pairs_on_example_graph() {
        let g = example_graph();
        // No color-3 edge from 1 to 2, so x1_3 followed by vertex 2 is bad.
        assert!(is_bad_pair(&g, Variable::new(1, 3), 2));
        assert!(!is_bad_pair(&g, Variable::new(1, 1), 2));
        assert!(!is_bad_pair(&g, Variable::new(1, 2), 2));
        // No edge 1 -> 3 at all.
        assert!(is_bad_pair(&g, Variable::new(1, 1), 3));
    }

    #[test]
    fn empty_graph_best_words_are_short() {
        let g = ColoredDigraph::new(3, 2, []).unwrap();
        let words = enumerate_best_words(&g);
        assert!(words.iter().all(|w| w.letters().len() <= 1));
        assert_eq!(words.len(), 1 + 3 * 2);
    }

    #[test]
    fn saturated_graph_best_words_expand_product() {
        // Every pair carries every color, so every nice word is best and the
        // sum is the expanded product of (1 + row sums).
        let g = ColoredDigraph::new(
            3,
            2,
            [(1, 2, vec![1, 2]), (1, 3, vec![1, 2]), (2, 3, vec![1, 2])],
        )
        .unwrap();
        let mut product = Polynomial::one();
        for v in 1..=3u32 {
            let row: Polynomial = format!("1 + x{v}_1 + x{v}_2").parse().unwrap();
            product = product.mul(&row);
        }
        assert_eq!(best_word_sum(&g), product);
        assert_eq!(path_generating_function(&g), product);
    }

    #[test]
    fn models_agree_on_example_and_random_graphs() {
        let g = example_graph();
        assert_eq!(best_word_sum(&g), path_generating_function(&g));

        for seed in 0..40 {
            let n = (seed % 7) as usize;
            let k = 1 + (seed % 3) as usize;
            let g = graph_random(n, k, 0.45, seed).unwrap();
            assert_eq!(
                best_word_sum(&g),
                path_generating_function(&g),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn best_words_biject_with_paths_times_final_colors() {
        // Dropping a best word's last letter leaves the forced edge colors
        // of a path; the last letter contributes vertex t with any of the k
        // colors. So the counts relate by #words = 1 + k * #paths.
        for seed in 0..25 {
            let g = graph_random(5, 1 + (seed % 3) as usize, 0.5, 2000 + seed).unwrap();
            let words = enumerate_best_words(&g).len();
            let paths = crate::digraph::enumerate_colored_paths(&g).len();
            assert_eq!(words, 1 + g.k() * paths, "seed {seed}");
        }
    }

    #[test]
    fn generating_function_coefficients_are_unit() {
        for seed in 0..20 {
            let g = graph_random(6, 2, 0.5, 1000 + seed).unwrap();
            let gf = path_generating_function(&g);
            assert!(gf.constant_term().is_one());
            assert!(gf.terms().all(|(_, c)| c.is_one()));
            let paths = enumerate_colored_paths(&g).len();
            assert_eq!(gf.num_terms() - 1, g.k() * paths);
        }
    }
}
