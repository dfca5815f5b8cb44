//! Exact determinants of polynomial matrices by two independent routes.
//!
//! [`det_leibniz`] is the oracle: the full signed sum over all `n!`
//! permutations, capped at a configurable dimension because of its factorial
//! cost. [`det_division_free`] is the production evaluator: a dynamic program
//! over closed-walk sequences that needs only ring operations (no division),
//! runs in `O(n^4)` polynomial operations, and agrees with the oracle
//! everywhere both run.

use thiserror::Error;

use crate::pathmatrix::PolyMatrix;
use crate::polyring::Polynomial;

/// Largest dimension the factorial-time oracle accepts by default.
pub const DEFAULT_ORACLE_BOUND: usize = 8;
/// Default ceiling on the term count of any intermediate polynomial.
pub const DEFAULT_TERM_CEILING: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetOptions {
    pub oracle_bound: usize,
    pub term_ceiling: usize,
}

impl Default for DetOptions {
    fn default() -> Self {
        DetOptions {
            oracle_bound: DEFAULT_ORACLE_BOUND,
            term_ceiling: DEFAULT_TERM_CEILING,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error(
        "n = {n} exceeds the permutation-expansion bound {bound}; \
         use the division-free algorithm for larger matrices"
    )]
    OracleBoundExceeded { n: usize, bound: usize },
    #[error("intermediate polynomial reached {observed} terms, over the ceiling {ceiling}")]
    TermCeilingExceeded { observed: usize, ceiling: usize },
}

/// Permutation-expansion determinant: the signed sum over all `n!`
/// permutations of the product of selected entries, evaluated with shared
/// prefixes and early exit on zero partial products.
pub fn det_leibniz(m: &PolyMatrix) -> Result<Polynomial, DetError> {
    det_leibniz_with(m, &DetOptions::default())
}

pub fn det_leibniz_with(m: &PolyMatrix, opts: &DetOptions) -> Result<Polynomial, DetError> {
    let n = m.n();
    if n > opts.oracle_bound {
        return Err(DetError::OracleBoundExceeded {
            n,
            bound: opts.oracle_bound,
        });
    }
    let mut acc = Polynomial::zero();
    expand_rows(m, 0, 0u64, &Polynomial::one(), false, &mut acc);
    Ok(acc)
}

fn expand_rows(
    m: &PolyMatrix,
    row: usize,
    used_cols: u64,
    partial: &Polynomial,
    odd: bool,
    acc: &mut Polynomial,
) {
    let n = m.n();
    if row == n {
        *acc = if odd {
            acc.sub(partial)
        } else {
            acc.add(partial)
        };
        return;
    }
    for col in 0..n {
        if used_cols & (1 << col) != 0 {
            continue;
        }
        let entry = m.entry(row as u32 + 1, col as u32 + 1);
        if entry.is_zero() {
            continue;
        }
        let product = partial.mul(entry);
        if product.is_zero() {
            continue;
        }
        // Inversions added by this choice: previously used columns to the
        // right of `col` flip the permutation parity.
        let inversions = (used_cols >> (col + 1)).count_ones();
        expand_rows(
            m,
            row + 1,
            used_cols | (1 << col),
            &product,
            odd ^ (inversions % 2 == 1),
            acc,
        );
    }
}

/// Outcome of a division-free run, with the peak intermediate term count
/// observed across the dynamic-programming table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionFreeRun {
    pub determinant: Polynomial,
    pub peak_terms: usize,
}

/// Division-free determinant over any commutative ring.
///
/// States are partial closed-walk sequences indexed by the head (smallest,
/// visited-once vertex) of the currently open walk and the current vertex;
/// a step either extends the open walk or closes it and opens a new one at a
/// strictly larger head, flipping the sign. Closed-walk sequences that are
/// not genuine cycle covers cancel in pairs, so after `n` steps the signed
/// sum is exactly the determinant.
pub fn det_division_free(m: &PolyMatrix) -> Polynomial {
    let opts = DetOptions {
        term_ceiling: usize::MAX,
        ..DetOptions::default()
    };
    det_division_free_with(m, &opts)
        .expect("unlimited ceiling cannot be exceeded")
        .determinant
}

// Loop indices here are the DP state labels (head, current, target).
#[allow(clippy::needless_range_loop)]
pub fn det_division_free_with(
    m: &PolyMatrix,
    opts: &DetOptions,
) -> Result<DivisionFreeRun, DetError> {
    let n = m.n();
    if n == 0 {
        return Ok(DivisionFreeRun {
            determinant: Polynomial::one(),
            peak_terms: 0,
        });
    }
    let mut peak = 0usize;
    let mut check = |p: &Polynomial| -> Result<(), DetError> {
        peak = peak.max(p.num_terms());
        if p.num_terms() > opts.term_ceiling {
            Err(DetError::TermCeilingExceeded {
                observed: p.num_terms(),
                ceiling: opts.term_ceiling,
            })
        } else {
            Ok(())
        }
    };
    let ceiling_hit = || DetError::TermCeilingExceeded {
        observed: opts.term_ceiling + 1,
        ceiling: opts.term_ceiling,
    };

    // dp[head][current]: signed sum over partial sequences with the given
    // number of edges; heads and vertices are 0-based here.
    let mut dp = vec![vec![Polynomial::zero(); n]; n];
    for h in 0..n {
        dp[h][h] = Polynomial::one();
    }
    let mut total = Polynomial::zero();
    for step in 0..n {
        let last = step == n - 1;
        let mut next = vec![vec![Polynomial::zero(); n]; n];
        for h in 0..n {
            for u in h..n {
                let cell = std::mem::take(&mut dp[h][u]);
                if cell.is_zero() {
                    continue;
                }
                // Close the open walk with the edge back to its head; the
                // sign flips per closed walk.
                let closing = m.entry(u as u32 + 1, h as u32 + 1);
                if !closing.is_zero() {
                    let closed = cell
                        .mul_capped(closing, opts.term_ceiling)
                        .ok_or_else(ceiling_hit)?;
                    check(&closed)?;
                    if last {
                        total = total.sub(&closed);
                        check(&total)?;
                    } else {
                        for new_head in (h + 1)..n {
                            next[new_head][new_head] = next[new_head][new_head].sub(&closed);
                            check(&next[new_head][new_head])?;
                        }
                    }
                }
                if !last {
                    // Extend the open walk to any vertex above its head.
                    for v in (h + 1)..n {
                        let entry = m.entry(u as u32 + 1, v as u32 + 1);
                        if entry.is_zero() {
                            continue;
                        }
                        let extended = cell
                            .mul_capped(entry, opts.term_ceiling)
                            .ok_or_else(ceiling_hit)?;
                        check(&extended)?;
                        next[h][v] = next[h][v].add(&extended);
                        check(&next[h][v])?;
                    }
                }
            }
        }
        dp = next;
    }
    let determinant = if n.is_multiple_of(2) { total } else { total.neg() };
    Ok(DivisionFreeRun {
        determinant,
        peak_terms: peak,
    })
}
