//! Linear subdigraphs (spanning disjoint cycle covers), their signed
//! weights, the complex/singular classification, and the sign-reversing,
//! weight-preserving pairing that cancels the complex ones.
//!
//! A linear subdigraph of the complete weighted digraph on `[n]` is a
//! permutation stored as disjoint cycles, each written in standard
//! representation (smallest vertex first). Its signed weight against a
//! matrix is `(-1)^(n + #cycles)` times the product of the traversed
//! entries, and summing over all of them is the cycle-cover form of the
//! determinant.
//!
//! A cycle is *singular* when it encloses a vertex of another nontrivial
//! cycle (the vertex lies strictly under one of its descending edges) or
//! when its standard representation walks up, down, then up again — an
//! ascent-descent-ascent pattern whose second ascent opens at a local
//! minimum called the corner. A subdigraph containing a singular cycle is
//! *complex*. The pairing `involution_f` merges an enclosing cycle with the
//! cycle of its smallest enclosed point, or splits a cycle at its smallest
//! corner; the two moves are mutually inverse, change the cycle count by
//! exactly one, and keep the weight because every edge they rewire is
//! descending and descending entries of a path-counting matrix depend only
//! on their source row.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::determinant::{det_leibniz_with, DetOptions};
use crate::pathmatrix::PolyMatrix;
use crate::polyring::Polynomial;

/// Largest dimension the exhaustive cycle-cover enumeration accepts by
/// default.
pub const DEFAULT_LSD_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LsdError {
    #[error("n = {n} exceeds the cycle-cover enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("subdigraph is not complex; the pairing is defined on complex subdigraphs only")]
    NotComplex,
    #[error("cycles do not partition the vertex set: {detail}")]
    InvalidPartition { detail: String },
    #[error("pairing invariant violated: {detail}")]
    InvolutionInvariant { detail: String },
    #[error(transparent)]
    AuditFailed(Box<CancellationFailure>),
}

/// Sign of a cycle cover: `(-1)^(n + #cycles)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of_cycle_cover(n: usize, cycles: usize) -> Sign {
        if (n + cycles).is_multiple_of(2) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn apply(self, p: &Polynomial) -> Polynomial {
        match self {
            Sign::Positive => p.clone(),
            Sign::Negative => p.neg(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => write!(f, "+"),
            Sign::Negative => write!(f, "-"),
        }
    }
}

/// A directed cycle in standard representation: the first vertex is the
/// smallest and the cycle closes from the last vertex back to it. A single
/// vertex denotes a loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<u32>,
}

impl Cycle {
    /// Accepts the cycle under any rotation and stores the standard
    /// representation. Panics on an empty or repeating vertex list.
    pub fn new(vertices: Vec<u32>) -> Self {
        assert!(!vertices.is_empty(), "a cycle has at least one vertex");
        let min_pos = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        let mut rotated = Vec::with_capacity(vertices.len());
        rotated.extend_from_slice(&vertices[min_pos..]);
        rotated.extend_from_slice(&vertices[..min_pos]);
        let mut sorted = rotated.clone();
        sorted.sort_unstable();
        assert!(
            sorted.windows(2).all(|w| w[0] < w[1]),
            "cycle vertices must be distinct"
        );
        Cycle { vertices: rotated }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_loop(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn start(&self) -> u32 {
        self.vertices[0]
    }

    pub fn max_vertex(&self) -> u32 {
        *self.vertices.iter().max().unwrap()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.contains(&v)
    }

    fn position(&self, v: u32) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    /// Directed edges in walk order, closing edge included.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |i| (self.vertices[i], self.vertices[(i + 1) % len]))
    }

    pub fn successor(&self, v: u32) -> u32 {
        let i = self.position(v).expect("vertex not on cycle");
        self.vertices[(i + 1) % self.vertices.len()]
    }

    pub fn predecessor(&self, v: u32) -> u32 {
        let i = self.position(v).expect("vertex not on cycle");
        self.vertices[(i + self.vertices.len() - 1) % self.vertices.len()]
    }

    /// Descending edges `(a, b)` with `b < a`; loops have none.
    pub fn descending_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges().filter(|&(a, b)| b < a)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A spanning collection of pairwise vertex-disjoint cycles of `[n]`,
/// stored sorted by cycle start.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearSubdigraph {
    n: usize,
    cycles: Vec<Cycle>,
}

impl LinearSubdigraph {
    /// Builds from a permutation given in one-line notation:
    /// `image[i - 1]` is the successor of vertex `i`.
    pub fn from_permutation(image: &[u32]) -> Self {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut walk = vec![start];
            seen[start as usize] = true;
            let mut v = image[start as usize - 1];
            while v != start {
                seen[v as usize] = true;
                walk.push(v);
                v = image[v as usize - 1];
            }
            cycles.push(Cycle::new(walk));
        }
        LinearSubdigraph { n, cycles }
    }

    /// Builds from explicit cycles, validating that they partition `1..=n`.
    pub fn from_cycles(
        n: usize,
        cycles: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<Self, LsdError> {
        let mut seen = vec![false; n + 1];
        let mut built: Vec<Cycle> = Vec::new();
        for list in cycles {
            if list.is_empty() {
                return Err(LsdError::InvalidPartition {
                    detail: "empty cycle".into(),
                });
            }
            for &v in &list {
                if v == 0 || v as usize > n {
                    return Err(LsdError::InvalidPartition {
                        detail: format!("vertex {v} out of range 1..={n}"),
                    });
                }
                if seen[v as usize] {
                    return Err(LsdError::InvalidPartition {
                        detail: format!("vertex {v} appears twice"),
                    });
                }
                seen[v as usize] = true;
            }
            built.push(Cycle::new(list));
        }
        if let Some(missing) = (1..=n).find(|&v| !seen[v]) {
            return Err(LsdError::InvalidPartition {
                detail: format!("vertex {missing} is not covered"),
            });
        }
        built.sort_by_key(Cycle::start);
        Ok(LinearSubdigraph { n, cycles: built })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn sign(&self) -> Sign {
        Sign::of_cycle_cover(self.n, self.cycles.len())
    }

    pub fn to_permutation(&self) -> Vec<u32> {
        let mut image = vec![0u32; self.n];
        for cycle in &self.cycles {
            for (a, b) in cycle.edges() {
                image[a as usize - 1] = b;
            }
        }
        image
    }

    /// Cycle containing the vertex.
    fn cycle_of(&self, v: u32) -> &Cycle {
        self.cycles
            .iter()
            .find(|c| c.contains(v))
            .expect("vertex not covered")
    }
}

impl fmt::Display for LinearSubdigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in &self.cycles {
            write!(f, "{cycle}")?;
        }
        Ok(())
    }
}

/// All `n!` cycle covers of `[n]`, in lexicographic order of the underlying
/// one-line permutation.
pub fn enumerate_lsd(n: usize) -> Result<Vec<LinearSubdigraph>, LsdError> {
    enumerate_lsd_with(n, DEFAULT_LSD_BOUND)
}

pub fn enumerate_lsd_with(n: usize, bound: usize) -> Result<Vec<LinearSubdigraph>, LsdError> {
    if n > bound {
        return Err(LsdError::BoundExceeded { n, bound });
    }
    Ok((1..=n as u32)
        .permutations(n)
        .map(|image| LinearSubdigraph::from_permutation(&image))
        .collect())
}

/// Sign and exact weight of a cycle cover against a matrix: the product of
/// `entry(u, successor(u))` over all vertices.
pub fn lsd_signed_weight(gamma: &LinearSubdigraph, m: &PolyMatrix) -> (Sign, Polynomial) {
    assert_eq!(gamma.n(), m.n(), "dimension mismatch");
    let mut weight = Polynomial::one();
    'outer: for cycle in gamma.cycles() {
        for (u, v) in cycle.edges() {
            let entry = m.entry(u, v);
            if entry.is_zero() {
                weight = Polynomial::zero();
                break 'outer;
            }
            weight = weight.mul(entry);
        }
    }
    (gamma.sign(), weight)
}

/// Determinant as the signed sum over all cycle covers. Exhaustive, so the
/// enumeration bound applies.
pub fn det_via_lsd(m: &PolyMatrix) -> Result<Polynomial, LsdError> {
    det_via_lsd_with(m, DEFAULT_LSD_BOUND)
}

pub fn det_via_lsd_with(m: &PolyMatrix, bound: usize) -> Result<Polynomial, LsdError> {
    let mut acc = Polynomial::zero();
    for gamma in enumerate_lsd_with(m.n(), bound)? {
        let (sign, weight) = lsd_signed_weight(&gamma, m);
        if !weight.is_zero() {
            acc = acc.add(&sign.apply(&weight));
        }
    }
    Ok(acc)
}

/// Why a vertex is a point of singularity of a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularKind {
    /// The vertex belongs to another nontrivial cycle and lies strictly
    /// under the recorded descending edge of this cycle.
    Enclosed { witness_from: u32, witness_to: u32 },
    /// The vertex is the local minimum opening the second ascent of an
    /// ascent-descent-ascent subpath `rise_from I fall_from D corner I
    /// rise_to` of this cycle's standard representation.
    IdiCorner {
        rise_from: u32,
        fall_from: u32,
        rise_to: u32,
    },
}

impl SingularKind {
    pub fn is_enclosed(&self) -> bool {
        matches!(self, SingularKind::Enclosed { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularPoint {
    pub vertex: u32,
    pub kind: SingularKind,
}

/// Classification of one cycle: its points of singularity, sorted by
/// vertex. Enclosed points belong to other cycles; corners belong to the
/// cycle itself, so the two kinds can never collide on a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub start: u32,
    pub is_singular: bool,
    pub points: Vec<SingularPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActingPoint {
    pub cycle_index: usize,
    pub cycle_start: u32,
    pub point: SingularPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityReport {
    pub cycles: Vec<CycleReport>,
    pub is_complex: bool,
    /// The singular cycle with the smallest start and its smallest point of
    /// singularity; the pairing acts here.
    pub acting: Option<ActingPoint>,
}

/// Interior local minima that open an ascent. The standard representation
/// starts at the cycle minimum, so its first step always ascends and any
/// such local minimum completes an ascent-descent-ascent pattern.
fn idi_corners(cycle: &Cycle) -> Vec<SingularPoint> {
    let vs = cycle.vertices();
    let m = vs.len();
    if m < 4 {
        // An ascent, a descent, and a second ascent need four distinct
        // vertices before the closing descent.
        return Vec::new();
    }
    // Step p runs from vs[p] to vs[p + 1], with step m - 1 closing to vs[0].
    let up = |p: usize| -> bool {
        let from = vs[p];
        let to = vs[(p + 1) % m];
        to > from
    };
    let mut corners = Vec::new();
    for p in 1..m - 1 {
        if !up(p - 1) && up(p) {
            // Maximal descent run ending at the corner.
            let mut s = p - 1;
            while s > 0 && !up(s - 1) {
                s -= 1;
            }
            debug_assert!(s > 0, "first step of a standard representation ascends");
            // Maximal ascent run ending at the descent's start.
            let mut t = s - 1;
            while t > 0 && up(t - 1) {
                t -= 1;
            }
            // Maximal ascent run out of the corner.
            let mut e = p;
            while e + 1 < m && up(e + 1) {
                e += 1;
            }
            corners.push(SingularPoint {
                vertex: vs[p],
                kind: SingularKind::IdiCorner {
                    rise_from: vs[t],
                    fall_from: vs[s],
                    rise_to: vs[(e + 1) % m],
                },
            });
        }
    }
    corners
}

/// Full singularity classification of a cycle cover.
pub fn classify(gamma: &LinearSubdigraph) -> SingularityReport {
    let mut reports = Vec::with_capacity(gamma.cycle_count());
    for cycle in gamma.cycles() {
        let mut points = idi_corners(cycle);
        for other in gamma.cycles() {
            if other.start() == cycle.start() || other.is_loop() {
                continue;
            }
            for &v in other.vertices() {
                // Canonical witness: the descending edge with the smallest
                // source, then the smallest target.
                let witness = cycle
                    .descending_edges()
                    .filter(|&(a, b)| b < v && v < a)
                    .min();
                if let Some((a, b)) = witness {
                    points.push(SingularPoint {
                        vertex: v,
                        kind: SingularKind::Enclosed {
                            witness_from: a,
                            witness_to: b,
                        },
                    });
                }
            }
        }
        points.sort_by_key(|p| p.vertex);
        debug_assert!(
            points.windows(2).all(|w| w[0].vertex < w[1].vertex),
            "a vertex cannot be both enclosed by and a corner of the same cycle"
        );
        reports.push(CycleReport {
            start: cycle.start(),
            is_singular: !points.is_empty(),
            points,
        });
    }
    let acting = reports
        .iter()
        .enumerate()
        .find(|(_, r)| r.is_singular)
        .map(|(i, r)| ActingPoint {
            cycle_index: i,
            cycle_start: r.start,
            point: r.points[0],
        });
    SingularityReport {
        is_complex: acting.is_some(),
        cycles: reports,
        acting,
    }
}

/// How the pairing acted, with the vertices it rewired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionCase {
    /// The acting point was enclosed: its cycle is spliced into the
    /// enclosing cycle. `witness_from -> witness_to` is the replaced
    /// descending edge; the new edges are `witness_from -> enclosed` and
    /// `enclosed_pred -> witness_to`.
    Merge {
        enclosed: u32,
        enclosed_pred: u32,
        witness_from: u32,
        witness_to: u32,
    },
    /// The acting point was a corner: its cycle splits there.
    /// `corner_pred -> corner` and `straddle_from -> straddle_to` are the
    /// replaced edges; the new edges are `corner_pred -> straddle_to` and
    /// `straddle_from -> corner`.
    Split {
        corner: u32,
        corner_pred: u32,
        ascent_end: u32,
        straddle_from: u32,
        straddle_to: u32,
    },
}

impl InvolutionCase {
    pub fn kind(&self) -> &'static str {
        match self {
            InvolutionCase::Merge { .. } => "merge",
            InvolutionCase::Split { .. } => "split",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionStep {
    pub acting_cycle_start: u32,
    pub acting_point: u32,
    pub case: InvolutionCase,
    pub result: LinearSubdigraph,
}

/// Applies the pairing to a complex cycle cover and reports what it did.
pub fn involution_step(gamma: &LinearSubdigraph) -> Result<InvolutionStep, LsdError> {
    let report = classify(gamma);
    let acting = report.acting.ok_or(LsdError::NotComplex)?;
    let cycle = &gamma.cycles()[acting.cycle_index];
    let point = acting.point;

    let (case, replaced) = match point.kind {
        SingularKind::Enclosed {
            witness_from,
            witness_to,
        } => {
            let host = gamma.cycle_of(point.vertex);
            if host.start() != point.vertex {
                return Err(LsdError::InvolutionInvariant {
                    detail: format!(
                        "enclosed acting point {} is not the start of its cycle {host}",
                        point.vertex
                    ),
                });
            }
            let j = cycle
                .position(witness_from)
                .expect("witness edge source lies on the acting cycle");
            // Splice the host cycle in after the witness source:
            // ... witness_from, host..., witness_to ...
            let mut merged = Vec::with_capacity(cycle.len() + host.len());
            merged.extend_from_slice(&cycle.vertices()[..=j]);
            merged.extend_from_slice(host.vertices());
            merged.extend_from_slice(&cycle.vertices()[j + 1..]);
            let case = InvolutionCase::Merge {
                enclosed: point.vertex,
                enclosed_pred: host.predecessor(point.vertex),
                witness_from,
                witness_to,
            };
            let replaced: Vec<Cycle> = vec![Cycle::new(merged)];
            let removed = [cycle.start(), host.start()];
            let mut cycles: Vec<Cycle> = gamma
                .cycles()
                .iter()
                .filter(|c| !removed.contains(&c.start()))
                .cloned()
                .collect();
            cycles.extend(replaced);
            (case, cycles)
        }
        SingularKind::IdiCorner { .. } => {
            let vs = cycle.vertices();
            let m = vs.len();
            let idx = cycle
                .position(point.vertex)
                .expect("corner lies on the acting cycle");
            debug_assert!(idx >= 1);
            let corner_pred = vs[idx - 1];
            // Maximal ascent out of the corner.
            let mut end = idx;
            while end + 1 < m && vs[end + 1] > vs[end] {
                end += 1;
            }
            let ascent_end = vs[end];
            // First edge after the ascent that descends past the corner.
            let mut straddle = None;
            for q in end..m {
                let from = vs[q];
                let to = vs[(q + 1) % m];
                if to < point.vertex && point.vertex < from {
                    straddle = Some((q, from, to));
                    break;
                }
            }
            let Some((q, straddle_from, straddle_to)) = straddle else {
                return Err(LsdError::InvolutionInvariant {
                    detail: format!(
                        "no descending edge past corner {} on cycle {cycle}",
                        point.vertex
                    ),
                });
            };
            // Keep the walk up to the corner's predecessor plus the tail
            // after the straddle; the stretch from the corner through the
            // straddle source becomes its own cycle.
            let mut kept = Vec::with_capacity(m);
            kept.extend_from_slice(&vs[..idx]);
            if q + 1 < m {
                kept.extend_from_slice(&vs[q + 1..]);
            }
            let split_off = vs[idx..=q].to_vec();
            let case = InvolutionCase::Split {
                corner: point.vertex,
                corner_pred,
                ascent_end,
                straddle_from,
                straddle_to,
            };
            let mut cycles: Vec<Cycle> = gamma
                .cycles()
                .iter()
                .filter(|c| c.start() != cycle.start())
                .cloned()
                .collect();
            cycles.push(Cycle::new(kept));
            cycles.push(Cycle::new(split_off));
            (case, cycles)
        }
    };

    let mut cycles = replaced;
    cycles.sort_by_key(Cycle::start);
    let result = LinearSubdigraph {
        n: gamma.n(),
        cycles,
    };
    Ok(InvolutionStep {
        acting_cycle_start: acting.cycle_start,
        acting_point: point.vertex,
        case,
        result,
    })
}

/// The pairing itself: defined exactly on complex cycle covers.
pub fn involution_f(gamma: &LinearSubdigraph) -> Result<LinearSubdigraph, LsdError> {
    involution_step(gamma).map(|step| step.result)
}

/// Counterexample dump produced when the cancellation audit fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "cancellation audit failed: {detail}\n  gamma:      {gamma}\n  partner:    {partner}\n  w(gamma):   {gamma_weight}\n  w(partner): {partner_weight}"
)]
pub struct CancellationFailure {
    pub detail: String,
    pub gamma: String,
    pub partner: String,
    pub gamma_weight: String,
    pub partner_weight: String,
}

/// One orbit of the pairing, reported from its first-enumerated member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub member: LinearSubdigraph,
    pub partner: LinearSubdigraph,
    pub acting_cycle_start: u32,
    pub acting_point: u32,
    pub case: &'static str,
    pub weight: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationReport {
    pub total: usize,
    pub complex_count: usize,
    pub orbits: Vec<OrbitRecord>,
    pub complex_signed_sum: Polynomial,
    pub simple_signed_sum: Polynomial,
    pub determinant: Polynomial,
}

/// Exhaustively audits the cancellation over all cycle covers of the
/// matrix dimension: complex covers pair off with equal weights and
/// opposite signs, their signed sum vanishes, and the simple covers alone
/// already sum to the determinant.
pub fn verify_cancellation(m: &PolyMatrix) -> Result<CancellationReport, LsdError> {
    verify_cancellation_with(m, DEFAULT_LSD_BOUND)
}

pub fn verify_cancellation_with(
    m: &PolyMatrix,
    bound: usize,
) -> Result<CancellationReport, LsdError> {
    let n = m.n();
    let all = enumerate_lsd_with(n, bound)?;
    let failure = |detail: String, gamma: &LinearSubdigraph, partner: &LinearSubdigraph| {
        let (_, gw) = lsd_signed_weight(gamma, m);
        let (_, pw) = lsd_signed_weight(partner, m);
        LsdError::AuditFailed(Box::new(CancellationFailure {
            detail,
            gamma: gamma.to_string(),
            partner: partner.to_string(),
            gamma_weight: gw.to_string(),
            partner_weight: pw.to_string(),
        }))
    };

    let mut complex_sum = Polynomial::zero();
    let mut simple_sum = Polynomial::zero();
    let mut complex_count = 0usize;
    let mut orbits = Vec::new();
    let mut paired: HashMap<Vec<u32>, bool> = HashMap::new();

    for gamma in &all {
        let report = classify(gamma);
        let (sign, weight) = lsd_signed_weight(gamma, m);
        if !report.is_complex {
            simple_sum = simple_sum.add(&sign.apply(&weight));
            continue;
        }
        complex_count += 1;
        complex_sum = complex_sum.add(&sign.apply(&weight));
        if paired.contains_key(&gamma.to_permutation()) {
            continue;
        }
        let step = involution_step(gamma)?;
        let partner = &step.result;
        let back = involution_step(partner)?;
        if &back.result != gamma {
            return Err(failure(
                "pairing is not an involution".into(),
                gamma,
                partner,
            ));
        }
        let dc = partner.cycle_count() as i64 - gamma.cycle_count() as i64;
        if dc.abs() != 1 {
            return Err(failure(
                format!("cycle count changed by {dc}, expected +/-1"),
                gamma,
                partner,
            ));
        }
        let (psign, pweight) = lsd_signed_weight(partner, m);
        if pweight != weight {
            return Err(failure("weights differ across the pair".into(), gamma, partner));
        }
        if psign == sign {
            return Err(failure("signs agree across the pair".into(), gamma, partner));
        }
        if back.acting_point != step.acting_point {
            return Err(failure(
                format!(
                    "acting point moved: {} -> {}",
                    step.acting_point, back.acting_point
                ),
                gamma,
                partner,
            ));
        }
        if back.case.kind() == step.case.kind() {
            return Err(failure(
                format!("both directions took the {} case", step.case.kind()),
                gamma,
                partner,
            ));
        }
        paired.insert(gamma.to_permutation(), true);
        paired.insert(partner.to_permutation(), true);
        orbits.push(OrbitRecord {
            member: gamma.clone(),
            partner: partner.clone(),
            acting_cycle_start: step.acting_cycle_start,
            acting_point: step.acting_point,
            case: step.case.kind(),
            weight,
        });
    }

    if !complex_sum.is_zero() {
        return Err(LsdError::AuditFailed(Box::new(CancellationFailure {
            detail: format!("complex covers sum to {complex_sum}, expected 0"),
            gamma: String::new(),
            partner: String::new(),
            gamma_weight: String::new(),
            partner_weight: String::new(),
        })));
    }
    let opts = DetOptions {
        oracle_bound: bound.max(crate::determinant::DEFAULT_ORACLE_BOUND),
        ..DetOptions::default()
    };
    let determinant = det_leibniz_with(m, &opts).expect("bound already checked");
    if simple_sum != determinant {
        return Err(LsdError::AuditFailed(Box::new(CancellationFailure {
            detail: "simple covers do not sum to the determinant".into(),
            gamma: String::new(),
            partner: String::new(),
            gamma_weight: simple_sum.to_string(),
            partner_weight: determinant.to_string(),
        })));
    }
    Ok(CancellationReport {
        total: all.len(),
        complex_count,
        orbits,
        complex_signed_sum: complex_sum,
        simple_signed_sum: simple_sum,
        determinant,
    })
}
