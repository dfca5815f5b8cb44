//! Acceptance suite: every criterion below is exercised at its stated
//! tolerance (exact canonical-form equality throughout) and prints one
//! pass/fail line. Run with `cargo test -p pathdet --test acceptance`
//! (add `-- --nocapture` to see the lines).

use std::time::Instant;

use num_traits::One;
use pathdet::digraph::example_graph;
use pathdet::lsd::InvolutionCase;
use pathdet::pathmatrix::check_term_counts;
use pathdet::{
    best_word_sum, build_colored_matrix, build_stanley_matrix, det_division_free, det_leibniz,
    det_via_lsd, enumerate_colored_paths, graph_random, involution_step, path_generating_function,
    verify_cancellation, ColoredDigraph, LinearSubdigraph, Polynomial,
};

/// The four-vertex, three-color worked example and its expected data.
fn worked_example() -> (ColoredDigraph, Polynomial) {
    let expected: Polynomial = EXPECTED_DET.parse().expect("fixture parses");
    (example_graph(), expected)
}

/// Canonical form of the worked example's determinant: the constant 1 plus
/// 36 coefficient-1 path terms.
const EXPECTED_DET: &str = "1 + x1_1 + x1_2 + x1_3 + x2_1 + x2_2 + x2_3 \
    + x3_1 + x3_2 + x3_3 + x4_1 + x4_2 + x4_3 \
    + x1_1*x2_1 + x1_1*x2_2 + x1_1*x2_3 + x1_2*x2_1 + x1_2*x2_2 + x1_2*x2_3 \
    + x2_1*x3_1 + x2_1*x3_2 + x2_1*x3_3 + x2_1*x4_1 + x2_1*x4_2 + x2_1*x4_3 \
    + x1_1*x2_1*x3_1 + x1_1*x2_1*x3_2 + x1_1*x2_1*x3_3 \
    + x1_1*x2_1*x4_1 + x1_1*x2_1*x4_2 + x1_1*x2_1*x4_3 \
    + x1_2*x2_1*x3_1 + x1_2*x2_1*x3_2 + x1_2*x2_1*x3_3 \
    + x1_2*x2_1*x4_1 + x1_2*x2_1*x4_2 + x1_2*x2_1*x4_3";

/// The randomized sweep shared by criteria 2, 4 and 6: at least 200 seeded
/// graphs covering n <= 7, k <= 3 and all four densities.
fn sweep() -> Vec<(usize, usize, f64, u64)> {
    let mut cases = Vec::new();
    let mut counter = 0u64;
    for &density in &[0.0, 0.3, 0.7, 1.0] {
        for n in 0..=7usize {
            for k in 1..=3usize {
                let reps = match n {
                    0..=5 => 3,
                    6 => 2,
                    _ => 1,
                };
                for _ in 0..reps {
                    counter += 1;
                    cases.push((n, k, density, 10_000 + counter));
                }
            }
        }
    }
    assert!(cases.len() >= 200, "sweep too small: {}", cases.len());
    cases
}

#[test]
fn criterion_1_worked_example_exact() {
    let started = Instant::now();
    let (graph, expected) = worked_example();
    let matrix = build_colored_matrix(&graph);

    let display = [
        ["1 + x1_1 + x1_2 + x1_3", "x1_3", "x1_1 + x1_2 + x1_3", "x1_1 + x1_2 + x1_3"],
        ["x2_1 + x2_2 + x2_3", "1 + x2_1 + x2_2 + x2_3", "x2_2 + x2_3", "x2_2 + x2_3"],
        ["x3_1 + x3_2 + x3_3", "x3_1 + x3_2 + x3_3", "1 + x3_1 + x3_2 + x3_3", "x3_1 + x3_2 + x3_3"],
        ["x4_1 + x4_2 + x4_3", "x4_1 + x4_2 + x4_3", "x4_1 + x4_2 + x4_3", "1 + x4_1 + x4_2 + x4_3"],
    ];
    for (i, row) in display.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            assert_eq!(
                matrix.entry(i as u32 + 1, j as u32 + 1).to_string(),
                *cell,
                "matrix entry ({}, {})",
                i + 1,
                j + 1
            );
        }
    }

    assert_eq!(expected.num_terms(), 37);
    assert!(expected.constant_term().is_one());

    let leibniz = det_leibniz(&matrix).unwrap();
    let division_free = det_division_free(&matrix);
    let via_covers = det_via_lsd(&matrix).unwrap();
    assert_eq!(leibniz.to_string(), EXPECTED_DET);
    assert_eq!(division_free.to_string(), EXPECTED_DET);
    assert_eq!(via_covers.to_string(), EXPECTED_DET);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 1 (worked example, exact): PASS ({elapsed:?})");
}

#[test]
fn criterion_2_identity_randomized() {
    let started = Instant::now();
    let cases = sweep();
    let total = cases.len();
    // Cases are independent; spread them over a few workers. Each check is
    // still exact equality of canonical forms.
    let workers = std::thread::available_parallelism().map_or(4, |p| p.get().min(8));
    std::thread::scope(|scope| {
        for chunk in cases.chunks(cases.len().div_ceil(workers)) {
            scope.spawn(move || {
                for &(n, k, density, seed) in chunk {
                    let graph = graph_random(n, k, density, seed).unwrap();
                    let matrix = build_colored_matrix(&graph);
                    let division_free = det_division_free(&matrix);
                    let leibniz = det_leibniz(&matrix).unwrap();
                    let via_covers = det_via_lsd(&matrix).unwrap();
                    let gf = path_generating_function(&graph);
                    let words = best_word_sum(&graph);
                    let tag = format!("n={n} k={k} density={density} seed={seed}");
                    assert_eq!(division_free, leibniz, "division-free vs permutation sum: {tag}");
                    assert_eq!(via_covers, leibniz, "cycle covers vs permutation sum: {tag}");
                    assert_eq!(gf, leibniz, "path generating function vs determinant: {tag}");
                    assert_eq!(words, gf, "best words vs path generating function: {tag}");
                }
            });
        }
    });
    println!(
        "criterion 2 (determinant = path generating function on {total} random graphs): PASS ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_3_single_color_reduction() {
    let started = Instant::now();
    let mut count = 0usize;
    for &density in &[0.0, 0.3, 0.7, 1.0] {
        for n in 0..=7usize {
            for rep in 0..2u64 {
                let seed = 77_000 + (density * 10.0) as u64 * 1000 + n as u64 * 10 + rep;
                let graph = graph_random(n, 1, density, seed).unwrap();
                let stanley = build_stanley_matrix(&graph).unwrap();
                let colored = build_colored_matrix(&graph);
                assert_eq!(stanley, colored, "n={n} density={density} seed={seed}");
                assert_eq!(
                    det_division_free(&stanley),
                    single_color_path_sum(&graph),
                    "determinant vs direct path model: n={n} density={density} seed={seed}"
                );
                count += 1;
            }
        }
    }
    assert!(count >= 50, "only {count} single-color graphs checked");
    println!(
        "criterion 3 (single-color reduction on {count} graphs): PASS ({:?})",
        started.elapsed()
    );
}

/// Independent oracle for the single-color identity: enumerate increasing
/// vertex sequences straight from the edge relation and sum the products of
/// all their vertex variables. Shares no code with the library's path or
/// word enumerations.
fn single_color_path_sum(g: &ColoredDigraph) -> Polynomial {
    fn extend(
        g: &ColoredDigraph,
        path: &mut Vec<u32>,
        acc: &mut Polynomial,
    ) {
        let monomial: Polynomial = path
            .iter()
            .map(|&v| format!("x{v}_1"))
            .collect::<Vec<_>>()
            .join("*")
            .parse()
            .unwrap();
        *acc = acc.add(&monomial);
        let last = *path.last().unwrap();
        for next in (last + 1)..=g.n() as u32 {
            if g.has_colored_edge(last, next, 1) {
                path.push(next);
                extend(g, path, acc);
                path.pop();
            }
        }
    }
    let mut acc = Polynomial::one();
    for start in 1..=g.n() as u32 {
        extend(g, &mut vec![start], &mut acc);
    }
    acc
}

#[test]
fn criterion_4_cancellation_audit() {
    let started = Instant::now();
    let mut graphs = 0usize;
    let mut covers = 0usize;
    for (n, k, density, seed) in sweep() {
        if n > 6 {
            continue;
        }
        let graph = graph_random(n, k, density, seed).unwrap();
        let matrix = build_colored_matrix(&graph);
        let report = verify_cancellation(&matrix)
            .unwrap_or_else(|e| panic!("n={n} k={k} density={density} seed={seed}: {e}"));
        assert!(report.complex_signed_sum.is_zero());
        assert_eq!(report.simple_signed_sum, report.determinant);
        assert_eq!(report.orbits.len() * 2, report.complex_count);
        graphs += 1;
        covers += report.total;
    }
    println!(
        "criterion 4 (cancellation audit: {graphs} graphs, {covers} cycle covers): PASS ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_5_reference_pairing_fixture() {
    let started = Instant::now();
    let top = LinearSubdigraph::from_cycles(
        11,
        vec![vec![1, 7, 6, 9, 10, 3, 2], vec![4, 5], vec![8, 11]],
    )
    .unwrap();
    let bottom =
        LinearSubdigraph::from_cycles(11, vec![vec![1, 7, 6, 9, 10, 4, 5, 3, 2], vec![8, 11]])
            .unwrap();

    let down = involution_step(&top).unwrap();
    assert_eq!(down.result, bottom);
    assert_eq!(
        down.case,
        InvolutionCase::Merge {
            enclosed: 4,
            enclosed_pred: 5,
            witness_from: 10,
            witness_to: 3,
        }
    );

    let up = involution_step(&bottom).unwrap();
    assert_eq!(up.result, top);
    assert_eq!(up.acting_point, 4);
    assert!(matches!(up.case, InvolutionCase::Split { corner: 4, .. }));

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 5 (reference pairing fixture): PASS ({elapsed:?})");
}

#[test]
fn criterion_6_structural_invariants() {
    let started = Instant::now();
    let mut checked = 0usize;
    for (n, k, density, seed) in sweep() {
        let graph = graph_random(n, k, density, seed).unwrap();
        let matrix = build_colored_matrix(&graph);
        check_term_counts(&graph, &matrix)
            .unwrap_or_else(|e| panic!("n={n} k={k} density={density} seed={seed}: {e}"));

        let gf = path_generating_function(&graph);
        assert!(
            gf.constant_term().is_one(),
            "constant term: n={n} k={k} density={density} seed={seed}"
        );
        assert!(
            gf.terms().all(|(_, c)| c.is_one()),
            "unit coefficients: n={n} k={k} density={density} seed={seed}"
        );
        let paths = enumerate_colored_paths(&graph).len();
        assert_eq!(
            gf.num_terms() - 1,
            k * paths,
            "term count: n={n} k={k} density={density} seed={seed}"
        );
        checked += 1;
    }
    println!(
        "criterion 6 (structural invariants on {checked} instances): PASS ({:?})",
        started.elapsed()
    );
}
