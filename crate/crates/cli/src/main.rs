//! Batch command-line front end: ingest a graph as JSON, emit matrices and
//! polynomials, run the verification stack, and generate random instances.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 input error, 3 resource bound. Diagnostics go to stderr as one JSON
//! object `{"error": kind, "detail": text}`.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathdet::determinant::{DEFAULT_ORACLE_BOUND, DEFAULT_TERM_CEILING};
use pathdet::digraph::GraphJson;
use pathdet::lsd::DEFAULT_LSD_BOUND;
use pathdet::pathmatrix::check_term_counts;
use pathdet::{
    best_word_sum, build_colored_matrix, build_stanley_matrix, classify, det_division_free_with,
    det_leibniz_with, det_via_lsd_with, enumerate_colored_paths, enumerate_lsd_with, graph_random,
    involution_step, path_generating_function, verify_cancellation_with, ColoredDigraph,
    DetError, DetOptions, LsdError, PolyMatrix, Polynomial,
};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pathdet",
    about = "Exact path-counting determinants for colored acyclic digraphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the path-counting matrix of a graph.
    Matrix(MatrixArgs),
    /// Print the determinant of the graph's matrix.
    Det(DetArgs),
    /// List colored paths or print their generating function.
    Paths(PathsArgs),
    /// Check determinant routes, path models and the cancellation audit.
    Verify(VerifyArgs),
    /// Report the pairing on all complex cycle covers of the matrix digraph.
    Involution(InvolutionArgs),
    /// Emit a seeded random graph as JSON.
    Random(RandomArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Leibniz,
    DivisionFree,
    Lsd,
}

#[derive(Args)]
struct BoundArgs {
    /// Dimension cap for the permutation-expansion determinant.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    oracle_bound: usize,
    /// Dimension cap for exhaustive cycle-cover enumeration.
    #[arg(long, default_value_t = DEFAULT_LSD_BOUND)]
    lsd_bound: usize,
    /// Abort when an intermediate polynomial exceeds this many terms.
    #[arg(long, default_value_t = DEFAULT_TERM_CEILING)]
    term_ceiling: usize,
}

impl BoundArgs {
    fn det_options(&self) -> DetOptions {
        DetOptions {
            oracle_bound: self.oracle_bound,
            term_ceiling: self.term_ceiling,
        }
    }
}

#[derive(Args)]
struct MatrixArgs {
    /// Graph description in the JSON format.
    input: String,
    /// Build the classical single-color matrix (requires k = 1).
    #[arg(long)]
    stanley: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DetArgs {
    input: String,
    #[arg(long, value_enum, default_value_t = Algorithm::DivisionFree)]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PathsMode {
    /// Print one line per colored path.
    #[arg(long)]
    list: bool,
    /// Print the path generating function.
    #[arg(long)]
    gf: bool,
}

#[derive(Args)]
struct PathsArgs {
    input: String,
    #[command(flatten)]
    mode: PathsMode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph description in the JSON format; omit with --random.
    input: Option<String>,
    /// Sweep seeded random graphs instead: N K DENSITY.
    #[arg(long, num_args = 3, value_names = ["N", "K", "DENSITY"], conflicts_with = "input")]
    random: Option<Vec<String>>,
    /// First seed of the random sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random graphs to check.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// File holding the expected determinant text; mismatch fails with a diff.
    #[arg(long, conflicts_with = "random")]
    expect_det: Option<String>,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct InvolutionArgs {
    input: String,
    /// Check one cycle cover pairwise instead of enumerating, given in
    /// cycle notation, e.g. "(1 7 6 9 10 3 2)(4 5)(8 11)".
    #[arg(long)]
    cover: Option<String>,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A diagnosed failure: machine-readable kind and detail, plus the exit code.
struct Failure {
    kind: &'static str,
    detail: String,
    exit: u8,
}

impl Failure {
    fn input(kind: &'static str, detail: impl Into<String>) -> Self {
        Failure {
            kind,
            detail: detail.into(),
            exit: EXIT_INPUT,
        }
    }

    fn bound(detail: impl Into<String>) -> Self {
        Failure {
            kind: "bound",
            detail: detail.into(),
            exit: EXIT_BOUND,
        }
    }

    fn verify(detail: impl Into<String>) -> Self {
        Failure {
            kind: "verify",
            detail: detail.into(),
            exit: EXIT_VERIFY,
        }
    }
}

impl From<DetError> for Failure {
    fn from(err: DetError) -> Self {
        Failure::bound(err.to_string())
    }
}

impl From<LsdError> for Failure {
    fn from(err: LsdError) -> Self {
        match err {
            LsdError::BoundExceeded { .. } => Failure::bound(err.to_string()),
            _ => Failure::verify(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": failure.kind, "detail": failure.detail })
            );
            ExitCode::from(failure.exit)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Matrix(args) => cmd_matrix(args),
        Command::Det(args) => cmd_det(args),
        Command::Paths(args) => cmd_paths(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Involution(args) => cmd_involution(args),
        Command::Random(args) => cmd_random(args),
    }
}

fn load_graph(path: &str) -> Result<ColoredDigraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input("io", format!("cannot read {path}: {e}")))?;
    let json: GraphJson = serde_json::from_str(&text)
        .map_err(|e| Failure::input("parse", format!("{path}: {e}")))?;
    ColoredDigraph::from_json(&json)
        .map_err(|e| Failure::input("validate", format!("{path}: {e}")))
}

fn cmd_matrix(args: MatrixArgs) -> Result<(), Failure> {
    let graph = load_graph(&args.input)?;
    let matrix = if args.stanley {
        build_stanley_matrix(&graph)
            .map_err(|e| Failure::input("validate", e.to_string()))?
    } else {
        build_colored_matrix(&graph)
    };
    match args.format {
        Format::Text => print!("{}", matrix.to_text_grid()),
        Format::Json => println!("{}", matrix.to_json()),
    }
    Ok(())
}

fn compute_det(
    matrix: &PolyMatrix,
    algorithm: Algorithm,
    bounds: &BoundArgs,
) -> Result<Polynomial, Failure> {
    match algorithm {
        Algorithm::Leibniz => Ok(det_leibniz_with(matrix, &bounds.det_options())?),
        Algorithm::DivisionFree => {
            Ok(det_division_free_with(matrix, &bounds.det_options())?.determinant)
        }
        Algorithm::Lsd => Ok(det_via_lsd_with(matrix, bounds.lsd_bound)?),
    }
}

fn cmd_det(args: DetArgs) -> Result<(), Failure> {
    let graph = load_graph(&args.input)?;
    let matrix = build_colored_matrix(&graph);
    let det = compute_det(&matrix, args.algorithm, &args.bounds)?;
    match args.format {
        Format::Text => println!("{det}"),
        Format::Json => println!("{}", det.to_json()),
    }
    Ok(())
}

fn cmd_paths(args: PathsArgs) -> Result<(), Failure> {
    let graph = load_graph(&args.input)?;
    if args.mode.list {
        for path in enumerate_colored_paths(&graph) {
            println!("{path}");
        }
    } else {
        let gf = path_generating_function(&graph);
        match args.format {
            Format::Text => println!("{gf}"),
            Format::Json => println!("{}", gf.to_json()),
        }
    }
    Ok(())
}

/// Why one graph failed verification: a resource bound (exit 3) or a
/// genuine mismatch (exit 1).
enum VerifyIssue {
    Bound(String),
    Mismatch(String),
}

impl From<DetError> for VerifyIssue {
    fn from(err: DetError) -> Self {
        VerifyIssue::Bound(err.to_string())
    }
}

impl From<LsdError> for VerifyIssue {
    fn from(err: LsdError) -> Self {
        match err {
            LsdError::BoundExceeded { .. } => VerifyIssue::Bound(err.to_string()),
            other => VerifyIssue::Mismatch(other.to_string()),
        }
    }
}

/// One verified graph: every route agrees and the audit passes, or a
/// description of the first problem.
fn verify_graph(
    graph: &ColoredDigraph,
    bounds: &BoundArgs,
    expect_det: Option<&str>,
) -> Result<VerifyStats, VerifyIssue> {
    let matrix = build_colored_matrix(graph);
    check_term_counts(graph, &matrix)
        .map_err(|e| VerifyIssue::Mismatch(format!("matrix term counts: {e}")))?;

    let division_free = det_division_free_with(&matrix, &bounds.det_options())?.determinant;
    let leibniz = det_leibniz_with(&matrix, &bounds.det_options())?;
    if let Some(expected) = expect_det {
        let got = leibniz.to_string();
        if got != expected {
            return Err(VerifyIssue::Mismatch(text_diff(expected, &got)));
        }
    }
    let via_covers = det_via_lsd_with(&matrix, bounds.lsd_bound)?;
    let gf = path_generating_function(graph);
    let words = best_word_sum(graph);

    if division_free != leibniz {
        return Err(VerifyIssue::Mismatch(
            "division-free determinant != permutation expansion".into(),
        ));
    }
    if via_covers != leibniz {
        return Err(VerifyIssue::Mismatch(
            "cycle-cover sum != permutation expansion".into(),
        ));
    }
    if gf != leibniz {
        return Err(VerifyIssue::Mismatch(format!(
            "determinant != path generating function\n  det: {leibniz}\n  gf:  {gf}"
        )));
    }
    if words != gf {
        return Err(VerifyIssue::Mismatch(
            "best-word sum != path generating function".into(),
        ));
    }

    let audit = verify_cancellation_with(&matrix, bounds.lsd_bound)?;
    Ok(VerifyStats {
        det_terms: leibniz.num_terms(),
        covers: audit.total,
        complex: audit.complex_count,
        orbits: audit.orbits.len(),
    })
}

struct VerifyStats {
    det_terms: usize,
    covers: usize,
    complex: usize,
    orbits: usize,
}

/// Points at the first byte where the determinant text diverges from the
/// expected fixture.
fn text_diff(expected: &str, got: &str) -> String {
    let at = expected
        .bytes()
        .zip(got.bytes())
        .position(|(a, b)| a != b)
        .unwrap_or(expected.len().min(got.len()));
    let window = |s: &str| {
        let start = at.saturating_sub(20);
        let end = (at + 20).min(s.len());
        s.get(start..end).unwrap_or("").to_string()
    };
    format!(
        "determinant differs from the expected fixture at byte {at}\n  expected: ...{}...\n  got:      ...{}...",
        window(expected),
        window(got)
    )
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let graphs: Vec<(String, ColoredDigraph)> = if let Some(params) = &args.random {
        let n: usize = params[0]
            .parse()
            .map_err(|_| Failure::input("parse", format!("--random N: bad value {}", params[0])))?;
        let k: usize = params[1]
            .parse()
            .map_err(|_| Failure::input("parse", format!("--random K: bad value {}", params[1])))?;
        let density: f64 = params[2].parse().map_err(|_| {
            Failure::input("parse", format!("--random DENSITY: bad value {}", params[2]))
        })?;
        if !(0.0..=1.0).contains(&density) {
            return Err(Failure::input("validate", "density must lie in [0, 1]"));
        }
        (args.seed..args.seed + args.count)
            .map(|seed| {
                graph_random(n, k, density, seed)
                    .map(|g| (format!("seed {seed}"), g))
                    .map_err(|e| Failure::input("validate", e.to_string()))
            })
            .collect::<Result<_, _>>()?
    } else if let Some(path) = &args.input {
        vec![(path.clone(), load_graph(path)?)]
    } else {
        return Err(Failure::input(
            "usage",
            "verify needs an input file or --random N K DENSITY",
        ));
    };

    let expect_det = match &args.expect_det {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map(|s| s.trim_end().to_string())
                .map_err(|e| Failure::input("io", format!("cannot read {path}: {e}")))?,
        ),
        None => None,
    };

    let mut total_covers = 0usize;
    let mut total_complex = 0usize;
    let mut total_orbits = 0usize;
    for (label, graph) in &graphs {
        match verify_graph(graph, &args.bounds, expect_det.as_deref()) {
            Ok(stats) => {
                println!(
                    "{label}: ok (det {} terms; {} covers, {} complex in {} orbits)",
                    stats.det_terms, stats.covers, stats.complex, stats.orbits
                );
                total_covers += stats.covers;
                total_complex += stats.complex;
                total_orbits += stats.orbits;
            }
            Err(VerifyIssue::Bound(detail)) => {
                return Err(Failure::bound(format!("{label}: {detail}")));
            }
            Err(VerifyIssue::Mismatch(detail)) => {
                println!("{label}: FAIL — {detail}");
                println!(
                    "counterexample graph: {}",
                    serde_json::json!(graph.to_json())
                );
                println!("result               FAIL");
                return Err(Failure::verify(format!("{label}: {detail}")));
            }
        }
    }
    println!();
    println!("graphs checked       {}", graphs.len());
    println!("identity checks      ok (4 routes per graph)");
    println!("cancellation audit   ok ({total_covers} covers, {total_complex} complex, {total_orbits} orbits)");
    println!("result               PASS");
    Ok(())
}

/// Parses cycle notation like "(1 7 6 9 10 3 2)(4 5)(8 11)" into a cover
/// of `1..=n`.
fn parse_cover(n: usize, text: &str) -> Result<pathdet::LinearSubdigraph, Failure> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut current: Option<Vec<u32>> = None;
    let mut number = String::new();
    let flush = |current: &mut Option<Vec<u32>>, number: &mut String| -> Result<(), Failure> {
        if number.is_empty() {
            return Ok(());
        }
        let v: u32 = number
            .parse()
            .map_err(|_| Failure::input("parse", format!("bad vertex '{number}' in cover")))?;
        number.clear();
        match current {
            Some(cycle) => cycle.push(v),
            None => return Err(Failure::input("parse", "vertex outside parentheses in cover")),
        }
        Ok(())
    };
    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(Failure::input("parse", "nested '(' in cover"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut current, &mut number)?;
                let cycle = current
                    .take()
                    .ok_or_else(|| Failure::input("parse", "')' without '(' in cover"))?;
                cycles.push(cycle);
            }
            c if c.is_ascii_digit() => number.push(c),
            c if c.is_whitespace() || c == ',' => flush(&mut current, &mut number)?,
            c => {
                return Err(Failure::input("parse", format!("unexpected '{c}' in cover")));
            }
        }
    }
    if current.is_some() {
        return Err(Failure::input("parse", "unclosed '(' in cover"));
    }
    pathdet::LinearSubdigraph::from_cycles(n, cycles)
        .map_err(|e| Failure::input("validate", e.to_string()))
}

fn cmd_involution(args: InvolutionArgs) -> Result<(), Failure> {
    let graph = load_graph(&args.input)?;

    if let Some(text) = &args.cover {
        // Pairwise mode: apply the pairing to the one given cover and to
        // its image, and confirm they map to each other. No enumeration,
        // so the dimension bound does not apply.
        let gamma = parse_cover(graph.n(), text)?;
        let step = involution_step(&gamma).map_err(|e| match e {
            LsdError::NotComplex => Failure::input("validate", e.to_string()),
            other => Failure::from(other),
        })?;
        let back = involution_step(&step.result)?;
        println!("cover    {gamma}");
        println!("acting   start={} point={} case={}", step.acting_cycle_start, step.acting_point, step.case.kind());
        println!("partner  {}", step.result);
        if back.result != gamma {
            return Err(Failure::verify(format!(
                "pairing is not an involution on this cover:\n  forward:  {gamma} -> {}\n  backward: {} -> {}",
                step.result, step.result, back.result
            )));
        }
        println!("back     {} (case={}) — pair confirmed", back.result, back.case.kind());
        return Ok(());
    }

    let matrix = build_colored_matrix(&graph);
    let covers = enumerate_lsd_with(graph.n(), args.bounds.lsd_bound)?;

    let mut lines = String::new();
    let mut complex = 0usize;
    for gamma in &covers {
        if !classify(gamma).is_complex {
            continue;
        }
        complex += 1;
        let step = involution_step(gamma)?;
        let acting = gamma
            .cycles()
            .iter()
            .find(|c| c.start() == step.acting_cycle_start)
            .expect("acting cycle is part of the cover");
        let _ = writeln!(
            lines,
            "{gamma}  acting={acting} point={} case={}  partner={}",
            step.acting_point,
            step.case.kind(),
            step.result
        );
    }
    if complex == 0 {
        println!("no complex linear subdigraphs ({} covers checked)", covers.len());
        return Ok(());
    }
    // The audit asserts the pairing properties and the zero sum.
    let report = verify_cancellation_with(&matrix, args.bounds.lsd_bound)?;
    print!("{lines}");
    println!();
    println!("covers               {}", report.total);
    println!("complex              {} in {} orbits", report.complex_count, report.orbits.len());
    println!("complex signed sum   {}", report.complex_signed_sum);
    println!("simple signed sum    matches determinant ({} terms)", report.determinant.num_terms());
    Ok(())
}

fn cmd_random(args: RandomArgs) -> Result<(), Failure> {
    if !(0.0..=1.0).contains(&args.density) {
        return Err(Failure::input("validate", "density must lie in [0, 1]"));
    }
    let graph = graph_random(args.n, args.k, args.density, args.seed)
        .map_err(|e| Failure::input("validate", e.to_string()))?;
    println!("{}", serde_json::json!(graph.to_json()));
    Ok(())
}
