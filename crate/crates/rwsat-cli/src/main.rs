//! Command-line front end: model counting, Max-SAT, width reports,
//! decomposition files, differential verification, and benchmarks.
//!
//! Exit codes: 0 success, 1 input or verification failure, 2 invalid
//! decomposition file, 3 parse-tree regeneration mismatch. The final
//! stdout line of a result-producing command is a single decimal
//! integer.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rwsat::decomposition::{
    exact_decomposition, heuristic_decomposition, read_decomposition, write_decomposition,
    BranchDecomposition, WidthReport,
};
use rwsat::dp::{run_dp, Counting, DpRun, Semiring, Tropical};
use rwsat::families::{chain_formula, clique_formula, random_cnf, random_decomposition, random_fixed_cnf};
use rwsat::formula::{build_signed_graph, parse_dimacs, CnfFormula, SignedGraph};
use rwsat::oracle::{brute_force_count, brute_force_max_sat};
use rwsat::parsetree::{
    build_parse_tree, build_parse_tree_with_widths, verify_parse_tree, SignedParseTree,
};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "rwsat",
    version,
    about = "Exact #SAT and Max-SAT via dynamic programming over rank-decompositions \
             of the signed incidence graph"
)]
struct Cli {
    /// Cap on worker threads for multi-instance commands.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the satisfying assignments of a DIMACS CNF file.
    Count(SolveArgs),
    /// Maximum number of simultaneously satisfiable clauses.
    Maxsat(SolveArgs),
    /// Report the decomposition widths for a formula.
    Width {
        file: PathBuf,
        /// Exhaustive decomposition search up to this many vertices.
        #[arg(long, default_value_t = 10)]
        exact_cap: usize,
        /// Emit the full JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Write a branch-decomposition of the formula's signed incidence
    /// graph to a file.
    Decompose {
        file: PathBuf,
        /// Output path for the decomposition.
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 10)]
        exact_cap: usize,
    },
    /// Differential test: solver results must agree across
    /// decompositions and with brute force.
    Verify {
        /// CNF file to verify; without it, seeded random instances.
        file: Option<PathBuf>,
        /// Number of random instances when no file is given.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Base seed for random instances.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time the counting pipeline across doubling instance sizes.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Chain)]
        family: Family,
        /// Size range `a..b`: sizes start at a and double up to b.
        #[arg(long, default_value = "1000..8000")]
        sizes: String,
        /// Also write the CSV table to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    /// Use a decomposition from this file instead of searching.
    #[arg(long)]
    decomp: Option<PathBuf>,
    /// Exhaustive decomposition search up to this many vertices.
    #[arg(long, default_value_t = 10)]
    exact_cap: usize,
    /// Emit the full JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Two-variable clauses chained by a shared variable.
    Chain,
    /// Identical full positive clauses (dense, width one).
    Clique,
    /// Seeded random 3-CNF over six variables.
    Random,
}

enum Failure {
    /// Unreadable or malformed input (exit 1).
    Input(String),
    /// Invalid decomposition (exit 2).
    Decomposition(String),
    /// Parse-tree regeneration mismatch (exit 3).
    Regeneration(String),
    /// Verification found disagreements (exit 1).
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Mismatch(_) => 1,
            Failure::Decomposition(_) => 2,
            Failure::Regeneration(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m)
            | Failure::Decomposition(m)
            | Failure::Regeneration(m)
            | Failure::Mismatch(m) => m,
        }
    }
}

type CmdResult<T> = Result<T, Failure>;

/// Write one line to stdout; when the reader has gone away (e.g. the
/// output is piped into `head`), stop quietly instead of panicking.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if stdout.write_fmt(args).and_then(|()| stdout.write_all(b"\n")).is_err() {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> CmdResult<()> {
    match cli.command {
        Command::Count(args) => solve(&args, true),
        Command::Maxsat(args) => solve(&args, false),
        Command::Width { file, exact_cap, json } => report_width(&file, exact_cap, json),
        Command::Decompose { file, output, exact_cap } => decompose(&file, &output, exact_cap),
        Command::Verify { file, instances, seed } => verify(file.as_deref(), instances, seed, cli.threads),
        Command::Bench { family, sizes, csv } => bench(family, &sizes, csv.as_deref()),
    }
}

// --- reports ---------------------------------------------------------------

#[derive(Serialize)]
struct FormulaStats {
    vars: usize,
    clauses: usize,
    literals: usize,
}

#[derive(Serialize)]
struct DecompStats {
    source: &'static str,
    t_pos: usize,
    t_neg: usize,
    signed: usize,
}

#[derive(Serialize)]
struct IndexStats {
    pos: usize,
    neg: usize,
}

#[derive(Serialize, Default)]
struct TimingMs {
    parse: f64,
    decompose: f64,
    parse_tree: f64,
    verify: f64,
    dp: f64,
    total: f64,
}

#[derive(Serialize)]
struct RunReport {
    schema: u32,
    command: &'static str,
    input: String,
    formula: FormulaStats,
    decomposition: DecompStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    subspace_index: Option<IndexStats>,
    result: ResultField,
    timing_ms: TimingMs,
}

#[derive(Serialize)]
struct ResultField {
    kind: &'static str,
    value: String,
}

impl RunReport {
    fn print(&self, json: bool) {
        if json {
            outln!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
        } else {
            outln!(
                "formula: {} vars, {} clauses, {} literals",
                self.formula.vars, self.formula.clauses, self.formula.literals
            );
            outln!(
                "decomposition: {}, t+={}, t-={}, signed={}",
                self.decomposition.source,
                self.decomposition.t_pos,
                self.decomposition.t_neg,
                self.decomposition.signed
            );
            if let Some(idx) = &self.subspace_index {
                outln!("subspace index: {} positive, {} negative", idx.pos, idx.neg);
            }
            outln!(
                "time: parse {:.2}ms, decompose {:.2}ms, parse-tree {:.2}ms, verify {:.2}ms, \
                 dp {:.2}ms, total {:.2}ms",
                self.timing_ms.parse,
                self.timing_ms.decompose,
                self.timing_ms.parse_tree,
                self.timing_ms.verify,
                self.timing_ms.dp,
                self.timing_ms.total
            );
        }
        // machine-parseable: the result is always the last stdout line
        outln!("{}", self.result.value);
    }
}

// --- shared pipeline --------------------------------------------------------

fn ms(from: Instant) -> f64 {
    from.elapsed().as_secs_f64() * 1e3
}

fn load_formula(path: &Path) -> CmdResult<CnfFormula> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let parsed =
        parse_dimacs(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.formula)
}

fn formula_stats(f: &CnfFormula) -> FormulaStats {
    FormulaStats { vars: f.num_vars(), clauses: f.num_clauses(), literals: f.literal_count() }
}

/// Decomposition preference: explicit file, then exhaustive search on
/// small graphs, then the greedy heuristic. A file route reports no
/// widths; the parse-tree construction measures them for free later,
/// and a separate cut-by-cut scan would dwarf the rest of the pipeline
/// on big instances.
fn choose_decomposition(
    g: &SignedGraph,
    decomp_file: Option<&Path>,
    exact_cap: usize,
) -> CmdResult<(BranchDecomposition, Option<WidthReport>, &'static str)> {
    if let Some(path) = decomp_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Decomposition(format!("cannot read {}: {e}", path.display())))?;
        let d = read_decomposition(&text, g)
            .map_err(|e| Failure::Decomposition(format!("{}: {e}", path.display())))?;
        d.validate(g).map_err(|e| Failure::Decomposition(format!("{}: {e}", path.display())))?;
        Ok((d, None, "file"))
    } else if g.n() <= exact_cap {
        let (d, w) = exact_decomposition(g, exact_cap)
            .map_err(|e| Failure::Decomposition(e.to_string()))?;
        Ok((d, Some(w), "exact"))
    } else {
        let (d, w) = heuristic_decomposition(g);
        Ok((d, Some(w), "heuristic"))
    }
}

struct Prepared {
    tree: SignedParseTree,
    widths: WidthReport,
    source: &'static str,
    timing: TimingMs,
}

/// Decompose, build the parse tree, and check regeneration — always,
/// so a construction bug can never reach the DP.
fn prepare(
    g: &SignedGraph,
    decomp_file: Option<&Path>,
    exact_cap: usize,
) -> CmdResult<Prepared> {
    let started = Instant::now();
    let (d, widths, source) = choose_decomposition(g, decomp_file, exact_cap)?;
    let decompose_ms = ms(started);

    let started = Instant::now();
    let (tree, built_widths) = build_parse_tree_with_widths(&d, g);
    let widths = widths.unwrap_or(built_widths);
    let parse_tree_ms = ms(started);

    let started = Instant::now();
    if !verify_parse_tree(&tree, g) {
        return Err(Failure::Regeneration(
            "parse tree does not regenerate the signed incidence graph".into(),
        ));
    }
    let verify_ms = ms(started);

    Ok(Prepared {
        tree,
        widths,
        source,
        timing: TimingMs {
            decompose: decompose_ms,
            parse_tree: parse_tree_ms,
            verify: verify_ms,
            ..TimingMs::default()
        },
    })
}

fn solve(args: &SolveArgs, counting: bool) -> CmdResult<()> {
    let command = if counting { "count" } else { "maxsat" };
    let total_start = Instant::now();
    let parse_start = Instant::now();
    let f = load_formula(&args.file)?;
    let parse_ms = ms(parse_start);
    let g = build_signed_graph(&f);

    if g.n() == 0 {
        // no variables and no clauses: one empty model, nothing to satisfy
        let report = RunReport {
            schema: 1,
            command,
            input: args.file.display().to_string(),
            formula: formula_stats(&f),
            decomposition: DecompStats { source: "none", t_pos: 0, t_neg: 0, signed: 0 },
            subspace_index: None,
            result: ResultField {
                kind: command,
                value: if counting { "1".into() } else { "0".into() },
            },
            timing_ms: TimingMs { parse: parse_ms, total: ms(total_start), ..TimingMs::default() },
        };
        report.print(args.json);
        return Ok(());
    }

    let mut prepared = prepare(&g, args.decomp.as_deref(), args.exact_cap)?;

    let dp_start = Instant::now();
    let (value, index) = if counting {
        let run: DpRun<Counting> = run_dp(&prepared.tree, false);
        let count = run.root_table.total().0;
        (count.to_string(), IndexStats {
            pos: run.indexes.pos.subspaces.len(),
            neg: run.indexes.neg.subspaces.len(),
        })
    } else {
        let run: DpRun<Tropical> = run_dp(&prepared.tree, false);
        let defect = run.root_table.total();
        assert!(!defect.is_zero(), "min-plus root table cannot be empty");
        let clauses = f.num_clauses() as u64;
        assert!(defect.0 <= clauses, "minimum defect exceeds the clause count");
        ((clauses - defect.0).to_string(), IndexStats {
            pos: run.indexes.pos.subspaces.len(),
            neg: run.indexes.neg.subspaces.len(),
        })
    };
    prepared.timing.dp = ms(dp_start);
    prepared.timing.parse = parse_ms;
    prepared.timing.total = ms(total_start);

    let report = RunReport {
        schema: 1,
        command,
        input: args.file.display().to_string(),
        formula: formula_stats(&f),
        decomposition: DecompStats {
            source: prepared.source,
            t_pos: prepared.widths.t_pos,
            t_neg: prepared.widths.t_neg,
            signed: prepared.widths.signed,
        },
        subspace_index: Some(index),
        result: ResultField { kind: command, value },
        timing_ms: prepared.timing,
    };
    report.print(args.json);
    Ok(())
}

fn report_width(file: &Path, exact_cap: usize, json: bool) -> CmdResult<()> {
    let total_start = Instant::now();
    let parse_start = Instant::now();
    let f = load_formula(file)?;
    let parse_ms = ms(parse_start);
    let g = build_signed_graph(&f);

    let (widths, source, decompose_ms) = if g.n() == 0 {
        (WidthReport { t_pos: 0, t_neg: 0, signed: 0 }, "none", 0.0)
    } else {
        let started = Instant::now();
        let (_, w, source) = choose_decomposition(&g, None, exact_cap)?;
        (w.expect("search routes always report widths"), source, ms(started))
    };

    let report = RunReport {
        schema: 1,
        command: "width",
        input: file.display().to_string(),
        formula: formula_stats(&f),
        decomposition: DecompStats {
            source,
            t_pos: widths.t_pos,
            t_neg: widths.t_neg,
            signed: widths.signed,
        },
        subspace_index: None,
        result: ResultField { kind: "width", value: widths.signed.to_string() },
        timing_ms: TimingMs {
            parse: parse_ms,
            decompose: decompose_ms,
            total: ms(total_start),
            ..TimingMs::default()
        },
    };
    report.print(json);
    Ok(())
}

fn decompose(file: &Path, output: &Path, exact_cap: usize) -> CmdResult<()> {
    let f = load_formula(file)?;
    let g = build_signed_graph(&f);
    if g.n() == 0 {
        return Err(Failure::Decomposition(
            "the empty formula has no incidence graph to decompose".into(),
        ));
    }
    let (d, w, source) = choose_decomposition(&g, None, exact_cap)?;
    let w = w.expect("search routes always report widths");
    let text = write_decomposition(&d, &g);
    std::fs::write(output, text)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", output.display())))?;
    outln!(
        "wrote {} ({} decomposition, t+={}, t-={}, signed={})",
        output.display(),
        source,
        w.t_pos,
        w.t_neg,
        w.signed
    );
    outln!("{}", w.signed);
    Ok(())
}

// --- verify ------------------------------------------------------------------

/// Check one formula end to end: every decomposition route must
/// validate, regenerate the graph, and produce the same count and
/// Max-SAT value; brute force must agree when feasible.
fn verify_instance(f: &CnfFormula, seed: u64) -> Result<(), String> {
    let g = build_signed_graph(f);
    if g.n() == 0 {
        return Ok(());
    }

    let mut routes: Vec<(String, BranchDecomposition)> = Vec::new();
    let (dh, _) = heuristic_decomposition(&g);
    routes.push(("heuristic".into(), dh));
    if g.n() <= 9 {
        let (de, _) =
            exact_decomposition(&g, 10).map_err(|e| format!("exact search failed: {e}"))?;
        routes.push(("exact".into(), de));
    }
    for k in 0..2u64 {
        routes.push((format!("random-{k}"), random_decomposition(seed ^ (k + 1), &g)));
    }

    let mut counts: Vec<rwsat::BigUint> = Vec::new();
    let mut bests: Vec<u64> = Vec::new();
    for (name, d) in &routes {
        d.validate(&g).map_err(|e| format!("{name} decomposition invalid: {e}"))?;
        let tree = build_parse_tree(d, &g);
        if !verify_parse_tree(&tree, &g) {
            return Err(format!("{name} parse tree failed to regenerate the graph"));
        }
        counts.push(
            rwsat::dp::count_models(f, &tree).map_err(|e| format!("{name} count: {e}"))?,
        );
        bests.push(rwsat::dp::max_sat(f, &tree).map_err(|e| format!("{name} maxsat: {e}"))?);
    }
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("counts disagree across decompositions: {counts:?}"));
    }
    if bests.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("max-sat values disagree across decompositions: {bests:?}"));
    }

    if f.num_vars() <= 20 {
        let reference = brute_force_count(f, 20).expect("guarded by the variable cap");
        if counts[0] != reference {
            return Err(format!("count {} but brute force says {reference}", counts[0]));
        }
        let reference = brute_force_max_sat(f, 20).expect("guarded by the variable cap");
        if bests[0] != reference {
            return Err(format!("max-sat {} but brute force says {reference}", bests[0]));
        }
    }
    Ok(())
}

fn verify(
    file: Option<&Path>,
    instances: usize,
    seed: u64,
    threads: Option<usize>,
) -> CmdResult<()> {
    let mut failures: Vec<String> = Vec::new();
    let checked;

    if let Some(path) = file {
        let f = load_formula(path)?;
        checked = 1;
        if let Err(e) = verify_instance(&f, seed) {
            failures.push(format!("{}: {e}", path.display()));
        }
    } else {
        checked = instances;
        let workers = threads
            .unwrap_or_else(|| {
                std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
            })
            .clamp(1, instances.max(1));
        let mut results: Vec<(usize, String)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        let mut local = Vec::new();
                        let mut i = w;
                        while i < instances {
                            let f = random_cnf(seed.wrapping_add(i as u64), 6, 8, 3);
                            if let Err(e) = verify_instance(&f, seed.wrapping_add(i as u64)) {
                                local.push((i, format!("instance {i}: {e}\n{}", f.to_dimacs())));
                            }
                            i += workers;
                        }
                        local
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        });
        results.sort_by_key(|(i, _)| *i);
        failures.extend(results.into_iter().map(|(_, m)| m));
    }

    for failure in &failures {
        eprintln!("mismatch: {failure}");
    }
    outln!("verified {checked} instance(s), {} mismatch(es)", failures.len());
    outln!("{}", failures.len());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} of {checked} instance(s) failed", failures.len())))
    }
}

// --- bench -------------------------------------------------------------------

fn parse_sizes(spec: &str) -> CmdResult<Vec<usize>> {
    let (a, b) = spec
        .split_once("..")
        .ok_or_else(|| Failure::Input(format!("size range must look like 1000..8000, got {spec}")))?;
    let lo: usize = a.trim().parse().map_err(|_| Failure::Input(format!("bad size: {a}")))?;
    let hi: usize = b.trim().parse().map_err(|_| Failure::Input(format!("bad size: {b}")))?;
    if lo == 0 || hi < lo {
        return Err(Failure::Input(format!("empty size range: {spec}")));
    }
    let mut sizes = Vec::new();
    let mut s = lo;
    while s <= hi {
        sizes.push(s);
        s *= 2;
    }
    Ok(sizes)
}

fn bench_formula(family: Family, size: usize) -> CnfFormula {
    match family {
        Family::Chain => chain_formula(size),
        Family::Clique => clique_formula(3, size),
        Family::Random => random_fixed_cnf(97, 6, size, 3),
    }
}

fn bench(family: Family, sizes: &str, csv: Option<&Path>) -> CmdResult<()> {
    let sizes = parse_sizes(sizes)?;
    let family_name = match family {
        Family::Chain => "chain",
        Family::Clique => "clique",
        Family::Random => "random",
    };
    outln!("family={family_name}");
    outln!("{:>10} {:>8} {:>12}", "size", "width", "wall_ms");
    let mut csv_text = String::from("size,width,wall_ms\n");
    for &size in &sizes {
        let f = bench_formula(family, size);
        let g = build_signed_graph(&f);
        let started = Instant::now();
        let (d, w) = heuristic_decomposition(&g);
        let tree = build_parse_tree(&d, &g);
        if !verify_parse_tree(&tree, &g) {
            return Err(Failure::Regeneration(format!(
                "parse tree regeneration failed at size {size}"
            )));
        }
        let run: DpRun<Counting> = run_dp(&tree, false);
        let _count = run.root_table.total();
        let wall = ms(started);
        outln!("{size:>10} {:>8} {wall:>12.2}", w.signed);
        let _ = writeln!(csv_text, "{size},{},{wall:.3}", w.signed);
    }
    match csv {
        Some(path) => std::fs::write(path, &csv_text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv_text}"),
    }
    Ok(())
}
