use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use acyclic_matching::bench::{bench_all, greedy_acyclic, BenchRow, CSV_HEADER};
use acyclic_matching::bounds::{self, stage_budget_ok};
use acyclic_matching::gen::{Family, GenSpec};
use acyclic_matching::graph::Graph;
use acyclic_matching::io::{parse_edge_list, parse_matching, write_edge_list, write_matching};
use acyclic_matching::oracle::{exact_max_capped, parse_kind, DEFAULT_CAP};
use acyclic_matching::reducer::{closure, solve_with, ReduceError, SolveOptions};
use acyclic_matching::verify::{check, check_acyclic, check_corona, Matching, Violation};

/// Large acyclic matchings in bounded-degree graphs.
///
/// Exit codes: 0 success, 1 input or usage error, 2 a certificate or internal
/// check failed.
#[derive(Parser)]
#[command(name = "acmatch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the reduction and certify the size bound.
    Solve(SolveArgs),
    /// Exact maximum by branch and bound (small graphs only).
    Exact(ExactArgs),
    /// Check a matching file against a graph.
    Verify(VerifyArgs),
    /// Generate an instance.
    Gen(GenArgs),
    /// Print every closed-form bound for the given parameters.
    Bounds(BoundsArgs),
    /// Solve every `.el` file in a directory and print CSV rows.
    ///
    /// Columns: id,n,m,delta,size,bound,bound_ok,oracle,ratio_bound,ratio_opt,time_ms.
    /// `bound` is 6n/(Δ²+12Δ^{3/2}); `oracle` is the exact acyclic optimum
    /// when requested and small enough; floats have 6 significant digits.
    Bench(BenchArgs),
    /// Greedy acyclic matching by lexicographic edge scan, for comparison.
    Baseline(BaselineArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list input.
    #[arg(long = "in")]
    input: PathBuf,
    /// Matching output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report output file (stdout when absent).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Include the per-stage partition accounting in the report.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactKind {
    Plain,
    Acyclic,
    Induced,
    Degenerate,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long, value_enum)]
    kind: ExactKind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "in")]
    input: PathBuf,
    /// Largest vertex count accepted.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Plain,
    Acyclic,
    Induced,
    Degenerate,
    Corona,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    matching: PathBuf,
    #[arg(long, value_enum)]
    kind: VerifyKind,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Joos,
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    RandomCapped,
    RandomTree,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long)]
    n: Option<usize>,
    /// Target edge count for `random-capped`.
    #[arg(long)]
    m: Option<usize>,
    /// Part sizes `a,b` for `complete-bipartite`.
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    m: u64,
    #[arg(long)]
    delta: u64,
    #[arg(long, default_value_t = 1)]
    k: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of `.el` files.
    #[arg(long)]
    dir: PathBuf,
    /// Compare against the exact acyclic optimum on small instances.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        Failure::Check(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_edge_list(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let g = read_graph(&a.input)?;
    let report = solve_with(&g, SolveOptions { analyze: a.trace })?;
    if let Some(out) = &a.out {
        write(out, &write_matching(report.matching.edges()))?;
    }
    let mut trace = report.trace();
    if !a.trace {
        for s in &mut trace.stages {
            s.partition = None;
        }
    }
    emit(a.report.as_deref(), &to_json(&trace))?;
    check_acyclic(&g, report.matching.edges())
        .map_err(|v| Failure::Check(format!("output failed verification: {v}")))?;
    if !report.certified() {
        return Err(Failure::Check(
            "size bound or a stage budget not certified".into(),
        ));
    }
    Ok(())
}

fn cmd_exact(a: ExactArgs) -> Outcome {
    let name = match a.kind {
        ExactKind::Plain => "plain",
        ExactKind::Acyclic => "acyclic",
        ExactKind::Induced => "induced",
        ExactKind::Degenerate => "degenerate",
    };
    let kind = parse_kind(name, a.k).map_err(input)?;
    let g = read_graph(&a.input)?;
    let r = exact_max_capped(&g, kind, a.cap).map_err(input)?;
    emit(None, &to_json(&r))
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let g = read_graph(&a.graph)?;
    let edges = parse_matching(&read(&a.matching)?).map_err(input)?;
    let result: Result<(), Violation> = match a.kind {
        VerifyKind::Corona => check_corona(&g, &edges),
        other => {
            let name = match other {
                VerifyKind::Plain => "plain",
                VerifyKind::Acyclic => "acyclic",
                VerifyKind::Induced => "induced",
                _ => "degenerate",
            };
            check(parse_kind(name, a.k).map_err(input)?, &g, &edges)
        }
    };
    match result {
        Ok(()) => emit(None, &to_json(&json!({ "ok": true }))),
        Err(v) => {
            print!("{}", to_json(&json!({ "ok": false, "witness": v })));
            Err(Failure::Input(format!("verification failed: {v}")))
        }
    }
}

fn cmd_gen(a: GenArgs) -> Outcome {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Input(format!("--{flag} is required for this family")))
    };
    let family = match a.family {
        FamilyName::Joos => Family::Joos {
            delta: need(a.delta, "delta")?,
            copies: a.copies,
        },
        FamilyName::Path => Family::Path { n: need(a.n, "n")? },
        FamilyName::Cycle => Family::Cycle { n: need(a.n, "n")? },
        FamilyName::Complete => Family::Complete { n: need(a.n, "n")? },
        FamilyName::CompleteBipartite => {
            let Some(&[a, b]) = a.parts.as_deref() else {
                return Err(Failure::Input("--parts a,b is required".into()));
            };
            Family::CompleteBipartite { a, b }
        }
        FamilyName::RandomCapped => Family::RandomCapped {
            n: need(a.n, "n")?,
            delta: need(a.delta, "delta")?,
            m_target: need(a.m, "m")?,
        },
        FamilyName::RandomTree => Family::RandomTree { n: need(a.n, "n")? },
    };
    let spec = GenSpec {
        family,
        seed: a.seed,
    };
    let g = spec.generate().map_err(input)?;
    emit(a.out.as_deref(), &write_edge_list(&g, &spec.header()))
}

fn cmd_bounds(a: BoundsArgs) -> Outcome {
    emit(None, &to_json(&bounds::report(a.n, a.m, a.delta, a.k)))
}

fn cmd_bench(a: BenchArgs) -> Outcome {
    let mut paths: Vec<PathBuf> = fs::read_dir(&a.dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "el"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::Input("no instances".into()));
    }
    let instances = paths
        .iter()
        .map(|p| {
            let id = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            Ok((id, read_graph(p)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let rows = bench_all(&instances, a.oracle.then_some(a.cap))
        .into_iter()
        .collect::<Result<Vec<BenchRow>, _>>()?;
    println!("{CSV_HEADER}");
    for r in &rows {
        println!("{}", r.to_csv());
    }
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio_bound).collect();
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    eprintln!(
        "{} instances, ratio to bound: min {min:.6}, mean {mean:.6}",
        rows.len()
    );
    if rows.iter().any(|r| !r.bound_ok) {
        return Err(Failure::Check(
            "some instance missed its certificate".into(),
        ));
    }
    if rows.iter().any(|r| r.ratio_opt.is_some_and(|x| x > 1.0)) {
        return Err(Failure::Check("solver exceeded the exact optimum".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct BaselineStage {
    rule: &'static str,
    m_edges: usize,
    removed: usize,
    vm: usize,
    nm: usize,
    im: usize,
    budget_ok: bool,
}

#[derive(Serialize)]
struct BaselineReport {
    n0: usize,
    m0: usize,
    delta: usize,
    size: usize,
    stages: Vec<BaselineStage>,
}

fn cmd_baseline(a: BaselineArgs) -> Outcome {
    let g = read_graph(&a.input)?;
    let m: Matching = greedy_acyclic(&g);
    check_acyclic(&g, m.edges()).map_err(|v| Failure::Check(v.to_string()))?;
    if let Some(out) = &a.out {
        write(out, &write_matching(m.edges()))?;
    }
    let n0 = g.vertex_count() - g.isolated_vertices().len();
    let delta = g.max_degree();
    let stages = if m.is_empty() {
        Vec::new()
    } else {
        let cl = closure(&g, &m)?;
        vec![BaselineStage {
            rule: "Greedy",
            m_edges: m.len(),
            removed: cl.removed(),
            vm: cl.vm.len(),
            nm: cl.nm.len(),
            im: cl.im.len(),
            budget_ok: stage_budget_ok(cl.removed() as u64, m.len() as u64, delta as u64),
        }]
    };
    let report = BaselineReport {
        n0,
        m0: g.edge_count(),
        delta,
        size: m.len(),
        stages,
    };
    emit(None, &to_json(&report))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Baseline(a) => cmd_baseline(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
