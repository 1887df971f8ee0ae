mod render;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lss_core::decomp::{classify, verify_decomposition, DecompositionReport, RadicalVerdict, Verdict};
use lss_core::gbasis::{gb_report, GbOptions};
use lss_core::groebner::{default_order, order_from_names, IdealJson, BUDGET_ENV};
use lss_core::suites::{run_suite, Suite, SuiteConfig};
use lss_core::variety::{check_vanishing, orthogonal_lines_hold, sample_vs, SampleJson};
use lss_core::{Budget, ConnectivityClass, Error, FieldSpec, Graph, GraphJson, Ideal, RingContext, VertexSet};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "lss", version, about = "Lovász–Saks–Schrijver and permanental edge ideals of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial Gröbner basis of the permanental edge ideal, certified by the oracle.
    Gb(GbArgs),
    /// Minimal primes Q_S of L_G and the derived invariants.
    Decompose(DecomposeArgs),
    /// Dimension, unmixedness, primeness and radicality of L_G.
    Invariants(GraphArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Reduced Gröbner basis of an ideal given as JSON.
    Groebner(GroebnerArgs),
    /// A seeded point of the component V_S of the orthogonal-representation variety.
    Sample(SampleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Oracle caps `<max_basis>[,<max_pairs>]`.
    #[arg(long, env = BUDGET_ENV)]
    budget: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    /// Preset name, inline graph JSON, or path to a graph JSON file.
    #[arg(long)]
    graph: String,
    /// Coefficient field: Q, Fp:<p>, F<p> or GF(<p>).
    #[arg(long, default_value = "Q")]
    field: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GbArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Keep elements that are monomial multiples of other elements.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Intersect the minimal primes with the oracle and compare with L_G.
    #[arg(long)]
    verify: bool,
    /// Allow --verify on graphs with more than 4 vertices.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest vertex count swept (suite default when omitted).
    #[arg(long)]
    n_max: Option<usize>,
    /// Seeds per (graph, S) in the variety suite.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GroebnerArgs {
    /// Inline ideal JSON or a path to it.
    #[arg(long)]
    ideal: String,
    /// Variable priority list, highest first, comma separated.
    #[arg(long)]
    order: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SampleArgs {
    /// The graph whose orthogonal representations are sampled (Ḡ).
    #[arg(long)]
    graph: String,
    /// The index set S, comma separated.
    #[arg(long, default_value = "")]
    set: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Verify(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gb(a) => cmd_gb(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Groebner(a) => cmd_groebner(a),
        Command::Sample(a) => cmd_sample(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Core(e @ Error::BudgetExhausted(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read_source(arg: &str) -> Result<String, Error> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || !Path::new(arg).is_file() {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))
}

fn load_graph(arg: &str) -> Result<Graph, Error> {
    read_source(arg)?.parse()
}

fn budget(c: &Common) -> Result<Budget, Error> {
    c.budget.as_deref().map_or(Ok(Budget::default()), str::parse)
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => text(),
    };
    let _ = io::stdout().lock().write_all(body.as_bytes());
}

fn parse_set(s: &str, n: usize) -> Result<VertexSet, Error> {
    let mut out = VertexSet::EMPTY;
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| Error::InvalidInput(format!("bad vertex `{tok}`")))?;
        if v == 0 || v > n {
            return Err(Error::InvalidInput(format!("vertex {v} outside [1,{n}]")));
        }
        out.insert(v);
    }
    Ok(out)
}

fn cmd_gb(a: GbArgs) -> Outcome {
    let g = load_graph(&a.graph.graph)?;
    let field: FieldSpec = a.graph.field.parse()?;
    let budget = budget(&a.graph.common)?;
    let ring = RingContext::new(g.n(), field);
    let report = gb_report(&g, &ring, GbOptions { prune: !a.no_prune }, &budget)?;
    emit(a.graph.common.format, &report, || render::gb(&report));
    match report.certificate {
        Some(c) if !c.all() => Err(Failure::Verify(format!("{c:?}"))),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct DecomposeOutput<'a> {
    #[serde(flatten)]
    report: &'a DecompositionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn cmd_decompose(a: DecomposeArgs) -> Outcome {
    let g = load_graph(&a.graph.graph)?;
    let field: FieldSpec = a.graph.field.parse()?;
    let budget = budget(&a.graph.common)?;
    let report = classify(&g, field);
    let verified = if a.verify {
        if g.n() > 4 && !a.force {
            return Err(Error::InvalidInput("--verify is limited to n <= 4; pass --force to override".into()).into());
        }
        Some(verify_decomposition(&g, &RingContext::new(g.n(), field), &budget)?)
    } else {
        None
    };
    let out = DecomposeOutput { report: &report, verified };
    emit(a.graph.common.format, &out, || render::decomposition(&report, verified));
    match verified {
        Some(false) => Err(Failure::Verify("intersection of minimal primes differs from L_G".into())),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct InvariantsOutput {
    graph: GraphJson,
    field: String,
    n: usize,
    b: usize,
    minimal_prime_count: usize,
    dim: Verdict<usize>,
    unmixed: Verdict<bool>,
    prime: Verdict<bool>,
    radical: RadicalVerdict,
    connectivity: ConnectivityClass,
}

fn cmd_invariants(a: GraphArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let field: FieldSpec = a.field.parse()?;
    let r = classify(&g, field);
    let out = InvariantsOutput {
        graph: r.graph.clone(),
        field: r.field.clone(),
        n: r.n,
        b: r.b,
        minimal_prime_count: r.minimal_primes.len(),
        dim: r.dim.clone(),
        unmixed: r.unmixed.clone(),
        prime: r.prime.clone(),
        radical: r.radical.clone(),
        connectivity: g.connectivity_class(),
    };
    emit(a.common.format, &out, || render::invariants(&r));
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let cfg = SuiteConfig { n_max: a.n_max, seeds: a.seeds, jobs: a.jobs, budget: budget(&a.common)? };
    let results = run_suite(suite, &cfg)?;
    emit(a.common.format, &results, || results.iter().map(|r| format!("{r}\n")).collect());
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} of {} checks failed", results.len())));
    }
    Ok(())
}

fn cmd_groebner(a: GroebnerArgs) -> Outcome {
    let src = read_source(&a.ideal)?;
    let json: IdealJson = serde_json::from_str(&src).map_err(|e| Error::Parse(e.to_string()))?;
    let ideal = Ideal::from_json(&json)?;
    let ring = ideal.ring().clone();
    let ord = match &a.order {
        Some(s) => order_from_names(&ring, &s.split(',').map(|t| t.trim().to_string()).collect::<Vec<_>>())?,
        None => default_order(&ring),
    };
    let gb = ideal.groebner_under(&ord, &budget(&a.common)?)?;
    let out = gb.to_json(&ring);
    emit(a.common.format, &out, || out.gens.iter().map(|g| format!("{g}\n")).collect());
    Ok(())
}

#[derive(Serialize)]
struct SampleOutput {
    #[serde(flatten)]
    sample: SampleJson,
    vanishes: bool,
    orthogonal_lines: bool,
}

fn cmd_sample(a: SampleArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let s = parse_set(&a.set, g.n())?;
    let sample = sample_vs(&g, s, a.seed);
    let out = SampleOutput {
        sample: sample.to_json(),
        vanishes: check_vanishing(&sample, &g),
        orthogonal_lines: orthogonal_lines_hold(&sample),
    };
    emit(a.format, &out, || render::sample(&out.sample, out.vanishes));
    if !(out.vanishes && out.orthogonal_lines) {
        return Err(Failure::Verify("sample does not lie on the variety".into()));
    }
    Ok(())
}
