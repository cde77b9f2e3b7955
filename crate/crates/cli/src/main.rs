use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use locdim_core::clique::clique_number;
use locdim_core::constructor::{construct_lars, ConstructError, Mode};
use locdim_core::counting::counting_checks;
use locdim_core::dims::{is_local_adjacency_resolving, min_resolving_set, Variant};
use locdim_core::generators::{gen_family, Family, RandomModel};
use locdim_core::graph6::{encode_graph6, read_corpus};
use locdim_core::sweep::{evaluate, run_sweep, Checks, Filters, Source, SweepConfig};
use locdim_core::verifier::{DimensionReport, ReportFormat, ReportWriter};
use locdim_core::Graph;

#[derive(Parser)]
#[command(name = "locdim", version, about = "Local adjacency metric dimension versus the clique-number bound")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph from a named family in graph6
    Gen(GenArgs),
    /// Exact dimensions of every graph in a graph6 file
    Dims(DimsArgs),
    /// Build a local adjacency resolving set from the layered packing
    Construct(ConstructArgs),
    /// Check the bound and the related statements on every graph in a file
    Verify(VerifyArgs),
    /// Evaluate a stream of graphs and aggregate verdicts
    Sweep(SweepArgs),
    /// Exact-rational table of the counting inequalities
    Counting(CountingArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Gtw,
    Knr,
    Complete,
    Path,
    Cycle,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    omega: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated: metric, local, adj, local-adj
    #[arg(long, value_delimiter = ',', default_value = "local,local-adj")]
    variants: Vec<Variant>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "faithful")]
    mode: Mode,
    /// Include the choice log
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Every labelled graph with 1..=N vertices (N <= 7)
    #[arg(long, conflicts_with_all = ["input", "random_n"])]
    builtin_n: Option<usize>,
    /// graph6 corpus, one graph per line
    #[arg(long = "in", conflicts_with = "random_n")]
    input: Option<PathBuf>,
    /// Random graphs on this many vertices
    #[arg(long, requires = "seed")]
    random_n: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Plant a clique of this size
    #[arg(long)]
    plant: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    count: u64,
    #[arg(long, env = "LOCDIM_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Output file; format follows the extension unless --format is given
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Keep every connected graph, not only those with omega >= 3 and n > omega
    #[arg(long)]
    all_connected: bool,
    #[arg(long)]
    min_omega: Option<usize>,
    #[arg(long)]
    max_omega: Option<usize>,
    #[arg(long)]
    no_construct: bool,
    #[arg(long)]
    no_packing: bool,
    /// Largest order for exact dimensions
    #[arg(long, default_value_t = 16)]
    exact_limit: usize,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CountingArgs {
    #[arg(long)]
    omega: usize,
    #[arg(long, default_value_t = 20)]
    tmax: u32,
    #[arg(long)]
    json: bool,
}

/// Input or usage problem; maps to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Dims(a) => dims(a),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Counting(a) => counting(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    v.ok_or_else(|| input_error(format!("--family {family} needs --{flag}")))
}

fn gen(a: GenArgs) -> Result<bool> {
    let family = match a.family {
        FamilyName::Gtw => Family::Gtw { t: need(a.t, "t", "gtw")?, omega: need(a.omega, "omega", "gtw")? },
        FamilyName::Knr => Family::Knr { n: need(a.n, "n", "knr")?, r: need(a.r, "r", "knr")? },
        FamilyName::Complete => Family::Complete { n: need(a.n, "n", "complete")? },
        FamilyName::Path => Family::Path { n: need(a.n, "n", "path")? },
        FamilyName::Cycle => Family::Cycle { n: need(a.n, "n", "cycle")? },
    };
    let g = gen_family(family).map_err(|e| input_error(e.to_string()))?;
    println!("{}", encode_graph6(&g));
    Ok(true)
}

/// Reads every graph of a graph6 file. Undecodable lines are reported and
/// skipped; a file without any graph is an input error.
fn load(path: &Path) -> Result<Vec<(String, Graph)>> {
    let file = File::open(path).map_err(|e| input_error(format!("cannot open {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for entry in read_corpus(BufReader::new(file)) {
        let entry = entry.map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
        match entry.graph {
            Ok(g) => out.push((entry.token, g)),
            Err(e) => eprintln!("{}:{}: skipping malformed graph6: {e}", path.display(), entry.line),
        }
    }
    if out.is_empty() {
        return Err(input_error(format!("{}: no graphs", path.display())));
    }
    Ok(out)
}

fn stdout_writer(format: Format) -> Result<ReportWriter<BufWriter<io::Stdout>>> {
    Ok(ReportWriter::new(BufWriter::new(io::stdout()), format.into())?)
}

fn dims(a: DimsArgs) -> Result<bool> {
    let graphs = load(&a.input)?;
    let mut out = stdout_writer(a.format)?;
    for (id, g) in graphs {
        let get = |v: Variant| -> Option<usize> {
            a.variants.contains(&v).then(|| min_resolving_set(&g, v).ok().map(|w| w.size)).flatten()
        };
        let omega = clique_number(&g);
        let r = DimensionReport {
            id,
            n: g.n(),
            omega,
            bound: locdim_core::verifier::bound(g.n(), omega).ok(),
            dim: get(Variant::Metric),
            dim_l: get(Variant::LocalMetric),
            dim_a: get(Variant::Adjacency),
            dim_al: get(Variant::LocalAdjacency),
            s_faithful: None,
            s_pruned: None,
            checks: Default::default(),
            ms: None,
        };
        out.write(&r)?;
    }
    out.finish()?.flush()?;
    Ok(true)
}

fn construct(a: ConstructArgs) -> Result<bool> {
    let graphs = load(&a.input)?;
    let mut ok = true;
    let mut out = BufWriter::new(io::stdout());
    for (id, g) in graphs {
        let c = match construct_lars(&g, a.mode) {
            Ok(c) => c,
            Err(e @ ConstructError::Precondition(_)) => return Err(input_error(format!("{id}: {e}"))),
            Err(e) => {
                eprintln!("{id}: {e}");
                ok = false;
                continue;
            }
        };
        let valid = is_local_adjacency_resolving(&g, c.set);
        ok &= valid;
        let mut row = json!({
            "id": id,
            "n": c.n,
            "omega": c.omega,
            "mode": c.mode,
            "bound": c.bound,
            "size": c.size(),
            "set": c.set,
            "valid": valid,
            "overshoot": c.overshoot(),
            "size_guaranteed": c.size_guaranteed,
        });
        if a.trace {
            row["log"] = serde_json::to_value(&c.log)?;
        }
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    Ok(ok)
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let graphs = load(&a.input)?;
    let cfg = SweepConfig {
        filters: Filters { connected: false, min_omega: 0, max_omega: None, non_complete: false },
        checks: Checks { dims: true, construct: false, packing: false },
        timing: a.timing,
        ..SweepConfig::new(Source::File(a.input.clone()))
    };
    let mut out = stdout_writer(a.format)?;
    let mut ok = true;
    for (id, g) in graphs {
        if g.n() > cfg.exact_limit {
            eprintln!("{id}: {} vertices, exact dimensions limited to {}", g.n(), cfg.exact_limit);
        }
        let r = evaluate(&g, id, &cfg).expect("no filters");
        for name in r.failed() {
            eprintln!("{}: {name} failed", r.id);
        }
        ok &= !r.has_failure();
        out.write(&r)?;
    }
    out.finish()?.flush()?;
    Ok(ok)
}

fn sweep(a: SweepArgs) -> Result<bool> {
    let source = match (a.builtin_n, &a.input, a.random_n) {
        (Some(n), None, None) => Source::Builtin { min_n: 1, max_n: n },
        (None, Some(p), None) => Source::File(p.clone()),
        (None, None, Some(n)) => Source::Random {
            model: RandomModel { n, p: a.p, plant: a.plant },
            seed: a.seed.expect("required by clap"),
            count: a.count,
        },
        _ => return Err(input_error("give exactly one of --builtin-n, --in, --random-n")),
    };
    let mut filters = if a.all_connected { Filters::connected_only() } else { Filters::default() };
    if let Some(m) = a.min_omega {
        filters.min_omega = m;
    }
    filters.max_omega = a.max_omega;
    let cfg = SweepConfig {
        source,
        filters,
        checks: Checks { dims: true, construct: !a.no_construct, packing: !a.no_packing },
        jobs: a.jobs,
        exact_limit: a.exact_limit,
        timing: a.timing,
    };
    let format = a.format.unwrap_or(match a.report.as_deref().and_then(Path::extension) {
        Some(ext) if ext == "json" => Format::Json,
        _ => Format::Csv,
    });
    let sink: Box<dyn Write> = match &a.report {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?),
        None => Box::new(io::stdout()),
    };
    let mut writer = ReportWriter::new(BufWriter::new(sink), format.into())?;
    let summary = run_sweep(&cfg, |r| writer.write(r).map_err(|e| e.to_string())).map_err(|e| match e {
        locdim_core::sweep::SweepError::Sink(_) => anyhow::Error::new(e),
        other => input_error(other.to_string()),
    })?;
    writer.finish()?.flush()?;

    for (line, msg) in &summary.malformed {
        eprintln!("line {line}: skipping malformed graph6: {msg}");
    }
    eprintln!("graphs read: {}", summary.seen);
    eprintln!("evaluated: {}", summary.evaluated);
    eprintln!("violations: {}", summary.violations);
    eprintln!("equality cases: {}", summary.equality);
    eprintln!("faithful overshoot: {}", summary.faithful_overshoot);
    eprintln!("pruned overshoot: {}", summary.pruned_overshoot);
    for id in &summary.pruned_overshoot_ids {
        eprintln!("  pruned overshoot: {id}");
    }
    eprintln!("failed checks: {}", summary.failures());
    for (name, t) in summary.checks.iter().filter(|(_, t)| t.fail > 0) {
        eprintln!("  {name}: {} failures", t.fail);
    }
    if let Some(r) = &summary.halted_on {
        eprintln!("halted on counterexample: {}", serde_json::to_string(r)?);
    }
    Ok(summary.failures() == 0)
}

fn counting(a: CountingArgs) -> Result<bool> {
    let checks = counting_checks(a.omega, a.tmax).map_err(|e| input_error(e.to_string()))?;
    let ok = checks.iter().all(|c| c.all_hold());
    if a.json {
        println!("{}", serde_json::to_string_pretty(&checks)?);
        return Ok(ok);
    }
    println!("{:>3} {:>5} {:>10} {:>6} {:>5} {:>5}", "t", "omega", "xi", "bound", "holds", "tight");
    for c in &checks {
        println!(
            "{:>3} {:>5} {:>10} {:>6} {:>5} {:>5}",
            c.t,
            c.omega,
            c.xi.to_string(),
            c.case_bound,
            c.holds,
            c.tight
        );
    }
    if let Some(c) = checks.first() {
        for r in &c.r_checks {
            println!("r = {}: {} >= {} {}", r.r, r.lhs, r.rhs, if r.holds { "holds" } else { "FAILS" });
        }
    }
    if !ok {
        bail!("a counting inequality fails");
    }
    Ok(ok)
}
