//! Batch evaluation over a stream of graphs: every labelled graph up to a
//! small order, a graph6 corpus, or a seeded random model.
//!
//! Graphs are evaluated in parallel chunks and reports are handed to the
//! sink in input order, so output does not depend on the number of jobs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::clique::clique_number;
use crate::constructor::{construct_lars, ConstructError, Mode};
use crate::dims::{all_dims, is_local_adjacency_resolving};
use crate::generators::RandomModel;
use crate::graph::Graph;
use crate::graph6::{encode_graph6, read_corpus};
use crate::packing::{check_properties, check_structure, pack_all};
use crate::verifier::{bound, known_results_check, theorem_check_with, DimensionReport, Verdict, MAIN_BOUND};

/// Largest order accepted by the builtin exhaustive source.
pub const BUILTIN_MAX_N: usize = 7;

const CHUNK: usize = 4096;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error("report sink failed: {0}")]
    Sink(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    /// Every labelled graph on `min_n..=max_n` vertices.
    Builtin {
        min_n: usize,
        max_n: usize,
    },
    File(PathBuf),
    Random {
        model: RandomModel,
        seed: u64,
        count: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Filters {
    pub connected: bool,
    pub min_omega: usize,
    pub max_omega: Option<usize>,
    /// Keep only graphs with `n >= omega + 1`.
    pub non_complete: bool,
}

impl Default for Filters {
    /// The hypothesis of the bound: connected, `omega >= 3`, `n >= omega + 1`.
    fn default() -> Self {
        Filters { connected: true, min_omega: 3, max_omega: None, non_complete: true }
    }
}

impl Filters {
    /// Every connected graph.
    pub fn connected_only() -> Self {
        Filters { connected: true, min_omega: 0, max_omega: None, non_complete: false }
    }

    pub fn accepts(&self, g: &Graph, omega: usize) -> bool {
        (!self.connected || g.is_connected())
            && omega >= self.min_omega
            && self.max_omega.is_none_or(|m| omega <= m)
            && (!self.non_complete || g.n() > omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    /// Exact dimensions, the main bound and the quoted statements.
    pub dims: bool,
    pub construct: bool,
    pub packing: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { dims: true, construct: true, packing: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub source: Source,
    pub filters: Filters,
    pub checks: Checks,
    pub jobs: usize,
    /// Exact dimensions are computed only up to this order.
    pub exact_limit: usize,
    /// Record wall-clock milliseconds per graph (makes output nondeterministic).
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(source: Source) -> Self {
        SweepConfig {
            source,
            filters: Filters::default(),
            checks: Checks::default(),
            jobs: 1,
            exact_limit: 16,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
    pub yes: u64,
    pub no: u64,
}

impl Tally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skip => self.skip += 1,
            Verdict::Yes => self.yes += 1,
            Verdict::No => self.no += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    /// Graphs read from the source, before filters.
    pub seen: u64,
    /// Graphs that passed the filters and were evaluated.
    pub evaluated: u64,
    /// Failures of the main bound.
    pub violations: u64,
    pub equality: u64,
    pub faithful_overshoot: u64,
    pub pruned_overshoot: u64,
    /// Ids of graphs whose pruned set exceeds the bound.
    pub pruned_overshoot_ids: Vec<String>,
    /// Ids of graphs with any failed check.
    pub failed_ids: Vec<String>,
    pub checks: BTreeMap<String, Tally>,
    /// `(line, message)` for corpus lines that did not decode.
    pub malformed: Vec<(usize, String)>,
    /// The report that stopped the sweep, if the main bound failed.
    pub halted_on: Option<DimensionReport>,
}

impl SweepSummary {
    pub fn failures(&self) -> u64 {
        self.checks.values().map(|t| t.fail).sum()
    }

    fn absorb(&mut self, r: &DimensionReport) {
        self.evaluated += 1;
        for (name, &v) in &r.checks {
            self.checks.entry(name.clone()).or_default().add(v);
        }
        if r.check(MAIN_BOUND) == Some(Verdict::Fail) {
            self.violations += 1;
        }
        if r.check("equality") == Some(Verdict::Yes) {
            self.equality += 1;
        }
        if r.check("faithful_overshoot") == Some(Verdict::Yes) {
            self.faithful_overshoot += 1;
        }
        if r.check("pruned_overshoot") == Some(Verdict::Yes) {
            self.pruned_overshoot += 1;
            self.pruned_overshoot_ids.push(r.id.clone());
        }
        if r.has_failure() {
            self.failed_ids.push(r.id.clone());
        }
    }
}

/// The labelled graph on `n` vertices whose edge bits, in graph6 order
/// `(0,1), (0,2), (1,2), (0,3), ..`, are the low bits of `mask`.
pub fn labelled_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> k & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).expect("n is small")
}

/// All `2^(n(n-1)/2)` labelled graphs on `n` vertices.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |mask| labelled_graph(n, mask))
}

/// Evaluates one graph. Returns `None` when the filters reject it.
pub fn evaluate(g: &Graph, id: String, cfg: &SweepConfig) -> Option<DimensionReport> {
    let start = cfg.timing.then(Instant::now);
    let omega = clique_number(g);
    if !cfg.filters.accepts(g, omega) {
        return None;
    }
    let n = g.n();
    let applicable = omega >= 3 && n > omega && g.is_connected();
    let mut r = DimensionReport {
        id,
        n,
        omega,
        bound: bound(n, omega).ok(),
        dim: None,
        dim_l: None,
        dim_a: None,
        dim_al: None,
        s_faithful: None,
        s_pruned: None,
        checks: BTreeMap::new(),
        ms: None,
    };
    let put = |r: &mut DimensionReport, name: &str, v: Verdict| {
        r.checks.insert(name.to_string(), v);
    };

    if cfg.checks.dims && n <= cfg.exact_limit {
        let dims = all_dims(g);
        r.dim = dims.dim.map(|w| w.size);
        r.dim_l = dims.dim_l.map(|w| w.size);
        r.dim_a = Some(dims.dim_a.size);
        r.dim_al = Some(dims.dim_al.size);
        let t = theorem_check_with(g, omega, &dims);
        put(&mut r, MAIN_BOUND, t.verdict);
        if t.verdict != Verdict::Skip {
            put(&mut r, "equality", Verdict::flag(t.equality));
        }
        r.checks.extend(known_results_check(g, omega, &dims));
    }

    if cfg.checks.construct && applicable {
        match construct_lars(g, Mode::Pruned) {
            Ok(c) => {
                r.s_faithful = Some(c.faithful.len());
                r.s_pruned = Some(c.set.len());
                put(&mut r, "construct", Verdict::Pass);
                put(&mut r, "faithful_valid", Verdict::from_bool(is_local_adjacency_resolving(g, c.faithful)));
                put(&mut r, "pruned_valid", Verdict::from_bool(is_local_adjacency_resolving(g, c.set)));
                put(&mut r, "faithful_overshoot", Verdict::flag(c.faithful_overshoot()));
                put(&mut r, "pruned_overshoot", Verdict::flag(c.overshoot()));
                let drained = if omega >= 4 { Verdict::from_bool(c.unconsumed.is_empty()) } else { Verdict::Skip };
                put(&mut r, "y_exhausted", drained);
                if let Some(al) = r.dim_al {
                    put(&mut r, "construct_above_dim_al", Verdict::from_bool(c.set.len() >= al));
                }
            }
            Err(e) => {
                let v = match e {
                    ConstructError::BudgetExceeded { .. } => Verdict::Skip,
                    _ => Verdict::Fail,
                };
                put(&mut r, "construct", v);
            }
        }
    }

    if cfg.checks.packing && applicable {
        match pack_all(g, omega) {
            Ok(d) => {
                put(&mut r, "packing_structure", Verdict::from_bool(check_structure(g, &d).is_ok()));
                match check_properties(g, &d) {
                    Ok(props) => {
                        for p in props {
                            put(&mut r, &format!("property_{}", p.name), Verdict::from_bool(p.holds));
                        }
                    }
                    Err(_) => put(&mut r, "packing_properties", Verdict::Fail),
                }
            }
            Err(_) => put(&mut r, "packing_structure", Verdict::Fail),
        }
    }

    r.ms = start.map(|s| s.elapsed().as_millis() as u64);
    Some(r)
}

enum Item {
    Graph(String, Graph),
    Malformed(usize, String),
}

fn source_items(source: &Source) -> Result<Box<dyn Iterator<Item = Item> + Send>, SweepError> {
    match source {
        &Source::Builtin { min_n, max_n } => {
            if max_n > BUILTIN_MAX_N {
                return Err(SweepError::Config(format!("builtin source is limited to n <= {BUILTIN_MAX_N}")));
            }
            Ok(Box::new((min_n..=max_n).flat_map(labelled_graphs).map(|g| Item::Graph(encode_graph6(&g), g))))
        }
        Source::File(path) => {
            let file = File::open(path).map_err(|e| SweepError::Io { path: path.clone(), source: e })?;
            let path = path.clone();
            Ok(Box::new(read_corpus(BufReader::new(file)).map(move |entry| match entry {
                Ok(e) => match e.graph {
                    Ok(g) => Item::Graph(e.token, g),
                    Err(err) => Item::Malformed(e.line, err.to_string()),
                },
                Err(err) => Item::Malformed(0, format!("{}: {err}", path.display())),
            })))
        }
        Source::Random { model, seed, count } => {
            model.validate().map_err(|e| SweepError::Config(e.to_string()))?;
            let (model, seed) = (*model, *seed);
            Ok(Box::new((0..*count).map(move |i| {
                let g = model.sample(seed, i).expect("model validated");
                Item::Graph(format!("s{seed}i{i}:{}", encode_graph6(&g)), g)
            })))
        }
    }
}

/// Runs the sweep, passing each report to `sink` in input order. Stops
/// after the first report whose main bound fails.
pub fn run_sweep<F>(cfg: &SweepConfig, mut sink: F) -> Result<SweepSummary, SweepError>
where
    F: FnMut(&DimensionReport) -> Result<(), String>,
{
    if cfg.jobs == 0 {
        return Err(SweepError::Config("jobs must be at least 1".into()));
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| SweepError::Config(e.to_string()))?;
    let mut items = source_items(&cfg.source)?;
    let mut summary = SweepSummary::default();
    loop {
        let mut chunk = Vec::with_capacity(CHUNK);
        for item in items.by_ref() {
            match item {
                Item::Graph(id, g) => chunk.push((id, g)),
                Item::Malformed(line, msg) => summary.malformed.push((line, msg)),
            }
            if chunk.len() == CHUNK {
                break;
            }
        }
        if chunk.is_empty() {
            break;
        }
        summary.seen += chunk.len() as u64;
        let reports: Vec<Option<DimensionReport>> =
            pool.install(|| chunk.into_par_iter().map(|(id, g)| evaluate(&g, id, cfg)).collect());
        for r in reports.into_iter().flatten() {
            summary.absorb(&r);
            sink(&r).map_err(SweepError::Sink)?;
            if r.check(MAIN_BOUND) == Some(Verdict::Fail) {
                summary.halted_on = Some(r);
                return Ok(summary);
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gtw;
    use crate::graph6::decode_graph6;

    fn collect(cfg: &SweepConfig) -> (SweepSummary, Vec<DimensionReport>) {
        let mut rows = Vec::new();
        let s = run_sweep(cfg, |r| {
            rows.push(r.clone());
            Ok(())
        })
        .unwrap();
        (s, rows)
    }

    #[test]
    fn labelled_counts() {
        for (n, total) in [(1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)] {
            assert_eq!(labelled_graphs(n).count(), total);
        }
        // same bit order as graph6
        for mask in 0..1024 {
            let g = labelled_graph(5, mask);
            assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
        }
        assert_eq!(encode_graph6(&labelled_graph(4, 0b000001)), "C_");
    }

    #[test]
    fn builtin_sweep_small() {
        let cfg = SweepConfig::new(Source::Builtin { min_n: 1, max_n: 5 });
        let (s, rows) = collect(&cfg);
        assert_eq!(s.seen, 1 + 2 + 8 + 64 + 1024);
        assert_eq!(s.evaluated as usize, rows.len());
        assert_eq!(s.violations, 0);
        assert_eq!(s.failures(), 0, "{:?}", s.failed_ids);
        assert!(rows.iter().all(|r| r.omega >= 3 && r.n > r.omega));
    }

    #[test]
    fn extremal_corpus() {
        let dir = std::env::temp_dir().join(format!("locdim-sweep-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("g.g6");
        let lines: Vec<String> =
            [(2, 3), (2, 4), (3, 3)].iter().map(|&(t, w)| encode_graph6(&gtw(t, w).unwrap())).collect();
        std::fs::write(&path, format!("{}\n!!bad\n", lines.join("\n"))).unwrap();
        let (s, rows) = collect(&SweepConfig::new(Source::File(path)));
        assert_eq!(rows.len(), 3);
        assert_eq!(s.equality, 3);
        assert_eq!(s.malformed.len(), 1);
        assert_eq!(s.malformed[0].0, 4);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn random_is_reproducible_across_jobs() {
        let model = RandomModel { n: 9, p: 0.4, plant: Some(4) };
        let mut cfg = SweepConfig::new(Source::Random { model, seed: 11, count: 40 });
        let (_, a) = collect(&cfg);
        cfg.jobs = 3;
        let (_, b) = collect(&cfg);
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.id.starts_with("s11i")));
    }

    #[test]
    fn missing_file_is_an_error() {
        let cfg = SweepConfig::new(Source::File("/nonexistent/corpus.g6".into()));
        assert!(matches!(run_sweep(&cfg, |_| Ok(())), Err(SweepError::Io { .. })));
    }

    #[test]
    fn builtin_limit() {
        let cfg = SweepConfig::new(Source::Builtin { min_n: 1, max_n: 8 });
        assert!(matches!(run_sweep(&cfg, |_| Ok(())), Err(SweepError::Config(_))));
    }
}
