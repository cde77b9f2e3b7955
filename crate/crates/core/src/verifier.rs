//! The bound `floor((w - 2) n / (w - 1))`, verdicts for it and for the
//! related statements on local metric dimension, and per-graph reports.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clique::clique_number;
use crate::dims::{all_dims, AllDims};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("bound needs omega >= 3 and n >= omega + 1, got n = {n}, omega = {omega}")]
    Precondition { n: usize, omega: usize },
}

/// `floor((omega - 2) * n / (omega - 1))` in integer arithmetic.
pub fn bound(n: usize, omega: usize) -> Result<usize, BoundError> {
    if omega < 3 || n < omega + 1 {
        return Err(BoundError::Precondition { n, omega });
    }
    Ok((omega - 2) * n / (omega - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
    /// Informational flags, never a failure.
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn flag(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
            Verdict::Yes => "yes",
            Verdict::No => "no",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Name of the check for `dim_al <= bound`.
pub const MAIN_BOUND: &str = "main_bound";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub verdict: Verdict,
    pub bound: Option<usize>,
    pub dim_al: Option<usize>,
    pub dim_l: Option<usize>,
    /// `dim_al == bound`.
    pub equality: bool,
    /// `dim_l <= dim_al`.
    pub local_below: bool,
}

pub fn theorem_check(g: &Graph) -> TheoremCheck {
    let omega = clique_number(g);
    if !applies(g, omega) {
        return skipped();
    }
    theorem_check_with(g, omega, &all_dims(g))
}

fn applies(g: &Graph, omega: usize) -> bool {
    omega >= 3 && g.n() > omega && g.is_connected()
}

fn skipped() -> TheoremCheck {
    TheoremCheck { verdict: Verdict::Skip, bound: None, dim_al: None, dim_l: None, equality: false, local_below: true }
}

/// [`theorem_check`] with the clique number and dimensions already known.
pub fn theorem_check_with(g: &Graph, omega: usize, dims: &AllDims) -> TheoremCheck {
    if !applies(g, omega) {
        return skipped();
    }
    let b = bound(g.n(), omega).expect("checked by applies");
    let al = dims.dim_al.size;
    let l = dims.dim_l.expect("connected graph").size;
    TheoremCheck {
        verdict: Verdict::from_bool(al <= b && l <= al),
        bound: Some(b),
        dim_al: Some(al),
        dim_l: Some(l),
        equality: al == b,
        local_below: l <= al,
    }
}

fn ceil_log2(x: usize) -> i64 {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as i64
    }
}

/// Every quoted statement about `dim_l` (and `dim_al`) whose hypothesis `g`
/// meets. Iff statements count as one check each, both directions.
/// Disconnected graphs get an empty map.
pub fn known_results_check(g: &Graph, omega: usize, dims: &AllDims) -> BTreeMap<String, Verdict> {
    let mut out = BTreeMap::new();
    let (Some(dim), Some(dim_l)) = (dims.dim, dims.dim_l) else {
        return out;
    };
    let n = g.n() as i64;
    let w = omega as i64;
    let l = dim_l.size as i64;
    let al = dims.dim_al.size as i64;
    let a = dims.dim_a.size as i64;
    let d = dim.size as i64;
    let mut put = |name: &str, v: Verdict| {
        out.insert(name.to_string(), v);
    };
    let when = |hyp: bool, ok: bool| if hyp { Verdict::from_bool(ok) } else { Verdict::Skip };

    put("complete_iff", Verdict::from_bool((l == n - 1) == g.is_complete()));
    put("near_complete_iff", Verdict::from_bool((l == n - 2) == (w == n - 1)));
    put("bipartite_iff", when(n >= 2, (l == 1) == g.is_bipartite()));
    let gap = n - w;
    let pow = if gap >= 62 { i64::MAX } else { 1i64 << gap };
    put("clique_lower", Verdict::from_bool(l >= ceil_log2(omega).max(n - pow)));
    put("triangle_free_two_fifths", when(w == 2 && n >= 3, 5 * l <= 2 * n));
    put("clique_ratio", when(w >= 1, w * l < (w - 1) * n || (w * l == (w - 1) * n && g.is_complete())));
    put("omega_n_minus_2", when(w == n - 2, n - 4 <= l && l <= n - 3));
    put("omega_n_minus_3", when(w == n - 3, n - 8 <= l && l <= n - 3));
    put("omega3_half_local", when(w == 3 && n >= 4, l <= n / 2));
    put("omega3_half_adjacency", when(w == 3 && n >= 4, al <= n / 2));
    put("omega4_two_thirds", when(w == 4 && n >= 5, l <= 2 * n / 3));
    let conj = bound(g.n(), omega).ok().map(|b| l <= b as i64);
    put("conjecture_local", conj.map_or(Verdict::Skip, Verdict::from_bool));
    put("chain_metric", Verdict::from_bool(l <= d && d <= a));
    put("chain_adjacency", Verdict::from_bool(l <= al && al <= a));
    out
}

/// One row of a sweep or `verify` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub id: String,
    pub n: usize,
    pub omega: usize,
    pub bound: Option<usize>,
    pub dim: Option<usize>,
    pub dim_l: Option<usize>,
    pub dim_a: Option<usize>,
    pub dim_al: Option<usize>,
    pub s_faithful: Option<usize>,
    pub s_pruned: Option<usize>,
    pub checks: BTreeMap<String, Verdict>,
    pub ms: Option<u64>,
}

impl DimensionReport {
    pub fn failed(&self) -> impl Iterator<Item = &str> {
        self.checks.iter().filter(|(_, v)| **v == Verdict::Fail).map(|(k, _)| k.as_str())
    }

    pub fn has_failure(&self) -> bool {
        self.failed().next().is_some()
    }

    pub fn check(&self, name: &str) -> Option<Verdict> {
        self.checks.get(name).copied()
    }

    fn checks_cell(&self) -> String {
        self.checks.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

pub const CSV_HEADER: [&str; 12] =
    ["id", "n", "omega", "bound", "dim", "dim_l", "dim_a", "dim_al", "s_faithful", "s_pruned", "checks", "ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Streams reports as CSV (columns in [`CSV_HEADER`] order, the `checks`
/// cell as `name=verdict` pairs joined by `;`) or as a JSON array with one
/// report per line.
pub enum ReportWriter<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Json { out: W, rows: usize },
}

impl<W: Write> ReportWriter<W> {
    pub fn new(out: W, format: ReportFormat) -> std::io::Result<Self> {
        Ok(match format {
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(CSV_HEADER)?;
                ReportWriter::Csv(Box::new(w))
            }
            ReportFormat::Json => ReportWriter::Json { out, rows: 0 },
        })
    }

    pub fn write(&mut self, r: &DimensionReport) -> std::io::Result<()> {
        match self {
            ReportWriter::Csv(w) => {
                let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
                w.write_record([
                    r.id.clone(),
                    r.n.to_string(),
                    r.omega.to_string(),
                    opt(r.bound),
                    opt(r.dim),
                    opt(r.dim_l),
                    opt(r.dim_a),
                    opt(r.dim_al),
                    opt(r.s_faithful),
                    opt(r.s_pruned),
                    r.checks_cell(),
                    r.ms.map(|x| x.to_string()).unwrap_or_default(),
                ])?;
            }
            ReportWriter::Json { out, rows } => {
                out.write_all(if *rows == 0 { b"[\n" } else { b",\n" })?;
                serde_json::to_writer(&mut *out, r)?;
                *rows += 1;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> std::io::Result<W> {
        match self {
            ReportWriter::Csv(w) => w.into_inner().map_err(|e| e.into_error()),
            ReportWriter::Json { mut out, rows } => {
                out.write_all(if rows == 0 { b"[]\n" } else { b"\n]\n" })?;
                Ok(out)
            }
        }
    }
}

pub fn write_reports<W: Write>(out: W, format: ReportFormat, reports: &[DimensionReport]) -> std::io::Result<W> {
    let mut w = ReportWriter::new(out, format)?;
    for r in reports {
        w.write(r)?;
    }
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, gtw, path};

    fn known(g: &Graph) -> BTreeMap<String, Verdict> {
        known_results_check(g, clique_number(g), &all_dims(g))
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound(7, 4), Ok(4));
        assert_eq!(bound(5, 3), Ok(2));
        assert_eq!(bound(9, 8), Ok(7));
        assert!(bound(4, 4).is_err());
        assert!(bound(5, 2).is_err());
    }

    #[test]
    fn bound_is_monotone() {
        for w in 3..=20 {
            for n in w + 1..=60 {
                assert!(bound(n, w).unwrap() <= bound(n + 1, w).unwrap());
                if n > w + 1 {
                    assert!(bound(n, w).unwrap() <= bound(n, w + 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn theorem_examples() {
        let c = theorem_check(&gtw(2, 4).unwrap());
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!((c.bound, c.dim_al), (Some(4), Some(4)));
        assert!(c.equality);
        assert_eq!(theorem_check(&complete(5).unwrap()).verdict, Verdict::Skip);
        assert_eq!(theorem_check(&path(5).unwrap()).verdict, Verdict::Skip);
    }

    #[test]
    fn known_results_examples() {
        let k = known(&complete(6).unwrap());
        assert_eq!(k["complete_iff"], Verdict::Pass);
        assert_eq!(all_dims(&complete(6).unwrap()).dim_l.unwrap().size, 5);

        let k = known(&cycle(6).unwrap());
        assert_eq!(k["bipartite_iff"], Verdict::Pass);
        assert_eq!(k["triangle_free_two_fifths"], Verdict::Pass);

        let c5 = cycle(5).unwrap();
        assert_eq!(all_dims(&c5).dim_l.unwrap().size, 2);
        let k = known(&c5);
        assert_eq!(k["clique_lower"], Verdict::Pass);
        assert_eq!(k["omega_n_minus_3"], Verdict::Pass);
        assert_eq!(k["omega3_half_local"], Verdict::Skip);
        assert!(k.values().all(|&v| v != Verdict::Fail));
    }

    #[test]
    fn iff_checks_catch_both_directions() {
        // a wrong dim_l of n - 1 on a non-complete graph must fail
        let g = cycle(4).unwrap();
        let mut d = all_dims(&g);
        d.dim_l.as_mut().unwrap().size = 3;
        assert_eq!(known_results_check(&g, 2, &d)["complete_iff"], Verdict::Fail);
        // and a wrong dim_l of 2 on a complete graph too
        let g = complete(4).unwrap();
        let mut d = all_dims(&g);
        d.dim_l.as_mut().unwrap().size = 2;
        let k = known_results_check(&g, 4, &d);
        assert_eq!(k["complete_iff"], Verdict::Fail);
        assert_eq!(k["near_complete_iff"], Verdict::Fail);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn csv_and_json_layout() {
        let r = DimensionReport {
            id: "D{c".into(),
            n: 5,
            omega: 3,
            bound: Some(2),
            dim: Some(2),
            dim_l: Some(2),
            dim_a: Some(2),
            dim_al: Some(2),
            s_faithful: Some(3),
            s_pruned: None,
            checks: [(MAIN_BOUND.to_string(), Verdict::Pass), ("equality".to_string(), Verdict::Yes)].into(),
            ms: None,
        };
        let buf = write_reports(Vec::new(), ReportFormat::Csv, std::slice::from_ref(&r)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "id,n,omega,bound,dim,dim_l,dim_a,dim_al,s_faithful,s_pruned,checks,ms\n\
             D{c,5,3,2,2,2,2,2,3,,equality=yes;main_bound=pass,\n"
        );
        let buf = write_reports(Vec::new(), ReportFormat::Json, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("[\n{\"id\":\"D{c\",\"n\":5,\"omega\":3,\"bound\":2,"), "{text}");
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["checks"]["main_bound"], "pass");
        assert!(v[0]["ms"].is_null());
        let empty = write_reports(Vec::new(), ReportFormat::Json, &[]).unwrap();
        assert_eq!(empty, b"[]\n");
    }
}
