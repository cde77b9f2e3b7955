//! Browser bindings: generate a graph, analyze it, and build a local
//! adjacency resolving set. Every call takes and returns plain strings
//! (graph6 in, JSON out).

use serde::Serialize;
use wasm_bindgen::prelude::*;

use locdim_core::clique::clique_number;
use locdim_core::constructor::{construct_lars, Mode};
use locdim_core::dims::{all_dims, is_local_adjacency_resolving, DimWitness};
use locdim_core::generators::{gen_family, Family};
use locdim_core::graph6::{decode_graph6, encode_graph6};
use locdim_core::packing::{check_properties, pack_all, Decomposition};
use locdim_core::verifier::{bound, known_results_check, theorem_check_with, Verdict};
use locdim_core::{Graph, VertexSet};

/// Exact dimensions are only attempted up to this order in the browser.
pub const EXACT_LIMIT: usize = 14;

#[derive(Serialize)]
struct Dims {
    dim: Option<DimWitness>,
    dim_l: Option<DimWitness>,
    dim_a: DimWitness,
    dim_al: DimWitness,
}

#[derive(Serialize)]
struct Property {
    name: &'static str,
    holds: bool,
}

#[derive(Serialize)]
struct Analysis {
    graph6: String,
    n: usize,
    omega: usize,
    edges: Vec<(usize, usize)>,
    bound: Option<usize>,
    dims: Option<Dims>,
    main_bound: Option<Verdict>,
    checks: std::collections::BTreeMap<String, Verdict>,
    decomposition: Option<Decomposition>,
    properties: Vec<Property>,
}

#[derive(Serialize)]
struct Built {
    mode: Mode,
    set: VertexSet,
    faithful: VertexSet,
    size: usize,
    bound: usize,
    valid: bool,
    overshoot: bool,
    size_guaranteed: bool,
    log: locdim_core::constructor::ChoiceLog,
}

fn parse(graph6: &str) -> Result<Graph, String> {
    decode_graph6(graph6.trim()).map_err(|e| e.to_string())
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// graph6 for `family` in {gtw, knr, complete, path, cycle}; `a` and `b`
/// are `(t, omega)` for gtw, `(n, r)` for knr, and `n` otherwise.
pub fn generate_graph(family: &str, a: usize, b: usize) -> Result<String, String> {
    let f = match family {
        "gtw" => Family::Gtw { t: a, omega: b },
        "knr" => Family::Knr { n: a, r: b },
        "complete" => Family::Complete { n: a },
        "path" => Family::Path { n: a },
        "cycle" => Family::Cycle { n: a },
        other => return Err(format!("unknown family `{other}`")),
    };
    gen_family(f).map(|g| encode_graph6(&g)).map_err(|e| e.to_string())
}

pub fn analyze_graph(graph6: &str) -> Result<String, String> {
    let g = parse(graph6)?;
    let omega = clique_number(&g);
    let mut out = Analysis {
        graph6: encode_graph6(&g),
        n: g.n(),
        omega,
        edges: g.edges(),
        bound: bound(g.n(), omega).ok(),
        dims: None,
        main_bound: None,
        checks: Default::default(),
        decomposition: None,
        properties: Vec::new(),
    };
    if g.n() <= EXACT_LIMIT {
        let d = all_dims(&g);
        let t = theorem_check_with(&g, omega, &d);
        out.main_bound = Some(t.verdict);
        out.checks = known_results_check(&g, omega, &d);
        out.dims = Some(Dims { dim: d.dim, dim_l: d.dim_l, dim_a: d.dim_a, dim_al: d.dim_al });
    }
    if let Ok(d) = pack_all(&g, omega) {
        if let Ok(props) = check_properties(&g, &d) {
            out.properties = props.into_iter().map(|p| Property { name: p.name, holds: p.holds }).collect();
        }
        out.decomposition = Some(d);
    }
    json(&out)
}

pub fn construct_set(graph6: &str, mode: &str) -> Result<String, String> {
    let g = parse(graph6)?;
    let mode: Mode = mode.parse()?;
    let c = construct_lars(&g, mode).map_err(|e| e.to_string())?;
    json(&Built {
        mode,
        set: c.set,
        faithful: c.faithful,
        size: c.size(),
        bound: c.bound,
        valid: is_local_adjacency_resolving(&g, c.set),
        overshoot: c.overshoot(),
        size_guaranteed: c.size_guaranteed,
        log: c.log,
    })
}

#[wasm_bindgen]
pub fn generate(family: &str, a: usize, b: usize) -> Result<String, JsValue> {
    generate_graph(family, a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(graph6: &str) -> Result<String, JsValue> {
    analyze_graph(graph6).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn construct(graph6: &str, mode: &str) -> Result<String, JsValue> {
    construct_set(graph6, mode).map_err(|e| JsValue::from_str(&e))
}
