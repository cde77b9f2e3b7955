//! Layered packing of a graph with clique number `w` into vertex-disjoint
//! induced copies of `K_{w+1}^{-i}` (layers `1..w`) followed by cliques of
//! sizes `w, w-1, .., 1` (layers `w..=2w-1`).
//!
//! Each layer is an inclusion-maximal packing built greedily in a fixed
//! order, so the remainder left after layer `i` contains no copy of the
//! layer-`i` pattern. Copies in the `K_{w+1}^{-i}` layers are labelled
//! `x_1..x_{w+1}`: first the clique vertices adjacent to the apex, then the
//! clique vertices not adjacent to it, then the apex. Clique copies are
//! labelled in ascending id order.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::clique::{clique_number, cliques_of_size_within};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("packing needs a connected graph with omega >= 3 and n >= omega + 1: {0}")]
    Precondition(String),
    #[error("omega {given} does not match the clique number {actual}")]
    OmegaMismatch { given: usize, actual: usize },
    #[error("decomposition does not belong to this graph: {0}")]
    Mismatch(String),
}

/// One induced copy of a layer pattern with its labelling. `labels[l - 1]`
/// is the vertex carrying label `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternCopy {
    pub layer: usize,
    pub labels: Vec<usize>,
}

impl PatternCopy {
    pub fn vertices(&self) -> VertexSet {
        self.labels.iter().copied().collect()
    }

    /// Vertex with 1-based label `l`.
    pub fn x(&self, l: usize) -> usize {
        self.labels[l - 1]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub omega: usize,
    /// `layers[i - 1]` is layer `i`, for `i` in `1..=2w-1`.
    pub layers: Vec<Vec<PatternCopy>>,
    /// `remainders[i - 1]` is the vertex set of `G_i`, the graph layer `i`
    /// is extracted from.
    pub remainders: Vec<VertexSet>,
}

impl Decomposition {
    pub fn layer(&self, i: usize) -> &[PatternCopy] {
        &self.layers[i - 1]
    }

    pub fn layer_vertices(&self, i: usize) -> VertexSet {
        self.layer(i).iter().fold(VertexSet::EMPTY, |acc, x| acc.union(x.vertices()))
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Number of vertices of a layer-`i` copy.
    pub fn pattern_size(omega: usize, i: usize) -> usize {
        if i < omega {
            omega + 1
        } else {
            2 * omega - i
        }
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let layers: Vec<Vec<&[usize]>> =
            self.layers.iter().map(|layer| layer.iter().map(|x| x.labels.as_slice()).collect()).collect();
        let mut st = serializer.serialize_struct("Decomposition", 2)?;
        st.serialize_field("omega", &self.omega)?;
        st.serialize_field("layers", &layers)?;
        st.end()
    }
}

/// First copy of the layer-`i` pattern inside `g[alive]`, where `g[alive]`
/// has no clique larger than `omega`.
///
/// For `i < omega` this is the first `omega`-clique `Q` (lexicographically)
/// together with the smallest outside vertex adjacent to exactly
/// `omega - i` members of `Q`; for `i >= omega` the first clique on
/// `2 omega - i` vertices.
pub fn find_pattern_copy_within(g: &Graph, alive: VertexSet, omega: usize, i: usize) -> Option<PatternCopy> {
    assert!(omega >= 1 && (1..2 * omega).contains(&i), "layer {i} out of range for omega {omega}");
    if i >= omega {
        return cliques_of_size_within(g, alive, 2 * omega - i)
            .next()
            .map(|q| PatternCopy { layer: i, labels: q.to_vec() });
    }
    let want = omega - i;
    for q in cliques_of_size_within(g, alive, omega) {
        let apex = alive.difference(q).iter().find(|&v| g.neighbors(v).intersection(q).len() == want);
        if let Some(apex) = apex {
            let near = g.neighbors(apex).intersection(q);
            let mut labels = near.to_vec();
            labels.extend(q.difference(near));
            labels.push(apex);
            return Some(PatternCopy { layer: i, labels });
        }
    }
    None
}

pub fn find_pattern_copy(h: &Graph, omega: usize, i: usize) -> Option<PatternCopy> {
    find_pattern_copy_within(h, h.vertices(), omega, i)
}

/// Greedy layered packing of `g`.
pub fn pack_all(g: &Graph, omega: usize) -> Result<Decomposition, PackingError> {
    if omega < 3 || g.n() < omega + 1 || !g.is_connected() {
        return Err(PackingError::Precondition(format!("n = {}, omega = {omega}", g.n())));
    }
    let actual = clique_number(g);
    if actual != omega {
        return Err(PackingError::OmegaMismatch { given: omega, actual });
    }
    Ok(pack_unchecked(g, omega))
}

pub(crate) fn pack_unchecked(g: &Graph, omega: usize) -> Decomposition {
    let mut alive = g.vertices();
    let mut layers = Vec::with_capacity(2 * omega - 1);
    let mut remainders = Vec::with_capacity(2 * omega - 1);
    for i in 1..2 * omega {
        remainders.push(alive);
        let mut layer = Vec::new();
        while let Some(copy) = find_pattern_copy_within(g, alive, omega, i) {
            alive = alive.difference(copy.vertices());
            layer.push(copy);
        }
        layers.push(layer);
    }
    debug_assert!(alive.is_empty());
    Decomposition { omega, layers, remainders }
}

/// Partition, labelling and maximality checks. Returns a description of the
/// first problem found.
pub fn check_structure(g: &Graph, d: &Decomposition) -> Result<(), String> {
    let w = d.omega;
    if d.layers.len() != 2 * w - 1 || d.remainders.len() != 2 * w - 1 {
        return Err(format!("expected {} layers", 2 * w - 1));
    }
    let mut seen = VertexSet::EMPTY;
    let mut alive = g.vertices();
    for i in 1..2 * w {
        if d.remainders[i - 1] != alive {
            return Err(format!("remainder G_{i} is {:?}, expected {alive:?}", d.remainders[i - 1]));
        }
        for (j, x) in d.layer(i).iter().enumerate() {
            let vs = x.vertices();
            let at = format!("copy {} of layer {i}", j + 1);
            if x.layer != i || x.len() != Decomposition::pattern_size(w, i) || vs.len() != x.len() {
                return Err(format!("{at}: wrong size or layer tag"));
            }
            if !vs.is_subset(alive) || !vs.is_disjoint(seen) {
                return Err(format!("{at}: overlaps earlier copies"));
            }
            seen = seen.union(vs);
            if i < w {
                let q: VertexSet = x.labels[..w].iter().copied().collect();
                if !g.is_clique(q) {
                    return Err(format!("{at}: x_1..x_w is not a clique"));
                }
                for l in 1..=w + 1 {
                    let want = if l <= w - i {
                        w
                    } else if l == w + 1 {
                        w - i
                    } else {
                        w - 1
                    };
                    let got = g.neighbors(x.x(l)).intersection(vs).len();
                    if got != want {
                        return Err(format!("{at}: label {l} has degree {got}, expected {want}"));
                    }
                }
            } else if !g.is_clique(vs) {
                return Err(format!("{at}: not a clique"));
            }
        }
        alive = alive.difference(d.layer_vertices(i));
        if i < 2 * w - 1 {
            if let Some(x) = find_pattern_copy_within(g, alive, w, i) {
                return Err(format!("layer {i} is not maximal: {:?} remains", x.labels));
            }
        }
    }
    if seen != g.vertices() {
        return Err(format!("layers miss vertices {:?}", g.vertices().difference(seen)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub holds: bool,
    pub counterexample: Option<String>,
}

/// Evaluates the five structural consequences of maximality by enumeration.
///
/// Two of them are evaluated in their non-vacuous form: for the clique
/// layers, no later vertex extends a copy to a clique one larger; and for a
/// vertex `x` of a `K_{w+1}^{-i}` copy adjacent to `y` in a `K_w` copy, some
/// other `y'` of that copy makes `{x, y, y'}` an induced path.
pub fn check_properties(g: &Graph, d: &Decomposition) -> Result<Vec<PropertyOutcome>, PackingError> {
    let w = d.omega;
    let actual = clique_number(g);
    if actual != w {
        return Err(PackingError::OmegaMismatch { given: w, actual });
    }
    check_structure(g, d).map_err(PackingError::Mismatch)?;

    let mut out = Vec::with_capacity(5);
    let mut record =
        |name, cx: Option<String>| out.push(PropertyOutcome { name, holds: cx.is_none(), counterexample: cx });

    // (I) no omega-subset of a layer-1 copy extends to K_{w+1} from outside
    let mut cx = None;
    'one: for x in d.layer(1) {
        let vs = x.vertices();
        for drop in vs {
            let sub = vs.without(drop);
            if !g.is_clique(sub) {
                continue;
            }
            for v in g.vertices().difference(vs) {
                if sub.is_subset(g.neighbors(v)) {
                    cx = Some(format!("copy {:?} subset {:?} with vertex {v}", x.labels, sub));
                    break 'one;
                }
            }
        }
    }
    record("I", cx);

    // (II)
    let mut cx = None;
    'two: for gamma in 2..w {
        for x in d.layer(gamma) {
            let (ja, jb) = (w - gamma, w - gamma + 1);
            let base: VertexSet = (1..=w).filter(|&l| l != ja && l != jb).map(|l| x.x(l)).collect();
            let outside = d.remainders[gamma - 1].difference(x.vertices());
            for j in [ja, jb] {
                for v in outside {
                    let s = base.with(x.x(j)).with(v);
                    if g.is_clique(s) {
                        cx = Some(format!("copy {:?}, j = {j}, v = {v}", x.labels));
                        break 'two;
                    }
                }
            }
        }
    }
    record("II", cx);

    // (III)
    let mut cx = None;
    'three: for gamma in w + 1..2 * w {
        for x in d.layer(gamma) {
            for upsilon in gamma..2 * w {
                for y in d.layer(upsilon) {
                    if x == y {
                        continue;
                    }
                    for &v in &y.labels {
                        if g.is_clique(x.vertices().with(v)) {
                            cx = Some(format!("copy {:?} extends by {v}", x.labels));
                            break 'three;
                        }
                    }
                }
            }
        }
    }
    record("III", cx);

    // (IV)
    let mut cx = None;
    'four: for x in d.layer(w) {
        for gamma in w..2 * w {
            for y in d.layer(gamma) {
                if x == y {
                    continue;
                }
                if g.has_edge_between(x.vertices(), y.vertices()) {
                    cx = Some(format!("edge between {:?} and {:?}", x.labels, y.labels));
                    break 'four;
                }
            }
        }
    }
    record("IV", cx);

    // (V)
    let mut cx = None;
    'five: for gamma in 1..w {
        for x in d.layer(gamma) {
            for y in d.layer(w) {
                for &a in &x.labels {
                    for &b in &y.labels {
                        if !g.has_edge(a, b) {
                            continue;
                        }
                        if !y.labels.iter().any(|&c| c != b && g.p3(a, b, c)) {
                            cx = Some(format!("{a} sees all of {:?}", y.labels));
                            break 'five;
                        }
                    }
                }
            }
        }
    }
    record("V", cx);

    Ok(out)
}
