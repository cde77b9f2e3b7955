//! Exact metric, local metric, adjacency and local adjacency dimension.
//!
//! A set `S` resolves a pair `{u, v}` of vertices outside `S` when some
//! `w` in `S` tells them apart: by distance for the metric variants, by
//! being adjacent to exactly one of them for the adjacency variants. The
//! local variants only ask this of adjacent pairs.
//!
//! [`is_resolving`] checks the definition directly. [`min_resolving_set`]
//! precomputes, for every vertex, the set of relevant pairs it takes care of
//! (pairs it distinguishes plus pairs it belongs to) and then searches
//! subsets by increasing size as a set-cover feasibility problem.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Distance, Graph, GraphError, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Metric,
    LocalMetric,
    Adjacency,
    LocalAdjacency,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Metric, Variant::LocalMetric, Variant::Adjacency, Variant::LocalAdjacency];

    pub fn is_local(self) -> bool {
        matches!(self, Variant::LocalMetric | Variant::LocalAdjacency)
    }

    pub fn uses_distance(self) -> bool {
        matches!(self, Variant::Metric | Variant::LocalMetric)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Metric => "metric",
            Variant::LocalMetric => "local",
            Variant::Adjacency => "adj",
            Variant::LocalAdjacency => "local-adj",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "metric" | "dim" => Ok(Variant::Metric),
            "local" | "local-metric" | "dim_l" => Ok(Variant::LocalMetric),
            "adj" | "adjacency" | "dim_a" => Ok(Variant::Adjacency),
            "local-adj" | "local-adjacency" | "dim_al" => Ok(Variant::LocalAdjacency),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimsError {
    #[error("distance-based variants need a connected graph")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A smallest resolving set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimWitness {
    pub size: usize,
    pub set: VertexSet,
}

fn distance_matrix(g: &Graph) -> Result<Vec<Vec<Distance>>, DimsError> {
    if !g.is_connected() {
        return Err(DimsError::Disconnected);
    }
    Ok((0..g.n()).map(|v| g.distances_from(v)).collect())
}

/// Checks the definition literally: every relevant pair outside `s` has a
/// distinguishing vertex inside `s`.
pub fn is_resolving(g: &Graph, s: VertexSet, variant: Variant) -> Result<bool, DimsError> {
    g.check_set(s)?;
    let dist = if variant.uses_distance() { Some(distance_matrix(g)?) } else { None };
    let outside = g.vertices().difference(s).to_vec();
    for (a, &u) in outside.iter().enumerate() {
        for &v in &outside[a + 1..] {
            if variant.is_local() && !g.has_edge(u, v) {
                continue;
            }
            let resolved = s.iter().any(|w| match &dist {
                Some(d) => d[u][w] != d[v][w],
                None => g.has_edge(u, w) != g.has_edge(v, w),
            });
            if !resolved {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fast check for the local adjacency variant on bitsets: for every edge
/// `uv` outside `s`, `N(u) xor N(v)` must meet `s`.
pub fn is_local_adjacency_resolving(g: &Graph, s: VertexSet) -> bool {
    let outside = g.vertices().difference(s);
    outside.iter().all(|u| {
        let nu = g.neighbors(u);
        nu.intersection(outside).iter().filter(|&v| v > u).all(|v| {
            let diff = VertexSet::from_bits(nu.bits() ^ g.neighbors(v).bits());
            !diff.is_disjoint(s)
        })
    })
}

/// Per-vertex coverage of the relevant pairs, packed into `words` u64s.
#[derive(Debug, Clone)]
pub struct CoverTable {
    n: usize,
    words: usize,
    full: Vec<u64>,
    cover: Vec<u64>,
}

impl CoverTable {
    pub fn new(g: &Graph, variant: Variant) -> Result<Self, DimsError> {
        let n = g.n();
        let dist = if variant.uses_distance() { Some(distance_matrix(g)?) } else { None };
        let pairs: Vec<(usize, usize)> =
            if variant.is_local() { g.edges() } else { (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect() };
        let words = pairs.len().div_ceil(64).max(1);
        let mut full = vec![0u64; words];
        let mut cover = vec![0u64; n * words];
        for (p, &(u, v)) in pairs.iter().enumerate() {
            let (word, bit) = (p / 64, 1u64 << (p % 64));
            full[word] |= bit;
            for w in 0..n {
                let takes_care = w == u
                    || w == v
                    || match &dist {
                        Some(d) => d[u][w] != d[v][w],
                        None => g.has_edge(u, w) != g.has_edge(v, w),
                    };
                if takes_care {
                    cover[w * words + word] |= bit;
                }
            }
        }
        Ok(CoverTable { n, words, full, cover })
    }

    fn row(&self, w: usize) -> &[u64] {
        &self.cover[w * self.words..(w + 1) * self.words]
    }

    pub fn is_cover(&self, s: VertexSet) -> bool {
        let mut acc = vec![0u64; self.words];
        for w in s {
            for (a, c) in acc.iter_mut().zip(self.row(w)) {
                *a |= c;
            }
        }
        acc == self.full
    }

    /// Lexicographically least cover of minimum size.
    pub fn min_cover(&self) -> VertexSet {
        let (n, words) = (self.n, self.words);
        // suffix[i] = union of rows i..n
        let mut suffix = vec![0u64; (n + 1) * words];
        for i in (0..n).rev() {
            for k in 0..words {
                suffix[i * words + k] = suffix[(i + 1) * words + k] | self.cover[i * words + k];
            }
        }
        let mut covered = vec![0u64; (n + 1) * words];
        let mut chosen = Vec::with_capacity(n);
        for size in 0..=n {
            if self.search(size, 0, &suffix, &mut covered, &mut chosen) {
                return chosen.into_iter().collect();
            }
        }
        unreachable!("the whole vertex set always covers every pair")
    }

    fn search(&self, left: usize, start: usize, suffix: &[u64], covered: &mut [u64], chosen: &mut Vec<usize>) -> bool {
        let words = self.words;
        let depth = chosen.len();
        let cur = depth * words;
        if left == 0 {
            return covered[cur..cur + words] == self.full[..];
        }
        for w in start..=self.n - left {
            let reachable = (0..words).all(|k| covered[cur + k] | suffix[w * words + k] == self.full[k]);
            if !reachable {
                return false;
            }
            for k in 0..words {
                covered[cur + words + k] = covered[cur + k] | self.cover[w * words + k];
            }
            chosen.push(w);
            if self.search(left - 1, w + 1, suffix, covered, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Smallest resolving set for `variant`; ties go to the lexicographically
/// least vertex list.
pub fn min_resolving_set(g: &Graph, variant: Variant) -> Result<DimWitness, DimsError> {
    let set = CoverTable::new(g, variant)?.min_cover();
    Ok(DimWitness { size: set.len(), set })
}

/// All four dimensions of one graph; distance variants are `None` when the
/// graph is disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AllDims {
    pub dim: Option<DimWitness>,
    pub dim_l: Option<DimWitness>,
    pub dim_a: DimWitness,
    pub dim_al: DimWitness,
}

pub fn all_dims(g: &Graph) -> AllDims {
    let get = |v| min_resolving_set(g, v).ok();
    AllDims {
        dim: get(Variant::Metric),
        dim_l: get(Variant::LocalMetric),
        dim_a: get(Variant::Adjacency).expect("adjacency variants accept any graph"),
        dim_al: get(Variant::LocalAdjacency).expect("adjacency variants accept any graph"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, gtw, path};
    use proptest::prelude::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn resolving_examples() {
        let k3 = complete(3).unwrap();
        assert!(!is_resolving(&k3, set(&[0]), Variant::LocalAdjacency).unwrap());
        assert!(is_resolving(&k3, set(&[0, 1]), Variant::LocalAdjacency).unwrap());
        // G_{2,4}: c=0, a=1..3, b=4..6; {a2, a3, b1, b2}
        let g = gtw(2, 4).unwrap();
        assert!(is_resolving(&g, set(&[2, 3, 4, 5]), Variant::LocalAdjacency).unwrap());
        assert!(is_resolving(&g, set(&[7]), Variant::Metric).is_err());
    }

    #[test]
    fn distance_variants_need_connectivity() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(min_resolving_set(&g, Variant::LocalMetric), Err(DimsError::Disconnected));
        assert!(min_resolving_set(&g, Variant::LocalAdjacency).is_ok());
    }

    #[test]
    fn minimum_examples() {
        assert_eq!(min_resolving_set(&complete(5).unwrap(), Variant::LocalMetric).unwrap().size, 4);
        assert_eq!(min_resolving_set(&path(4).unwrap(), Variant::LocalMetric).unwrap().size, 1);
        let w = min_resolving_set(&gtw(2, 4).unwrap(), Variant::LocalAdjacency).unwrap();
        assert_eq!(w.size, 4);
        assert_eq!(min_resolving_set(&cycle(5).unwrap(), Variant::LocalAdjacency).unwrap().size, 2);
    }

    #[test]
    fn trivial_graphs() {
        let k1 = complete(1).unwrap();
        for v in Variant::ALL {
            assert_eq!(min_resolving_set(&k1, v).unwrap().size, 0);
        }
        let k2 = complete(2).unwrap();
        assert_eq!(min_resolving_set(&k2, Variant::Metric).unwrap().set, set(&[0]));
    }

    /// Every subset in increasing size, then lexicographic order; the first
    /// passing one under the literal definition.
    fn brute_min(g: &Graph, variant: Variant) -> VertexSet {
        let n = g.n();
        let mut subsets: Vec<Vec<usize>> = (0u64..1 << n).map(|m| VertexSet::from_bits(m).to_vec()).collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        subsets.into_iter().map(|s| s.into_iter().collect()).find(|&s| is_resolving(g, s, variant).unwrap()).unwrap()
    }

    #[test]
    fn c5_local_adjacency_by_enumeration() {
        let c5 = cycle(5).unwrap();
        let best = brute_min(&c5, Variant::LocalAdjacency);
        assert_eq!(best.len(), 2);
        assert_eq!(min_resolving_set(&c5, Variant::LocalAdjacency).unwrap().set, best);
    }

    fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(0usize..usize::MAX, n - 1),
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            )
                .prop_map(move |(parents, bits)| {
                    // random spanning tree plus random extra edges
                    let mut edges: Vec<_> = (1..n).map(|v| (parents[v - 1] % v, v)).collect();
                    let mut k = 0;
                    for v in 1..n {
                        for u in 0..v {
                            if bits[k] {
                                edges.push((u, v));
                            }
                            k += 1;
                        }
                    }
                    Graph::from_edges(n, edges).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn solver_matches_brute_force(g in connected_graph(7)) {
            for v in Variant::ALL {
                let w = min_resolving_set(&g, v).unwrap();
                prop_assert_eq!(w.set, brute_min(&g, v));
                prop_assert!(is_resolving(&g, w.set, v).unwrap());
            }
        }

        #[test]
        fn inequality_chain(g in connected_graph(8)) {
            let d = all_dims(&g);
            let (dim, dim_l) = (d.dim.unwrap().size, d.dim_l.unwrap().size);
            prop_assert!(dim_l <= dim);
            prop_assert!(dim_l <= d.dim_al.size);
            prop_assert!(d.dim_al.size <= d.dim_a.size);
            prop_assert!(dim <= d.dim_a.size);
        }

        #[test]
        fn supersets_stay_resolving(g in connected_graph(8), extra in any::<u64>()) {
            for v in Variant::ALL {
                let w = min_resolving_set(&g, v).unwrap();
                let bigger = w.set.union(VertexSet::from_bits(extra).intersection(g.vertices()));
                prop_assert!(is_resolving(&g, bigger, v).unwrap());
            }
        }

        #[test]
        fn fast_local_adjacency_check_agrees(g in connected_graph(8), bits in any::<u64>()) {
            let s = VertexSet::from_bits(bits).intersection(g.vertices());
            prop_assert_eq!(
                is_local_adjacency_resolving(&g, s),
                is_resolving(&g, s, Variant::LocalAdjacency).unwrap()
            );
        }

        #[test]
        fn bipartite_local_dimension_is_one(g in connected_graph(8)) {
            prop_assume!(g.is_bipartite());
            prop_assert_eq!(min_resolving_set(&g, Variant::LocalMetric).unwrap().size, 1);
        }
    }
}
