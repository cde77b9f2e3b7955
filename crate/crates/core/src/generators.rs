//! Graph families used in tests, the CLI and the demo.
//!
//! Vertex layouts are fixed so that tests can refer to vertices by id:
//!
//! * `knr(n, r)`: `K_n` minus the `r` edges joining the apex `n-1` to
//!   `n-2, n-3, .., n-1-r`.
//! * `gtw(t, w)`: `t` copies of `K_w` sharing vertex `0`; copy `j` (0-based)
//!   owns vertices `1 + j(w-1) ..= (j+1)(w-1)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError};

fn bad(family: &'static str, reason: impl Into<String>) -> GraphError {
    GraphError::BadParameters { family, reason: reason.into() }
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (0..n).flat_map(|v| (0..v).map(move |u| (u, v))))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad("cycle", format!("need n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `K_n^{-r}`: the complete graph with `r` edges at one vertex removed.
pub fn knr(n: usize, r: usize) -> Result<Graph, GraphError> {
    if n < 4 {
        return Err(bad("knr", format!("need n >= 4, got {n}")));
    }
    if r == 0 || r > n - 2 {
        return Err(bad("knr", format!("need 1 <= r <= n-2 = {}, got {r}", n - 2)));
    }
    let apex = n - 1;
    let cut = apex - r;
    Graph::from_edges(n, (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).filter(|&(u, v)| !(v == apex && u >= cut)))
}

/// `t` copies of `K_w` glued at vertex 0; `n = t(w-1) + 1`.
pub fn gtw(t: usize, w: usize) -> Result<Graph, GraphError> {
    if t < 2 || w < 2 {
        return Err(bad("gtw", format!("need t >= 2 and omega >= 2, got t={t}, omega={w}")));
    }
    let n = t * (w - 1) + 1;
    let mut edges = Vec::new();
    for j in 0..t {
        let block: Vec<usize> = std::iter::once(0).chain(1 + j * (w - 1)..=(j + 1) * (w - 1)).collect();
        for (a, &u) in block.iter().enumerate() {
            for &v in &block[a + 1..] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// `K_w` on vertices `0..w` with `p` pendant vertices attached to vertex 0.
pub fn clique_with_pendants(w: usize, p: usize) -> Result<Graph, GraphError> {
    if w < 1 {
        return Err(bad("pendants", "need omega >= 1"));
    }
    let mut edges: Vec<_> = (0..w).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    edges.extend((w..w + p).map(|v| (0, v)));
    Graph::from_edges(w + p, edges)
}

/// Named family with parameters, as accepted by `gen_family`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Knr { n: usize, r: usize },
    Gtw { t: usize, omega: usize },
}

pub fn gen_family(family: Family) -> Result<Graph, GraphError> {
    match family {
        Family::Complete { n } => complete(n),
        Family::Path { n } => path(n),
        Family::Cycle { n } => cycle(n),
        Family::Knr { n, r } => knr(n, r),
        Family::Gtw { t, omega } => gtw(t, omega),
    }
}

/// Edge-probability random graph model, optionally with a planted clique on
/// a random vertex subset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomModel {
    pub n: usize,
    pub p: f64,
    pub plant: Option<usize>,
}

impl RandomModel {
    pub fn validate(&self) -> Result<(), GraphError> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(bad("random", format!("edge probability {} outside [0, 1]", self.p)));
        }
        if let Some(k) = self.plant {
            if k > self.n {
                return Err(bad("random", format!("planted clique {k} larger than n = {}", self.n)));
            }
        }
        Graph::empty(self.n).map(|_| ())
    }

    /// The `index`-th graph of the stream seeded by `seed`. Each index has
    /// its own generator, so graphs can be produced in any order.
    pub fn sample(&self, seed: u64, index: u64) -> Result<Graph, GraphError> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let n = self.n;
        let mut edges = Vec::new();
        for v in 0..n {
            for u in 0..v {
                if rng.gen_bool(self.p) {
                    edges.push((u, v));
                }
            }
        }
        if let Some(k) = self.plant {
            let mut order: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = rng.gen_range(i..n);
                order.swap(i, j);
            }
            let chosen = &order[..k];
            for (a, &u) in chosen.iter().enumerate() {
                for &v in &chosen[a + 1..] {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::clique_number;

    fn degree_multiset(g: &Graph) -> Vec<usize> {
        let mut d: Vec<_> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn knr_examples() {
        let g = knr(4, 1).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(degree_multiset(&g), vec![3, 3, 2, 2]);
        let g = knr(5, 3).unwrap();
        assert_eq!(g.degree(4), 1);
        assert!(g.has_edge(0, 4));
    }

    #[test]
    fn knr_rejects_bad_parameters() {
        assert!(knr(3, 1).is_err());
        assert!(knr(5, 0).is_err());
        assert!(knr(5, 4).is_err());
    }

    #[test]
    fn gtw_examples() {
        let g = gtw(2, 4).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(clique_number(&g), 4);
        assert!(gtw(1, 4).is_err());
        assert!(gtw(2, 1).is_err());
    }

    #[test]
    fn gtw_edge_count_and_connectivity() {
        for t in 2..=5 {
            for w in 2..=6 {
                let g = gtw(t, w).unwrap();
                assert_eq!(g.n(), t * (w - 1) + 1);
                assert_eq!(g.edge_count(), t * w * (w - 1) / 2);
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn pendants() {
        let g = clique_with_pendants(4, 4).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.degree(0), 7);
        assert_eq!(clique_number(&g), 4);
    }

    #[test]
    fn random_model_is_reproducible() {
        let model = RandomModel { n: 12, p: 0.3, plant: Some(5) };
        let a = model.sample(7, 3).unwrap();
        let b = model.sample(7, 3).unwrap();
        assert_eq!(a, b);
        assert!(clique_number(&a) >= 5);
        assert_ne!(model.sample(7, 4).unwrap(), a);
        assert!(RandomModel { n: 4, p: 1.5, plant: None }.validate().is_err());
    }
}
