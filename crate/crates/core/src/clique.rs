//! Exact maximum clique and fixed-size clique enumeration on bitset
//! adjacency.

use crate::graph::{Graph, VertexSet};

/// Clique number by branch and bound with greedy-colouring upper bounds.
/// Returns 0 for the empty graph.
pub fn clique_number(g: &Graph) -> usize {
    clique_number_within(g, g.vertices())
}

/// Clique number of the subgraph induced by `within`.
pub fn clique_number_within(g: &Graph, within: VertexSet) -> usize {
    let mut best = 0;
    expand(g, 0, within.bits(), &mut best);
    best
}

fn expand(g: &Graph, size: usize, cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let (order, colors) = color_sort(g, cand);
    let mut cand = cand;
    for k in (0..order.len()).rev() {
        if size + colors[k] <= *best {
            return;
        }
        let v = order[k];
        expand(g, size + 1, cand & g.neighbors(v).bits(), best);
        cand &= !(1u64 << v);
    }
}

/// Greedy sequential colouring of `cand`; vertices come out grouped by
/// colour class with their class number (1-based), which bounds the clique
/// size reachable from each prefix.
fn color_sort(g: &Graph, cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1u64 << v) & !g.neighbors(v).bits();
            uncolored &= !(1u64 << v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

/// Lazily yields every `k`-clique of `g[within]` exactly once, in
/// lexicographic order of the sorted vertex lists.
pub struct CliquesOfSize<'a> {
    g: &'a Graph,
    k: usize,
    current: Vec<usize>,
    // candidate extensions still to try at each depth
    stack: Vec<u64>,
}

impl<'a> CliquesOfSize<'a> {
    fn new(g: &'a Graph, within: VertexSet, k: usize) -> Self {
        let stack = if k == 0 || k > within.len() { Vec::new() } else { vec![within.bits()] };
        CliquesOfSize { g, k, current: Vec::with_capacity(k), stack }
    }
}

impl Iterator for CliquesOfSize<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            let depth = self.stack.len();
            let cand = *self.stack.last()?;
            // need k - depth + 1 more vertices including the one picked here
            if cand == 0 || (cand.count_ones() as usize) < self.k - (depth - 1) {
                self.stack.pop();
                self.current.pop();
                continue;
            }
            let v = cand.trailing_zeros() as usize;
            *self.stack.last_mut().unwrap() &= !(1u64 << v);
            if depth == self.k {
                let mut set: VertexSet = self.current.iter().copied().collect();
                set.insert(v);
                debug_assert!(self.g.is_clique(set));
                return Some(set);
            }
            let higher = !((2u64 << v).wrapping_sub(1));
            self.current.push(v);
            self.stack.push(cand & self.g.neighbors(v).bits() & higher);
        }
    }
}

pub fn cliques_of_size(g: &Graph, k: usize) -> CliquesOfSize<'_> {
    CliquesOfSize::new(g, g.vertices(), k)
}

pub fn cliques_of_size_within(g: &Graph, within: VertexSet, k: usize) -> CliquesOfSize<'_> {
    CliquesOfSize::new(g, within, k)
}
