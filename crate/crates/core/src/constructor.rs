//! Builds a local adjacency resolving set from the layered packing.
//!
//! Copies of the `K_{w+1}^{-i}` layers are handled in order, one process per
//! layer. For each copy `X` the `K_w` copies still pending that have an edge
//! into `X` (see [`tau`]) decide the branch:
//!
//! * none: all of `X` except two labels joins `S`;
//! * one or two: `X` minus one vertex joins, and each touched `K_w` copy
//!   joins minus a pair `{y1, y2}` that some vertex of `X` in `S` tells apart
//!   (`{x, y1, y2}` induces a path);
//! * three or more: all of `X` joins, and each touched `K_w` copy minus such
//!   a pair.
//!
//! Touched `K_w` copies are consumed. The clique layers then contribute all
//! but their first vertex, and the leftover single vertices join last.
//!
//! Which labels and pairs to use is left open at several points. Options
//! are tried smallest index first; if the finished set fails verification
//! the choices are revisited by depth-first search, pruned whenever even the
//! union of everything the remaining steps could add is not resolving.

use serde::Serialize;
use thiserror::Error;

use crate::clique::clique_number;
use crate::dims::is_local_adjacency_resolving;
use crate::graph::{Graph, VertexSet};
use crate::packing::{pack_unchecked, Decomposition, PackingError, PatternCopy};
use crate::verifier::bound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Faithful,
    Pruned,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "faithful" => Ok(Mode::Faithful),
            "pruned" => Ok(Mode::Pruned),
            other => Err(format!("unknown mode `{other}` (expected faithful or pruned)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// No pending `K_w` copy touches `X`.
    Tau0,
    Tau1,
    Tau2,
    /// Three or more touched copies.
    TauMany,
    /// A clique-layer copy.
    Clique,
    /// The final union of leftover single vertices.
    Singletons,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("construction needs a connected graph with omega >= 3 and n >= omega + 1: {0}")]
    Precondition(String),
    #[error("no admissible choice in process {process} for copy {copy} ({branch:?}); {diagnostic}")]
    NoAdmissibleChoice { process: usize, copy: usize, branch: Branch, diagnostic: String },
    #[error("every combination of choices fails verification ({explored} nodes explored); {diagnostic}")]
    Exhausted { explored: u64, diagnostic: String },
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("copies are not from the expected layers: {0}")]
    LayerMismatch(String),
    #[error(transparent)]
    Packing(#[from] PackingError),
}

/// A `K_w` copy consumed by a step, with the pair left out of `S` and the
/// label of the vertex of `X` that separates the pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsumedCopy {
    /// 1-based index of the copy in layer `w`.
    pub copy: usize,
    pub y1: usize,
    pub y2: usize,
    pub anchor_label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChoiceEntry {
    pub process: usize,
    pub layer: usize,
    /// 1-based index of the copy within its layer.
    pub copy: usize,
    pub branch: Branch,
    /// Labels of the copy that stay out of `S`.
    pub excluded_labels: Vec<usize>,
    pub consumed: Vec<ConsumedCopy>,
    pub added: VertexSet,
}

/// Everything decided while building `S`; replaying it gives `S` back.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ChoiceLog {
    pub entries: Vec<ChoiceEntry>,
    /// Vertices removed by pruning, in removal order.
    pub pruned: Vec<usize>,
}

impl ChoiceLog {
    pub fn replay(&self) -> VertexSet {
        let s = self.entries.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(e.added));
        self.pruned.iter().fold(s, |acc, &v| acc.without(v))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("log serializes")
    }
}

/// Partial construction, as threaded through the individual processes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionState {
    pub set: VertexSet,
    /// Indices (0-based) of layer-`w` copies not consumed yet, in order.
    pub pending: Vec<usize>,
    /// Last process completed (0 before the first).
    pub gamma: usize,
    pub log: ChoiceLog,
}

impl ConstructionState {
    pub fn new(d: &Decomposition) -> Self {
        ConstructionState {
            set: VertexSet::EMPTY,
            pending: (0..d.layer(d.omega).len()).collect(),
            gamma: 0,
            log: ChoiceLog::default(),
        }
    }
}

/// The layer-`w` copies in `ys` with at least one edge into `x`, as indices
/// into `ys`.
pub fn tau(g: &Graph, x: &PatternCopy, ys: &[PatternCopy]) -> Result<Vec<usize>, ConstructError> {
    let w = x.len().saturating_sub(1);
    if w < 2 || !(1..w).contains(&x.layer) {
        return Err(ConstructError::LayerMismatch(format!("X from layer {} with {} vertices", x.layer, x.len())));
    }
    if let Some(y) = ys.iter().find(|y| y.layer != w || y.len() != w) {
        return Err(ConstructError::LayerMismatch(format!(
            "Y from layer {} with {} vertices, omega = {w}",
            y.layer,
            y.len()
        )));
    }
    let xs = x.vertices();
    Ok(ys.iter().enumerate().filter(|(_, y)| g.has_edge_between(xs, y.vertices())).map(|(k, _)| k).collect())
}

#[derive(Debug, Clone)]
struct PairChoice {
    y1: usize,
    y2: usize,
    anchor_label: usize,
}

#[derive(Debug, Clone)]
struct Alternative {
    excluded_labels: Vec<usize>,
    base: VertexSet,
    /// One list per touched copy, in the order of `Step::touched`.
    pairs: Vec<Vec<PairChoice>>,
}

#[derive(Debug, Clone)]
struct Step {
    process: usize,
    copy: usize,
    branch: Branch,
    /// Touched layer-`w` copies (0-based indices into that layer).
    touched: Vec<usize>,
    alternatives: Vec<Alternative>,
    /// Superset of anything this step can add.
    upper: VertexSet,
}

/// One option of a step: an alternative and a pair per touched copy.
type Pick = (usize, Vec<usize>);

impl Step {
    fn added(&self, d: &Decomposition, (alt, idx): &Pick) -> VertexSet {
        let a = &self.alternatives[*alt];
        let ys = d.layer(d.omega);
        self.touched.iter().zip(idx).zip(&a.pairs).fold(a.base, |acc, ((&t, &i), list)| {
            let p = &list[i];
            acc.union(ys[t].vertices().without(p.y1).without(p.y2))
        })
    }

    fn entry(&self, d: &Decomposition, pick: &Pick) -> ChoiceEntry {
        let a = &self.alternatives[pick.0];
        let consumed = self
            .touched
            .iter()
            .zip(&pick.1)
            .zip(&a.pairs)
            .map(|((&t, &i), list)| ConsumedCopy {
                copy: t + 1,
                y1: list[i].y1,
                y2: list[i].y2,
                anchor_label: list[i].anchor_label,
            })
            .collect();
        ChoiceEntry {
            process: self.process,
            layer: self.process,
            copy: self.copy,
            branch: self.branch,
            excluded_labels: a.excluded_labels.clone(),
            consumed,
            added: self.added(d, pick),
        }
    }

    fn first_pick(&self) -> Pick {
        (0, vec![0; self.touched.len()])
    }

    /// Next option in enumeration order, advancing the last pair fastest.
    fn next_pick(&self, pick: &Pick) -> Option<Pick> {
        let (alt, mut idx) = pick.clone();
        let lists = &self.alternatives[alt].pairs;
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                return Some((alt, idx));
            }
            idx[k] = 0;
        }
        (alt + 1 < self.alternatives.len()).then(|| (alt + 1, vec![0; self.touched.len()]))
    }
}

/// Pairs of `y` (in lexicographic order) that form an induced path with
/// some `x_a`, `a` in `anchors`; the smallest such label is recorded.
fn anchored_pairs(g: &Graph, x: &PatternCopy, anchors: &[usize], y: &PatternCopy) -> Vec<PairChoice> {
    let mut out = Vec::new();
    for (a, &y1) in y.labels.iter().enumerate() {
        for &y2 in &y.labels[a + 1..] {
            if let Some(&anchor_label) = anchors.iter().find(|&&l| g.p3(x.x(l), y1, y2)) {
                out.push(PairChoice { y1, y2, anchor_label });
            }
        }
    }
    out
}

/// Works out the branch and every admissible option for copy `j` (0-based)
/// of layer `gamma`, and removes the touched copies from `pending`.
fn plan_step(
    g: &Graph,
    d: &Decomposition,
    pending: &mut Vec<usize>,
    gamma: usize,
    j: usize,
) -> Result<Step, ConstructError> {
    let w = d.omega;
    let x = &d.layer(gamma)[j];
    let ys = d.layer(w);
    let xs = x.vertices();
    let touched: Vec<usize> = pending.iter().copied().filter(|&k| g.has_edge_between(xs, ys[k].vertices())).collect();
    pending.retain(|k| !touched.contains(k));

    let without = |l: usize| xs.without(x.x(l));
    let anchors_except = |skip: usize, top: usize| -> Vec<usize> { (1..=top).filter(|&l| l != skip).collect() };
    let touched_union = touched.iter().fold(VertexSet::EMPTY, |acc, &k| acc.union(ys[k].vertices()));

    let mut alternatives = Vec::new();
    let branch = match touched.len() {
        0 => {
            let excluded = if gamma == 1 { vec![w, w + 1] } else { vec![w - gamma, w - gamma + 1] };
            let base = excluded.iter().fold(xs, |acc, &l| acc.without(x.x(l)));
            alternatives.push(Alternative { excluded_labels: excluded, base, pairs: vec![] });
            Branch::Tau0
        }
        1 | 2 => {
            // process 1 may drop any label; later processes only x_1..x_w,
            // and only while the rest of X still reaches every touched copy
            let top = if gamma == 1 { w + 1 } else { w };
            for l in 1..=top {
                let rest = without(l);
                let admissible = if gamma == 1 {
                    touched.len() == 1 || g.is_connected_within(rest.union(touched_union))
                } else {
                    touched.iter().all(|&k| g.has_edge_between(rest, ys[k].vertices()))
                };
                if !admissible {
                    continue;
                }
                let anchors = anchors_except(l, w + 1);
                let pairs: Vec<_> = touched.iter().map(|&k| anchored_pairs(g, x, &anchors, &ys[k])).collect();
                if pairs.iter().all(|p| !p.is_empty()) {
                    alternatives.push(Alternative { excluded_labels: vec![l], base: rest, pairs });
                }
            }
            if touched.len() == 1 {
                Branch::Tau1
            } else {
                Branch::Tau2
            }
        }
        _ => {
            let top = if gamma == 1 { w + 1 } else { w };
            let anchors: Vec<usize> = (1..=top).collect();
            let pairs: Vec<_> = touched.iter().map(|&k| anchored_pairs(g, x, &anchors, &ys[k])).collect();
            if pairs.iter().all(|p| !p.is_empty()) {
                alternatives.push(Alternative { excluded_labels: vec![], base: xs, pairs });
            }
            Branch::TauMany
        }
    };
    if alternatives.is_empty() {
        return Err(ConstructError::NoAdmissibleChoice {
            process: gamma,
            copy: j + 1,
            branch,
            diagnostic: format!(
                "X = {:?}, touched = {:?}",
                x.labels,
                touched.iter().map(|&k| &ys[k].labels).collect::<Vec<_>>()
            ),
        });
    }
    Ok(Step { process: gamma, copy: j + 1, branch, touched, alternatives, upper: xs.union(touched_union) })
}

fn clique_entries(d: &Decomposition) -> Vec<ChoiceEntry> {
    let w = d.omega;
    let mut out = Vec::new();
    for gamma in w..=2 * w - 3 {
        for (j, x) in d.layer(gamma + 1).iter().enumerate() {
            out.push(ChoiceEntry {
                process: gamma,
                layer: gamma + 1,
                copy: j + 1,
                branch: Branch::Clique,
                excluded_labels: vec![1],
                consumed: vec![],
                added: x.vertices().without(x.x(1)),
            });
        }
    }
    let last = 2 * w - 1;
    out.push(ChoiceEntry {
        process: 2 * w - 3,
        layer: last,
        copy: 0,
        branch: Branch::Singletons,
        excluded_labels: vec![],
        consumed: vec![],
        added: d.layer_vertices(last),
    });
    out
}

fn run_process(
    g: &Graph,
    d: &Decomposition,
    mut state: ConstructionState,
    gamma: usize,
) -> Result<ConstructionState, ConstructError> {
    for j in 0..d.layer(gamma).len() {
        let step = plan_step(g, d, &mut state.pending, gamma, j)?;
        let entry = step.entry(d, &step.first_pick());
        state.set = state.set.union(entry.added);
        state.log.entries.push(entry);
    }
    state.gamma = gamma;
    Ok(state)
}

/// First process over the `K_{w+1}^{-1}` layer, taking the first admissible
/// option at every step.
pub fn run_process_1(
    g: &Graph,
    d: &Decomposition,
    state: ConstructionState,
) -> Result<ConstructionState, ConstructError> {
    run_process(g, d, state, 1)
}

/// Process `gamma` (`2 <= gamma <= w - 1`), first admissible option at every
/// step.
pub fn run_process_gamma(
    g: &Graph,
    d: &Decomposition,
    state: ConstructionState,
    gamma: usize,
) -> Result<ConstructionState, ConstructError> {
    if !(2..d.omega).contains(&gamma) {
        return Err(ConstructError::LayerMismatch(format!("process {gamma} with omega {}", d.omega)));
    }
    run_process(g, d, state, gamma)
}

/// Clique layers and the final union of single vertices.
pub fn run_clique_processes(d: &Decomposition, mut state: ConstructionState) -> ConstructionState {
    for entry in clique_entries(d) {
        state.set = state.set.union(entry.added);
        state.log.entries.push(entry);
    }
    state.gamma = 2 * d.omega - 3;
    state
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 1 << 22 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub mode: Mode,
    pub n: usize,
    pub omega: usize,
    pub bound: usize,
    /// The returned set: the faithful set, pruned in pruned mode.
    pub set: VertexSet,
    pub faithful: VertexSet,
    pub log: ChoiceLog,
    /// Layer-`w` copies never consumed by processes `1..w-1` (1-based).
    pub unconsumed: Vec<usize>,
    /// The size bound is only promised for `w >= 4`.
    pub size_guaranteed: bool,
    /// Search nodes visited beyond the first-choice attempt.
    pub explored: u64,
    #[serde(skip)]
    pub decomposition: Decomposition,
}

impl Construction {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    pub fn overshoot(&self) -> bool {
        self.set.len() > self.bound
    }

    pub fn faithful_overshoot(&self) -> bool {
        self.faithful.len() > self.bound
    }
}

pub fn construct_lars(g: &Graph, mode: Mode) -> Result<Construction, ConstructError> {
    construct_lars_with(g, mode, SearchOptions::default())
}

pub fn construct_lars_with(g: &Graph, mode: Mode, opts: SearchOptions) -> Result<Construction, ConstructError> {
    let n = g.n();
    let omega = clique_number(g);
    if omega < 3 || n < omega + 1 || !g.is_connected() {
        return Err(ConstructError::Precondition(format!(
            "n = {n}, omega = {omega}, connected = {}",
            g.is_connected()
        )));
    }
    let d = pack_unchecked(g, omega);

    let mut pending: Vec<usize> = (0..d.layer(omega).len()).collect();
    let mut steps = Vec::new();
    for gamma in 1..omega {
        for j in 0..d.layer(gamma).len() {
            steps.push(plan_step(g, &d, &mut pending, gamma, j)?);
        }
    }
    let fixed_entries = clique_entries(&d);
    let fixed = fixed_entries.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(e.added));

    let mut picks: Vec<Pick> = steps.iter().map(Step::first_pick).collect();
    let first = steps.iter().zip(&picks).fold(fixed, |acc, (s, p)| acc.union(s.added(&d, p)));
    let mut explored = 0;
    if !is_local_adjacency_resolving(g, first) {
        let mut search = Search { g, d: &d, steps: &steps, fixed, explored: 0, budget: opts.budget };
        picks = search.run().map_err(|e| match e {
            ConstructError::Exhausted { explored, .. } => ConstructError::Exhausted {
                explored,
                diagnostic: format!("first-choice set {first:?}, unconsumed K_w copies {pending:?}"),
            },
            other => other,
        })?;
        explored = search.explored;
    }

    let mut log =
        ChoiceLog { entries: steps.iter().zip(&picks).map(|(s, p)| s.entry(&d, p)).collect(), pruned: vec![] };
    log.entries.extend(fixed_entries);
    let faithful = log.replay();
    debug_assert!(is_local_adjacency_resolving(g, faithful));

    let mut set = faithful;
    if mode == Mode::Pruned {
        loop {
            let mut changed = false;
            for v in set {
                if is_local_adjacency_resolving(g, set.without(v)) {
                    set.remove(v);
                    log.pruned.push(v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    Ok(Construction {
        mode,
        n,
        omega,
        bound: bound(n, omega).expect("preconditions checked above"),
        set,
        faithful,
        log,
        unconsumed: pending.iter().map(|k| k + 1).collect(),
        size_guaranteed: omega >= 4,
        explored,
        decomposition: d,
    })
}

struct Search<'a> {
    g: &'a Graph,
    d: &'a Decomposition,
    steps: &'a [Step],
    fixed: VertexSet,
    explored: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self) -> Result<Vec<Pick>, ConstructError> {
        // upper[k]: everything steps k.. could still add, plus the fixed part
        let mut upper = vec![self.fixed; self.steps.len() + 1];
        for k in (0..self.steps.len()).rev() {
            upper[k] = upper[k + 1].union(self.steps[k].upper);
        }
        let mut picks = Vec::with_capacity(self.steps.len());
        if self.dfs(0, VertexSet::EMPTY, &upper, &mut picks)? {
            Ok(picks)
        } else {
            Err(ConstructError::Exhausted { explored: self.explored, diagnostic: String::new() })
        }
    }

    fn dfs(
        &mut self,
        k: usize,
        partial: VertexSet,
        upper: &[VertexSet],
        picks: &mut Vec<Pick>,
    ) -> Result<bool, ConstructError> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(ConstructError::BudgetExceeded { budget: self.budget });
        }
        if !is_local_adjacency_resolving(self.g, partial.union(upper[k])) {
            return Ok(false);
        }
        let Some(step) = self.steps.get(k) else {
            return Ok(true);
        };
        let mut pick = Some(step.first_pick());
        while let Some(p) = pick {
            let next = step.next_pick(&p);
            let added = step.added(self.d, &p);
            picks.push(p);
            if self.dfs(k + 1, partial.union(added), upper, picks)? {
                return Ok(true);
            }
            picks.pop();
            pick = next;
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::{min_resolving_set, Variant};
    use crate::generators::{clique_with_pendants, gtw, knr};
    use crate::packing::pack_all;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    /// `K_5^{-1}` on 0..5 (missing edge 3-4) and `K_4` copies on 5..9 and
    /// 9..13, with the listed cross edges.
    fn knr_with_k4s(k4s: usize, cross: &[(usize, usize)]) -> Graph {
        let mut edges: Vec<(usize, usize)> = knr(5, 1).unwrap().edges();
        for c in 0..k4s {
            let base = 5 + 4 * c;
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push((base + a, base + b));
                }
            }
        }
        edges.extend_from_slice(cross);
        Graph::from_edges(5 + 4 * k4s, edges).unwrap()
    }

    #[test]
    fn tau_examples() {
        let g = knr_with_k4s(1, &[]);
        let x = PatternCopy { layer: 1, labels: vec![0, 1, 2, 3, 4] };
        let y = PatternCopy { layer: 4, labels: vec![5, 6, 7, 8] };
        assert!(tau(&g, &x, std::slice::from_ref(&y)).unwrap().is_empty());

        let g = knr_with_k4s(1, &[(0, 5)]);
        assert_eq!(tau(&g, &x, std::slice::from_ref(&y)).unwrap(), vec![0]);

        let g = knr_with_k4s(2, &[(0, 5), (1, 9)]);
        let z = PatternCopy { layer: 4, labels: vec![9, 10, 11, 12] };
        assert_eq!(tau(&g, &x, &[y.clone(), z]).unwrap(), vec![0, 1]);

        let wrong = PatternCopy { layer: 5, labels: vec![5, 6, 7] };
        assert!(matches!(tau(&g, &x, &[wrong]), Err(ConstructError::LayerMismatch(_))));
    }

    #[test]
    fn process_one_single_touch() {
        let g = knr_with_k4s(1, &[(0, 5)]);
        let d = pack_all(&g, 4).unwrap();
        assert_eq!(d.layer(1)[0].labels, vec![0, 1, 2, 3, 4]);
        let state = run_process_1(&g, &d, ConstructionState::new(&d)).unwrap();
        let e = &state.log.entries[0];
        assert_eq!(e.branch, Branch::Tau1);
        assert_eq!(state.set.intersection(set(&[0, 1, 2, 3, 4])).len(), 4);
        assert_eq!(state.set.intersection(set(&[5, 6, 7, 8])).len(), 2);
        assert_eq!(state.set, set(&[0, 2, 3, 4, 7, 8]));
        assert!(state.pending.is_empty());
    }

    #[test]
    fn process_one_double_touch() {
        let g = knr_with_k4s(2, &[(0, 5), (1, 9)]);
        let d = pack_all(&g, 4).unwrap();
        let state = run_process_1(&g, &d, ConstructionState::new(&d)).unwrap();
        let e = &state.log.entries[0];
        assert_eq!(e.branch, Branch::Tau2);
        // dropping x_1 or x_2 would cut a K_4 off, so x_3 = 2 goes
        assert_eq!(e.excluded_labels, vec![3]);
        assert_eq!(state.set.len(), 4 + 2 + 2);
        assert_eq!(state.set, set(&[0, 1, 3, 4, 7, 8, 11, 12]));
    }

    #[test]
    fn process_gamma_examples() {
        let g = gtw(2, 4).unwrap();
        let d = pack_all(&g, 4).unwrap();
        let mut state = ConstructionState::new(&d);
        state = run_process_1(&g, &d, state).unwrap();
        assert!(state.set.is_empty());
        state = run_process_gamma(&g, &d, state, 2).unwrap();
        assert!(state.set.is_empty());
        state = run_process_gamma(&g, &d, state, 3).unwrap();
        // c = x_1 and a1 = x_2 stay out
        assert_eq!(state.set, set(&[2, 3, 4]));
        assert!(run_process_gamma(&g, &d, state.clone(), 4).is_err());

        let g = gtw(2, 3).unwrap();
        let d = pack_all(&g, 3).unwrap();
        let state = run_process_gamma(&g, &d, ConstructionState::new(&d), 2).unwrap();
        assert_eq!(state.set, set(&[2, 3]));
    }

    #[test]
    fn clique_processes() {
        let g = gtw(2, 4).unwrap();
        let d = pack_all(&g, 4).unwrap();
        let mut state = ConstructionState::new(&d);
        for gamma in 2..4 {
            state = run_process_gamma(&g, &d, state, gamma).unwrap();
        }
        let state = run_clique_processes(&d, state);
        // layer 6 is the K_2 {b2, b3} = {5, 6}; its first label stays out
        assert_eq!(state.set, set(&[2, 3, 4, 6]));
        assert_eq!(state.log.replay(), state.set);

        let g = clique_with_pendants(3, 1).unwrap();
        let d = pack_all(&g, 3).unwrap();
        let state = run_clique_processes(&d, ConstructionState::new(&d));
        assert!(state.set.is_empty());
        assert_eq!(state.log.entries.last().unwrap().branch, Branch::Singletons);
    }

    fn planned(g: &Graph) -> (Decomposition, Vec<Step>) {
        let d = pack_all(g, clique_number(g)).unwrap();
        let mut pending: Vec<usize> = (0..d.layer(d.omega).len()).collect();
        let mut steps = Vec::new();
        for gamma in 1..d.omega {
            for j in 0..d.layer(gamma).len() {
                steps.push(plan_step(g, &d, &mut pending, gamma, j).unwrap());
            }
        }
        (d, steps)
    }

    #[test]
    fn picks_enumerate_every_option_once() {
        let g = knr_with_k4s(2, &[(0, 5), (1, 9)]);
        let (_, steps) = planned(&g);
        let step = &steps[0];
        let expected: usize = step.alternatives.iter().map(|a| a.pairs.iter().map(Vec::len).product::<usize>()).sum();
        let mut seen = std::collections::HashSet::new();
        let mut pick = Some(step.first_pick());
        while let Some(p) = pick {
            assert!(seen.insert(p.clone()));
            pick = step.next_pick(&p);
        }
        assert_eq!(seen.len(), expected);
        assert!(expected > 1);
    }

    #[test]
    fn search_finds_a_resolving_choice() {
        let g = knr_with_k4s(2, &[(0, 5), (1, 9), (3, 6)]);
        let (d, steps) = planned(&g);
        let fixed = clique_entries(&d).iter().fold(VertexSet::EMPTY, |acc, e| acc.union(e.added));
        let mut search = Search { g: &g, d: &d, steps: &steps, fixed, explored: 0, budget: 1000 };
        let picks = search.run().unwrap();
        let s = steps.iter().zip(&picks).fold(fixed, |acc, (st, p)| acc.union(st.added(&d, p)));
        assert!(is_local_adjacency_resolving(&g, s));
        assert!(search.explored >= steps.len() as u64);

        let mut tight = Search { g: &g, d: &d, steps: &steps, fixed, explored: 0, budget: 0 };
        assert_eq!(tight.run(), Err(ConstructError::BudgetExceeded { budget: 0 }));
    }

    #[test]
    fn search_reports_exhaustion() {
        // no steps and nothing fixed: the empty set resolves nothing
        let g = knr_with_k4s(1, &[(0, 5)]);
        let (d, steps) = planned(&g);
        let mut search = Search { g: &g, d: &d, steps: &steps[..0], fixed: VertexSet::EMPTY, explored: 0, budget: 10 };
        assert!(matches!(search.run(), Err(ConstructError::Exhausted { explored: 1, .. })));
    }

    #[test]
    fn construct_on_glued_k4s() {
        let g = gtw(2, 4).unwrap();
        let c = construct_lars(&g, Mode::Faithful).unwrap();
        assert_eq!(c.size(), 4);
        assert_eq!(c.bound, 4);
        assert_eq!(min_resolving_set(&g, Variant::LocalAdjacency).unwrap().size, 4);
        assert!(is_local_adjacency_resolving(&g, c.set));
        assert_eq!(c.explored, 0);
    }

    #[test]
    fn construct_on_glued_triangles() {
        let g = gtw(2, 3).unwrap();
        let c = construct_lars(&g, Mode::Faithful).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(c.bound, 2);
        assert!(c.overshoot());
        assert!(!c.size_guaranteed);
    }

    #[test]
    fn construct_on_pendants() {
        let g = clique_with_pendants(4, 4).unwrap();
        let c = construct_lars(&g, Mode::Faithful).unwrap();
        assert_eq!(c.size(), 6);
        assert_eq!(c.bound, 5);
        assert!(c.overshoot());

        let p = construct_lars(&g, Mode::Pruned).unwrap();
        assert!(p.size() <= 3);
        assert!(is_local_adjacency_resolving(&g, p.set));
        assert_eq!(p.faithful, c.set);
        assert_eq!(p.log.replay(), p.set);
        // nothing more can go
        for v in p.set {
            assert!(!is_local_adjacency_resolving(&g, p.set.without(v)));
        }
    }

    #[test]
    fn construct_preconditions() {
        use crate::generators::{complete, cycle};
        assert!(matches!(construct_lars(&complete(5).unwrap(), Mode::Faithful), Err(ConstructError::Precondition(_))));
        assert!(matches!(construct_lars(&cycle(6).unwrap(), Mode::Faithful), Err(ConstructError::Precondition(_))));
    }

    #[test]
    fn construction_is_deterministic() {
        let g = knr_with_k4s(2, &[(0, 5), (1, 9), (3, 6)]);
        let a = construct_lars(&g, Mode::Pruned).unwrap();
        let b = construct_lars(&g, Mode::Pruned).unwrap();
        assert_eq!(a.log.to_json(), b.log.to_json());
        assert_eq!(a.set, b.set);
    }

    #[test]
    fn log_json_field_order() {
        let c = construct_lars(&gtw(2, 3).unwrap(), Mode::Faithful).unwrap();
        let json = c.log.to_json();
        assert!(json.starts_with(r#"{"entries":[{"process":2,"layer":2,"copy":1,"branch":"tau0","excluded_labels":[1,2],"consumed":[],"added":[2,3]}"#), "{json}");
    }
}
