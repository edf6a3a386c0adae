use std::collections::BTreeSet;
use std::time::Instant;

use ordered_float::OrderedFloat;

use super::{canonicalize, gaec, SolveError, SolveReport, StepKind, TraceStep};
use crate::{DisjointSets, LmpInstance, Partition};

/// The outer loop typically converges in well under 20 iterations.
pub const DEFAULT_OUTER_ITERATION_CAP: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KljOptions {
    pub max_outer_iterations: usize,
}

impl Default for KljOptions {
    fn default() -> Self {
        KljOptions {
            max_outer_iterations: DEFAULT_OUTER_ITERATION_CAP,
        }
    }
}

const NONE: u8 = 0;
const SIDE_A: u8 = 1;
const SIDE_B: u8 = 2;

/// A decomposition under local search, plus scratch buffers reused across
/// calls to [`update_bipartition`].
///
/// Components carry stable ids; ids of components that were joined away or
/// emptied stay unused. Every executed transformation leaves a
/// decomposition: blocks that a transformation disconnects are split into
/// their connected pieces.
#[derive(Clone, Debug)]
pub struct KljState<'a> {
    inst: &'a LmpInstance,
    labels: Vec<usize>,
    members: Vec<Vec<usize>>,
    dirty: Vec<bool>,
    side: Vec<u8>,
    gain: Vec<f64>,
    other_side_neighbors: Vec<u32>,
    moved: Vec<bool>,
    local: Vec<usize>,
}

impl<'a> KljState<'a> {
    pub fn new(inst: &'a LmpInstance, init: &Partition) -> Result<Self, SolveError> {
        let n = inst.node_count();
        if init.len() != n {
            return Err(SolveError::InitSize {
                expected: n,
                actual: init.len(),
            });
        }
        if !inst.graph().is_decomposition(init).map_err(crate::ModelError::from)? {
            return Err(SolveError::InitNotDecomposition);
        }
        let members = init.blocks();
        Ok(KljState {
            inst,
            labels: init.labels().to_vec(),
            dirty: vec![false; members.len()],
            members,
            side: vec![NONE; n],
            gain: vec![0.0; n],
            other_side_neighbors: vec![0; n],
            moved: vec![false; n],
            local: vec![usize::MAX; n],
        })
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Nodes of component `id`, empty if the id is no longer in use.
    pub fn members(&self, id: usize) -> &[usize] {
        self.members.get(id).map_or(&[], Vec::as_slice)
    }

    /// Ids of all non-empty components.
    pub fn component_ids(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| !self.members[i].is_empty())
            .collect()
    }

    pub fn partition(&self) -> Partition {
        Partition::from_dense_labels(&self.labels)
    }

    pub fn objective(&self) -> f64 {
        self.inst.cut_cost(&self.labels)
    }

    /// Pairs of distinct components joined by at least one graph edge, in
    /// ascending order.
    pub fn neighboring_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self
            .inst
            .graph()
            .edges()
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (self.labels[u], self.labels[v]);
                (a != b).then(|| (a.min(b), a.max(b)))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    fn new_component(&mut self, nodes: Vec<usize>) -> usize {
        let id = self.members.len();
        for &v in &nodes {
            self.labels[v] = id;
        }
        self.members.push(nodes);
        self.dirty.push(true);
        id
    }

    fn assign(&mut self, id: usize, nodes: Vec<usize>) {
        for &v in &nodes {
            self.labels[v] = id;
        }
        self.members[id] = nodes;
        self.dirty[id] = true;
    }
}

/// Tries to improve the decomposition by transforming components `a` and
/// `b`, or with `b = None` by moving nodes of `a` into a new component.
///
/// A move sequence is built greedily: each step moves the not yet moved
/// node with the best objective change among nodes that have a graph
/// neighbor on the other side (any node of `a` for the first step when `b`
/// is `None`). Changes are tracked incrementally and treat both sides as
/// whole, even where a move disconnects one. The prefix with the best
/// cumulative change is then re-evaluated exactly, with both sides split
/// into connected pieces, and compared with joining `a` and `b`. The better
/// option is executed if it strictly decreases the objective.
///
/// Returns the executed transformation, or `None` if nothing changed.
pub fn update_bipartition(state: &mut KljState<'_>, a: usize, b: Option<usize>) -> Option<TraceStep> {
    let b = b.filter(|&b| b != a && !state.members(b).is_empty());
    if state.members(a).is_empty() {
        return None;
    }
    let inst = state.inst;
    let graph = inst.graph();
    let costs = inst.costs();

    let nodes_a = state.members[a].clone();
    let nodes_b = b.map_or_else(Vec::new, |b| state.members[b].clone());
    let nodes: Vec<usize> = nodes_a.iter().chain(&nodes_b).copied().collect();
    for &v in &nodes_a {
        state.side[v] = SIDE_A;
    }
    for &v in &nodes_b {
        state.side[v] = SIDE_B;
    }

    // gain[v]: objective change of moving v to the other side
    let mut join_cost = 0.0;
    let mut linked_in_graph = false;
    for &v in &nodes {
        let own = state.side[v];
        let mut delta = 0.0;
        for &(w, e) in inst.extended_neighbors(v) {
            let s = state.side[w];
            if s == own {
                delta += costs[e];
            } else if s != NONE {
                delta -= costs[e];
                if own == SIDE_A {
                    join_cost += costs[e];
                }
            }
        }
        state.gain[v] = delta;
        let mut across = 0;
        for &(w, _) in graph.neighbors(v) {
            let s = state.side[w];
            if s != NONE && s != own {
                across += 1;
            }
        }
        state.other_side_neighbors[v] = across;
        linked_in_graph |= across > 0;
    }

    let key = |st: &KljState<'_>, v: usize| (OrderedFloat(st.gain[v]), v);
    let mut candidates: BTreeSet<(OrderedFloat<f64>, usize)> = if b.is_none() {
        nodes_a.iter().map(|&v| key(state, v)).collect()
    } else {
        nodes
            .iter()
            .filter(|&&v| state.other_side_neighbors[v] > 0)
            .map(|&v| key(state, v))
            .collect()
    };

    let mut sequence = Vec::new();
    let mut cumulative = 0.0;
    let mut best = (0.0, 0usize);
    while let Some((OrderedFloat(delta), v)) = candidates.pop_first() {
        state.moved[v] = true;
        sequence.push(v);
        cumulative += delta;
        if cumulative < best.0 {
            best = (cumulative, sequence.len());
        }
        let from = state.side[v];
        let to = if from == SIDE_A { SIDE_B } else { SIDE_A };
        for &(w, e) in inst.extended_neighbors(v) {
            let s = state.side[w];
            if s == NONE || state.moved[w] {
                continue;
            }
            let eligible = state.other_side_neighbors[w] > 0;
            if eligible && !(b.is_none() && sequence.len() == 1) {
                candidates.remove(&key(state, w));
            }
            if s == from {
                state.gain[w] -= 2.0 * costs[e];
            } else {
                state.gain[w] += 2.0 * costs[e];
            }
            if eligible && !(b.is_none() && sequence.len() == 1) {
                candidates.insert(key(state, w));
            }
        }
        for &(w, _) in graph.neighbors(v) {
            let s = state.side[w];
            if s == NONE || state.moved[w] {
                continue;
            }
            let was = state.other_side_neighbors[w] > 0;
            if s == from {
                state.other_side_neighbors[w] += 1;
            } else {
                state.other_side_neighbors[w] -= 1;
            }
            let is = state.other_side_neighbors[w] > 0;
            if b.is_some() || sequence.len() > 1 {
                if was && !is {
                    candidates.remove(&key(state, w));
                } else if !was && is {
                    candidates.insert(key(state, w));
                }
            }
        }
        state.side[v] = to;
        if b.is_none() && sequence.len() == 1 {
            // from now on only nodes bordering the new component may move
            candidates = nodes_a
                .iter()
                .filter(|&&w| !state.moved[w] && state.other_side_neighbors[w] > 0)
                .map(|&w| key(state, w))
                .collect();
        }
    }

    // restore the sides before the sequence
    for &v in &nodes_a {
        state.side[v] = SIDE_A;
        state.moved[v] = false;
    }
    for &v in &nodes_b {
        state.side[v] = SIDE_B;
        state.moved[v] = false;
    }

    let mut outcome = None;
    if best.1 > 0 {
        let pieces = split_after_moves(state, &nodes, &sequence[..best.1]);
        let exact = exact_delta(state, &nodes, &pieces);
        outcome = Some((exact, Some(pieces)));
    }
    if b.is_some() && linked_in_graph {
        let join_delta = -join_cost;
        if outcome.as_ref().is_none_or(|(d, _)| join_delta < *d) {
            outcome = Some((join_delta, None));
        }
    }

    let result = match outcome {
        Some((delta, Some(pieces))) if delta < 0.0 => {
            commit_pieces(state, a, b, &nodes, pieces);
            Some(TraceStep {
                kind: if b.is_some() { StepKind::Move } else { StepKind::Split },
                delta,
            })
        }
        Some((delta, None)) if delta < 0.0 => {
            let b = b.expect("join requires two components");
            let mut joined = std::mem::take(&mut state.members[b]);
            joined.extend_from_slice(&nodes_a);
            joined.sort_unstable();
            state.assign(a, joined);
            Some(TraceStep {
                kind: StepKind::Join,
                delta,
            })
        }
        _ => None,
    };

    for &v in &nodes {
        state.side[v] = NONE;
        state.local[v] = usize::MAX;
    }
    result
}

/// Connected pieces of both sides after applying `moves`, as local piece
/// labels per entry of `nodes`. Pieces of side A come first.
struct Pieces {
    piece_of: Vec<usize>,
    new_side: Vec<u8>,
}

fn split_after_moves(state: &mut KljState<'_>, nodes: &[usize], moves: &[usize]) -> Pieces {
    for &v in moves {
        state.side[v] = if state.side[v] == SIDE_A { SIDE_B } else { SIDE_A };
    }
    for (i, &v) in nodes.iter().enumerate() {
        state.local[v] = i;
    }
    let graph = state.inst.graph();
    let mut sets = DisjointSets::new(nodes.len());
    for (i, &v) in nodes.iter().enumerate() {
        for &(w, _) in graph.neighbors(v) {
            if state.side[w] == state.side[v] && w > v {
                sets.union(i, state.local[w]);
            }
        }
    }
    let new_side: Vec<u8> = nodes.iter().map(|&v| state.side[v]).collect();
    for &v in moves {
        state.side[v] = if state.side[v] == SIDE_A { SIDE_B } else { SIDE_A };
    }
    let piece_of = sets.to_partition().into_labels();
    Pieces { piece_of, new_side }
}

/// Exact objective change from the current sides to `pieces`. Only edges
/// inside `a ∪ b` can change their cut status.
fn exact_delta(state: &KljState<'_>, nodes: &[usize], pieces: &Pieces) -> f64 {
    let inst = state.inst;
    let mut delta = 0.0;
    for (i, &v) in nodes.iter().enumerate() {
        for &(w, e) in inst.extended_neighbors(v) {
            if w <= v || state.side[w] == NONE {
                continue;
            }
            let j = state.local[w];
            let was_cut = state.side[v] != state.side[w];
            let is_cut = pieces.piece_of[i] != pieces.piece_of[j];
            if was_cut != is_cut {
                let c = inst.costs()[e];
                delta += if is_cut { c } else { -c };
            }
        }
    }
    delta
}

fn commit_pieces(state: &mut KljState<'_>, a: usize, b: Option<usize>, nodes: &[usize], pieces: Pieces) {
    let count = pieces.piece_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups: Vec<(u8, Vec<usize>)> = vec![(NONE, Vec::new()); count];
    for (i, &v) in nodes.iter().enumerate() {
        let g = &mut groups[pieces.piece_of[i]];
        g.0 = pieces.new_side[i];
        g.1.push(v);
    }
    // the largest piece of each side inherits that side's id
    let pick = |side: u8| {
        groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.0 == side)
            .max_by_key(|(i, g)| (g.1.len(), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
    };
    let heir_a = pick(SIDE_A);
    let heir_b = if b.is_some() { pick(SIDE_B) } else { None };

    state.members[a].clear();
    if let Some(b) = b {
        state.members[b].clear();
    }
    for (i, (_, mut group)) in groups.into_iter().enumerate() {
        group.sort_unstable();
        if Some(i) == heir_a {
            state.assign(a, group);
        } else if let (Some(b), true) = (b, Some(i) == heir_b) {
            state.assign(b, group);
        } else {
            state.new_component(group);
        }
    }
    state.dirty[a] = true;
    if let Some(b) = b {
        state.dirty[b] = true;
    }
}

/// Kernighan-Lin local search with joins, starting from the decomposition
/// `init`, with the default iteration cap.
pub fn klj(inst: &LmpInstance, init: &Partition) -> Result<SolveReport, SolveError> {
    klj_with_options(inst, init, KljOptions::default())
}

/// Each outer iteration first runs [`update_bipartition`] on every pair of
/// neighboring components of which at least one changed since the previous
/// iteration, then repeatedly tries to split every changed component until
/// it no longer improves. Stops when an iteration changes nothing or after
/// `max_outer_iterations`.
pub fn klj_with_options(inst: &LmpInstance, init: &Partition, options: KljOptions) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut state = KljState::new(inst, init)?;
    let initial_objective = state.objective();
    let mut trace = Vec::new();
    let mut previous_dirty = vec![true; state.members.len()];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < options.max_outer_iterations {
        iterations += 1;
        state.dirty.iter_mut().for_each(|d| *d = false);
        let changed = |st: &KljState<'_>, prev: &[bool], x: usize| prev.get(x).copied().unwrap_or(false) || st.dirty[x];
        let mut any = false;

        for (a, b) in state.neighboring_pairs() {
            if state.members[a].is_empty() || state.members[b].is_empty() {
                continue;
            }
            if !(changed(&state, &previous_dirty, a) || changed(&state, &previous_dirty, b)) {
                continue;
            }
            if let Some(step) = update_bipartition(&mut state, a, Some(b)) {
                trace.push(step);
                any = true;
            }
        }

        let ids = state.members.len();
        for a in 0..ids {
            if state.members[a].is_empty() || !changed(&state, &previous_dirty, a) {
                continue;
            }
            while let Some(step) = update_bipartition(&mut state, a, None) {
                trace.push(step);
                any = true;
            }
        }

        if !any {
            converged = true;
            break;
        }
        previous_dirty = state.dirty.clone();
    }

    let partition = canonicalize(inst, &state.partition());
    let objective = inst.cut_cost(partition.labels());
    Ok(SolveReport {
        partition,
        objective,
        initial_objective,
        trace,
        iterations,
        hit_iteration_cap: !converged,
        elapsed: start.elapsed(),
    })
}

/// GAEC followed by KLj on its output. The traces of both stages are
/// concatenated; `iterations` counts the KLj outer iterations only.
pub fn gaec_klj(inst: &LmpInstance) -> SolveReport {
    let first = gaec(inst);
    let second = klj(inst, &first.partition).expect("GAEC returns a decomposition");
    let mut trace = first.trace;
    trace.extend(second.trace);
    SolveReport {
        partition: second.partition,
        objective: second.objective,
        initial_objective: first.initial_objective,
        trace,
        iterations: second.iterations,
        hit_iteration_cap: second.hit_iteration_cap,
        elapsed: first.elapsed + second.elapsed,
    }
}
