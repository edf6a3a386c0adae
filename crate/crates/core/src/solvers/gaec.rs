use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BinaryHeap};
use std::time::Instant;

use ordered_float::OrderedFloat;

use super::{SolveReport, StepKind, TraceStep};
use crate::{DisjointSets, LmpInstance, Partition};

#[derive(Clone, Copy, Debug)]
struct Link {
    /// Total cost of all `E ∪ F` edges between the two components.
    join_cost: f64,
    /// Whether some graph edge connects the components, i.e. joining them
    /// keeps the decomposition connected.
    in_graph: bool,
    stamp: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct QueueEntry {
    join_cost: OrderedFloat<f64>,
    // smaller pairs first among equal costs
    pair: Reverse<(usize, usize)>,
    stamp: u64,
}

/// Working state of greedy additive edge contraction.
///
/// Components are identified by one of their nodes. Each component keeps an
/// ordered adjacency map over the extended graph `G'`; links that stem from
/// at least one graph edge are the feasible joins and sit in a max-priority
/// queue keyed by join cost. Queue entries are invalidated lazily through
/// per-link stamps.
#[derive(Clone, Debug)]
pub struct ContractionState<'a> {
    inst: &'a LmpInstance,
    sets: DisjointSets,
    component_of_root: Vec<usize>,
    adjacency: Vec<BTreeMap<usize, Link>>,
    queue: BinaryHeap<QueueEntry>,
    next_stamp: u64,
    contractions: usize,
}

impl<'a> ContractionState<'a> {
    /// The decomposition into single nodes.
    pub fn new(inst: &'a LmpInstance) -> Self {
        let n = inst.node_count();
        let mut adjacency = vec![BTreeMap::new(); n];
        let mut next_stamp = 0;
        let mut queue = BinaryHeap::with_capacity(inst.graph().edge_count());
        for (e, (u, v, c)) in inst.all_edges().enumerate() {
            let link = Link {
                join_cost: c,
                in_graph: !inst.is_lifted(e),
                stamp: next_stamp,
            };
            next_stamp += 1;
            adjacency[u].insert(v, link);
            adjacency[v].insert(u, link);
            if link.in_graph {
                queue.push(QueueEntry {
                    join_cost: OrderedFloat(c),
                    pair: Reverse((u, v)),
                    stamp: link.stamp,
                });
            }
        }
        ContractionState {
            inst,
            sets: DisjointSets::new(n),
            component_of_root: (0..n).collect(),
            adjacency,
            queue,
            next_stamp,
            contractions: 0,
        }
    }

    pub fn instance(&self) -> &'a LmpInstance {
        self.inst
    }

    /// The feasible join with maximal join cost, ties broken by the smallest
    /// component pair. Discards stale queue entries on the way.
    pub fn best_join(&mut self) -> Option<(usize, usize, f64)> {
        while let Some(top) = self.queue.peek() {
            let (a, b) = top.pair.0;
            match self.adjacency[a].get(&b) {
                Some(link) if link.stamp == top.stamp => return Some((a, b, link.join_cost)),
                _ => {
                    self.queue.pop();
                }
            }
        }
        None
    }

    /// Join cost between two current components, if they are linked in `G'`.
    pub fn join_cost(&self, a: usize, b: usize) -> Option<f64> {
        self.adjacency.get(a)?.get(&b).map(|l| l.join_cost)
    }

    /// All linked component pairs `(a, b, join cost, linked in G)` with
    /// `a < b`.
    pub fn linked_pairs(&self) -> Vec<(usize, usize, f64, bool)> {
        let mut out = Vec::new();
        for (a, links) in self.adjacency.iter().enumerate() {
            for (&b, l) in links.range(a + 1..) {
                out.push((a, b, l.join_cost, l.in_graph));
            }
        }
        out
    }

    pub fn component_of(&mut self, v: usize) -> usize {
        let root = self.sets.find(v);
        self.component_of_root[root]
    }

    pub fn component_count(&self) -> usize {
        self.sets.set_count()
    }

    pub fn contractions(&self) -> usize {
        self.contractions
    }

    pub fn partition(&mut self) -> Partition {
        self.sets.to_partition()
    }

    /// Contracts the neighboring components `a` and `b`. The adjacency of the
    /// component with fewer links is merged into the other, adding join
    /// costs of common neighbors. Returns the join cost of the pair and the
    /// surviving component id, or `None` if `a` and `b` are not neighbors in
    /// `G`.
    pub fn contract(&mut self, a: usize, b: usize) -> Option<(f64, usize)> {
        let link = *self.adjacency.get(a)?.get(&b)?;
        if !link.in_graph {
            return None;
        }
        let (keep, gone) = if self.adjacency[a].len() >= self.adjacency[b].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.adjacency[keep].remove(&gone);
        let absorbed = std::mem::take(&mut self.adjacency[gone]);
        for (c, l) in absorbed {
            if c == keep {
                continue;
            }
            self.adjacency[c].remove(&gone);
            let stamp = self.next_stamp;
            self.next_stamp += 1;
            let merged = match self.adjacency[keep].entry(c) {
                Entry::Occupied(mut o) => {
                    let m = o.get_mut();
                    m.join_cost += l.join_cost;
                    m.in_graph |= l.in_graph;
                    m.stamp = stamp;
                    *m
                }
                Entry::Vacant(v) => *v.insert(Link { stamp, ..l }),
            };
            self.adjacency[c].insert(keep, merged);
            if merged.in_graph {
                self.queue.push(QueueEntry {
                    join_cost: OrderedFloat(merged.join_cost),
                    pair: Reverse((keep.min(c), keep.max(c))),
                    stamp,
                });
            }
        }
        let root = self.sets.union(keep, gone).unwrap_or_else(|| self.sets.find(keep));
        self.component_of_root[root] = keep;
        self.contractions += 1;
        Some((link.join_cost, keep))
    }
}

/// Greedy additive edge contraction.
///
/// Starting from single nodes, repeatedly joins the pair of neighboring
/// components whose join decreases the objective most, until no join
/// decreases it strictly (zero-cost joins are not executed).
pub fn gaec(inst: &LmpInstance) -> SolveReport {
    let start = Instant::now();
    let n = inst.node_count();
    let initial_objective = inst.cut_cost(&(0..n).collect::<Vec<_>>());
    let mut state = ContractionState::new(inst);
    let mut trace = Vec::new();
    while let Some((a, b, join_cost)) = state.best_join() {
        if join_cost <= 0.0 {
            break;
        }
        state.contract(a, b);
        trace.push(TraceStep {
            kind: StepKind::Contract,
            delta: -join_cost,
        });
    }
    let partition = state.partition();
    let objective = inst.cut_cost(partition.labels());
    SolveReport {
        partition,
        objective,
        initial_objective,
        iterations: state.contractions(),
        trace,
        hit_iteration_cap: false,
        elapsed: start.elapsed(),
    }
}
