//! Lifted multicut instances, the objective, and the correspondence between
//! edge labelings and decompositions.
//!
//! Edges of `E ∪ F` share one global index: the graph edges first, in graph
//! order, then the lifted edges in the order given at construction.

use thiserror::Error;

use crate::{Graph, GraphError, Partition};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("lifted edge ({0}, {1}) is a self-loop")]
    LiftedSelfLoop(usize, usize),
    #[error("lifted edge ({0}, {1}) is also an edge of the graph")]
    LiftedInGraph(usize, usize),
    #[error("duplicate lifted edge ({0}, {1})")]
    DuplicateLifted(usize, usize),
    #[error("lifted edge ({u}, {v}) references a node outside 0..{node_count}")]
    LiftedOutOfRange { u: usize, v: usize, node_count: usize },
    #[error("expected {expected} costs, got {actual}")]
    CostCount { expected: usize, actual: usize },
    #[error("cost of edge {edge} is not finite ({cost})")]
    NonFiniteCost { edge: usize, cost: f64 },
    #[error("labeling has {actual} entries, instance has {expected} edges")]
    LabelingLength { expected: usize, actual: usize },
    #[error("partition is not a decomposition of the graph (some block is disconnected)")]
    NotDecomposition,
}

/// An instance of the minimum cost lifted multicut problem: a graph `G`,
/// lifted edges `F` between non-neighbors, and a finite cost per edge of
/// `E ∪ F`, paid when the endpoints end up in distinct components.
#[derive(Clone, Debug, PartialEq)]
pub struct LmpInstance {
    graph: Graph,
    lifted: Vec<(usize, usize)>,
    costs: Vec<f64>,
    // (neighbor, global edge index) over E ∪ F, sorted by neighbor
    extended: Vec<Vec<(usize, usize)>>,
}

impl LmpInstance {
    /// `costs` holds the graph edge costs followed by the lifted edge costs.
    /// Lifted edges are normalized to `u < v`.
    pub fn new(graph: Graph, lifted: Vec<(usize, usize)>, costs: Vec<f64>) -> Result<Self, ModelError> {
        let n = graph.node_count();
        let expected = graph.edge_count() + lifted.len();
        if costs.len() != expected {
            return Err(ModelError::CostCount {
                expected,
                actual: costs.len(),
            });
        }
        if let Some((edge, &cost)) = costs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(ModelError::NonFiniteCost { edge, cost });
        }
        let mut extended: Vec<Vec<(usize, usize)>> = (0..n).map(|v| graph.neighbors(v).to_vec()).collect();
        let m = graph.edge_count();
        let mut normalized = Vec::with_capacity(lifted.len());
        for (i, &(a, b)) in lifted.iter().enumerate() {
            if a >= n || b >= n {
                return Err(ModelError::LiftedOutOfRange {
                    u: a,
                    v: b,
                    node_count: n,
                });
            }
            if a == b {
                return Err(ModelError::LiftedSelfLoop(a, b));
            }
            let (u, v) = (a.min(b), a.max(b));
            if graph.find_edge(u, v).is_some() {
                return Err(ModelError::LiftedInGraph(u, v));
            }
            normalized.push((u, v));
            extended[u].push((v, m + i));
            extended[v].push((u, m + i));
        }
        for (u, list) in extended.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                let v = w[0].0;
                return Err(ModelError::DuplicateLifted(u.min(v), u.max(v)));
            }
        }
        Ok(LmpInstance {
            graph,
            lifted: normalized,
            costs,
            extended,
        })
    }

    /// A plain multicut instance (`F = ∅`).
    pub fn multicut(graph: Graph, costs: Vec<f64>) -> Result<Self, ModelError> {
        Self::new(graph, Vec::new(), costs)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn lifted_edges(&self) -> &[(usize, usize)] {
        &self.lifted
    }

    /// `|E| + |F|`.
    pub fn edge_count(&self) -> usize {
        self.costs.len()
    }

    pub fn is_lifted(&self, edge: usize) -> bool {
        edge >= self.graph.edge_count()
    }

    /// Endpoints `(u, v)`, `u < v`, of the edge with global index `edge`.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let m = self.graph.edge_count();
        if edge < m {
            self.graph.edge(edge)
        } else {
            self.lifted[edge - m]
        }
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn cost(&self, edge: usize) -> f64 {
        self.costs[edge]
    }

    /// Neighbors in `G' = (V, E ∪ F)` as `(neighbor, global edge index)`,
    /// sorted by neighbor.
    pub fn extended_neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.extended[v]
    }

    /// All edges of `E ∪ F` as `(u, v, cost)` in global order.
    pub fn all_edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.graph
            .edges()
            .iter()
            .chain(&self.lifted)
            .zip(&self.costs)
            .map(|(&(u, v), &c)| (u, v, c))
    }

    /// Objective value of the labeling induced by node labels, i.e. the total
    /// cost of all edges whose endpoints carry different labels. Equals
    /// [`objective`] of [`labeling_from_partition`] whenever the labels form
    /// a decomposition, with identical rounding.
    pub fn cut_cost(&self, labels: &[usize]) -> f64 {
        let mut total = 0.0;
        for (u, v, c) in self.all_edges() {
            if labels[u] != labels[v] {
                total += c;
            }
        }
        total
    }
}

/// A 01 labeling of `E ∪ F`, indexed by global edge index. A label of `1`
/// (`true`) means the endpoints are in distinct components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLabeling(pub Vec<bool>);

impl EdgeLabeling {
    pub fn zeros(len: usize) -> Self {
        EdgeLabeling(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        EdgeLabeling(vec![true; len])
    }

    /// Labeling from the bits of `mask`; bit `i` is edge `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        EdgeLabeling((0..len).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, edge: usize) -> bool {
        self.0[edge]
    }
}

fn check_len(inst: &LmpInstance, y: &EdgeLabeling) -> Result<(), ModelError> {
    if y.len() != inst.edge_count() {
        return Err(ModelError::LabelingLength {
            expected: inst.edge_count(),
            actual: y.len(),
        });
    }
    Ok(())
}

/// `Σ c_e y_e` over `E ∪ F`, summed in edge order.
pub fn objective(inst: &LmpInstance, y: &EdgeLabeling) -> Result<f64, ModelError> {
    check_len(inst, y)?;
    let mut total = 0.0;
    for (&c, &cut) in inst.costs.iter().zip(&y.0) {
        if cut {
            total += c;
        }
    }
    Ok(total)
}

/// The lifted multicut of a decomposition: `y_vw = 1` iff `v` and `w` lie in
/// distinct blocks.
pub fn labeling_from_partition(inst: &LmpInstance, p: &Partition) -> Result<EdgeLabeling, ModelError> {
    if !inst.graph.is_decomposition(p)? {
        return Err(ModelError::NotDecomposition);
    }
    Ok(EdgeLabeling(
        inst.all_edges().map(|(u, v, _)| !p.same_block(u, v)).collect(),
    ))
}

/// Components of `(V, {e ∈ E : y_e = 0})`. Lifted labels are ignored; for a
/// feasible labeling this inverts [`labeling_from_partition`].
pub fn partition_from_labeling(inst: &LmpInstance, y: &EdgeLabeling) -> Result<Partition, ModelError> {
    check_len(inst, y)?;
    Ok(zero_components(inst, y))
}

fn zero_components(inst: &LmpInstance, y: &EdgeLabeling) -> Partition {
    let mut ds = crate::DisjointSets::new(inst.node_count());
    for (e, &(u, v)) in inst.graph.edges().iter().enumerate() {
        if !y.0[e] {
            ds.union(u, v);
        }
    }
    ds.to_partition()
}

/// The three inequality families whose violation makes a labeling
/// infeasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// A graph edge labeled 1 whose endpoints are joined by a 0-path.
    Cycle,
    /// A lifted edge labeled 1 whose endpoints are joined by a 0-path.
    Path,
    /// A lifted edge labeled 0 whose endpoints are separated.
    Cut,
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ViolationKind::Cycle => "cycle",
            ViolationKind::Path => "path",
            ViolationKind::Cut => "cut",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Global index of the witness edge.
    pub edge: usize,
    pub endpoints: (usize, usize),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (u, v) = self.endpoints;
        match self.kind {
            ViolationKind::Cycle => write!(
                f,
                "cycle violation: edge {} ({u}, {v}) is cut but its endpoints are connected by uncut edges",
                self.edge
            ),
            ViolationKind::Path => write!(
                f,
                "path violation: lifted edge {} ({u}, {v}) is cut but its endpoints are connected by uncut edges",
                self.edge
            ),
            ViolationKind::Cut => write!(
                f,
                "cut violation: lifted edge {} ({u}, {v}) is uncut but its endpoints are separated",
                self.edge
            ),
        }
    }
}

/// Outcome of [`check_feasibility`]: at most one violation per family, each
/// the witness with the lowest edge index, ordered cycle, path, cut.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Decides membership in the feasible set by the component test: with the
/// components of the 0-labeled graph edges, every edge of `E ∪ F` must be
/// labeled 0 exactly when its endpoints share a component.
pub fn check_feasibility(inst: &LmpInstance, y: &EdgeLabeling) -> Result<FeasibilityReport, ModelError> {
    check_len(inst, y)?;
    let comps = zero_components(inst, y);
    let mut found: [Option<Violation>; 3] = [None; 3];
    for (e, (u, v, _)) in inst.all_edges().enumerate() {
        let joined = comps.same_block(u, v);
        let kind = match (inst.is_lifted(e), y.0[e], joined) {
            (false, true, true) => ViolationKind::Cycle,
            (true, true, true) => ViolationKind::Path,
            (true, false, false) => ViolationKind::Cut,
            _ => continue,
        };
        let slot = &mut found[kind as usize];
        if slot.is_none() {
            *slot = Some(Violation {
                kind,
                edge: e,
                endpoints: (u, v),
            });
        }
    }
    Ok(FeasibilityReport {
        violations: found.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3(costs: Vec<f64>, lifted: Vec<(usize, usize)>) -> LmpInstance {
        LmpInstance::new(Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), lifted, costs).unwrap()
    }

    fn labels(bits: &[u8]) -> EdgeLabeling {
        EdgeLabeling(bits.iter().map(|&b| b == 1).collect())
    }

    #[test]
    fn instance_validation() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            LmpInstance::new(g.clone(), vec![(1, 0)], vec![0.0; 3]),
            Err(ModelError::LiftedInGraph(0, 1))
        );
        assert_eq!(
            LmpInstance::new(g.clone(), vec![(0, 2), (2, 0)], vec![0.0; 4]),
            Err(ModelError::DuplicateLifted(0, 2))
        );
        assert_eq!(
            LmpInstance::new(g.clone(), vec![(1, 1)], vec![0.0; 3]),
            Err(ModelError::LiftedSelfLoop(1, 1))
        );
        assert!(matches!(
            LmpInstance::new(g.clone(), vec![], vec![0.0]),
            Err(ModelError::CostCount { expected: 2, actual: 1 })
        ));
        assert!(matches!(
            LmpInstance::new(g, vec![], vec![0.0, f64::NAN]),
            Err(ModelError::NonFiniteCost { edge: 1, .. })
        ));
    }

    #[test]
    fn global_edge_index() {
        let inst = path3(vec![1.0, 2.0, 3.0], vec![(2, 0)]);
        assert_eq!(inst.endpoints(2), (0, 2));
        assert!(inst.is_lifted(2) && !inst.is_lifted(1));
        assert_eq!(inst.extended_neighbors(0), &[(1, 0), (2, 2)]);
    }

    #[test]
    fn objective_examples() {
        let inst = path3(vec![3.0, -1.0], vec![]);
        assert_eq!(objective(&inst, &EdgeLabeling::zeros(2)).unwrap(), 0.0);
        assert_eq!(objective(&inst, &EdgeLabeling::ones(2)).unwrap(), 2.0);
        assert_eq!(objective(&inst, &labels(&[0, 1])).unwrap(), -1.0);
        assert!(objective(&inst, &EdgeLabeling::ones(3)).is_err());
    }

    #[test]
    fn labeling_partition_examples() {
        let inst = path3(vec![1.0, 1.0, 1.0], vec![(0, 2)]);
        assert_eq!(
            labeling_from_partition(&inst, &Partition::singletons(3)).unwrap(),
            EdgeLabeling::ones(3)
        );
        assert_eq!(
            labeling_from_partition(&inst, &Partition::single_block(3)).unwrap(),
            EdgeLabeling::zeros(3)
        );
        let p = Partition::from_labels(&[0, 0, 1]);
        assert_eq!(labeling_from_partition(&inst, &p).unwrap(), labels(&[0, 1, 1]));
        assert_eq!(
            labeling_from_partition(&inst, &Partition::from_labels(&[0, 1, 0])),
            Err(ModelError::NotDecomposition)
        );

        assert_eq!(
            partition_from_labeling(&inst, &EdgeLabeling::zeros(3)).unwrap(),
            Partition::single_block(3)
        );
        assert_eq!(
            partition_from_labeling(&inst, &EdgeLabeling::ones(3)).unwrap(),
            Partition::singletons(3)
        );
        assert_eq!(partition_from_labeling(&inst, &labels(&[0, 1, 1])).unwrap(), p);
    }

    #[test]
    fn feasibility_witnesses() {
        let tri = LmpInstance::multicut(Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), vec![1.0; 3]).unwrap();
        let r = check_feasibility(&tri, &labels(&[1, 0, 0])).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::Cycle);
        assert_eq!(r.violations[0].edge, 0);

        let inst = path3(vec![1.0; 3], vec![(0, 2)]);
        let r = check_feasibility(&inst, &labels(&[0, 0, 1])).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::Path);
        assert_eq!(r.violations[0].endpoints, (0, 2));

        let r = check_feasibility(&inst, &labels(&[1, 1, 0])).unwrap();
        assert_eq!(r.violations[0].kind, ViolationKind::Cut);
        assert_eq!(r.violations[0].edge, 2);

        assert!(check_feasibility(&inst, &labels(&[0, 1, 1])).unwrap().is_feasible());
        assert!(check_feasibility(&inst, &labels(&[0, 1])).is_err());
    }

    #[test]
    fn one_witness_per_family() {
        // two disjoint triangles, each with one cut edge
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let inst = LmpInstance::multicut(g, vec![1.0; 6]).unwrap();
        let r = check_feasibility(&inst, &labels(&[0, 1, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].edge, 1);
    }
}
