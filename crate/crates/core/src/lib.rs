/*!
Minimum cost multicut and lifted multicut problems on graphs.

An instance consists of a simple undirected graph `G = (V, E)`, a set `F` of
*lifted* edges between nodes that are not neighbors in `G`, and a real cost
for every edge of `E ∪ F`. A feasible solution is a decomposition of `G`:
a partition of the nodes into blocks that each induce a connected subgraph.
An edge costs its weight when its endpoints end up in different blocks, and
the goal is a decomposition of minimal total cost. With `F` empty this is
the classic minimum cost multicut problem (correlation clustering on `G`).

The crate provides

* [`Graph`], [`Partition`] and [`DisjointSets`] as the basic structures,
* [`LmpInstance`], the [`objective`], and conversion and feasibility
  checks between decompositions and 01 edge labelings,
* geodesic lifting ([`geodesic_lift`]): lifted edges and their costs from
  per-edge cut probabilities,
* two heuristics, greedy additive edge contraction ([`gaec`]) and
  Kernighan-Lin with joins ([`klj`]), plus an exhaustive solver for tiny
  instances ([`solve_exact`]),
* partition comparison metrics ([`variation_of_information`],
  [`rand_index`]),
* text formats and instance generators ([`formats`], [`generators`]).

# Example

```
use lifted_multicut::{gaec_klj, Graph, LmpInstance, Partition};

// 0 - 1 - 2, joining 0 and 1 is rewarded, joining 1 and 2 penalized
let graph = Graph::new(3, &[(0, 1), (1, 2)])?;
let inst = LmpInstance::multicut(graph, vec![3.0, -1.0])?;

let report = gaec_klj(&inst);
assert_eq!(report.partition, Partition::from_labels(&[0, 0, 1]));
assert_eq!(report.objective, -1.0);
# Ok::<(), Box<dyn std::error::Error>>(())
```
*/

pub mod formats;
pub mod generators;
mod graph;
mod lifting;
mod metrics;
mod model;
mod partition;
mod solvers;
mod union_find;

pub use graph::{Graph, GraphError};
pub use lifting::{
    cost_from_probability, geodesic_lift, lifted_join_probabilities, LiftedJoin, LiftingError, LiftingParams,
    ProbabilisticGraph, DEFAULT_CLAMP_EPS,
};
pub use metrics::{
    rand_index, variation_of_information, variation_of_information_with_base, ConfusionTable, LogBase, MetricsError,
    VariationOfInformation,
};
pub use model::{
    check_feasibility, labeling_from_partition, objective, partition_from_labeling, EdgeLabeling, FeasibilityReport,
    LmpInstance, ModelError, Violation, ViolationKind,
};
pub use partition::{Partition, SetPartitions};
pub use solvers::{
    canonicalize, gaec, gaec_klj, klj, klj_with_options, solve_exact, solve_exact_with_cap, update_bipartition,
    ContractionState, KljOptions, KljState, SolveError, SolveReport, StepKind, TraceStep, DEFAULT_EXACT_NODE_CAP,
    DEFAULT_OUTER_ITERATION_CAP,
};
pub use union_find::DisjointSets;
