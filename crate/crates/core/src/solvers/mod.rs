//! Primal feasible heuristics (greedy additive edge contraction and
//! Kernighan-Lin with joins) and an exhaustive solver for small instances.

mod exact;
mod gaec;
mod klj;

use std::time::Duration;

use thiserror::Error;

pub use exact::{solve_exact, solve_exact_with_cap, DEFAULT_EXACT_NODE_CAP};
pub use gaec::{gaec, ContractionState};
pub use klj::{gaec_klj, klj, klj_with_options, update_bipartition, KljOptions, KljState, DEFAULT_OUTER_ITERATION_CAP};

use crate::{LmpInstance, ModelError, Partition};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("initial partition is not a decomposition of the graph")]
    InitNotDecomposition,
    #[error("initial partition covers {actual} nodes, instance has {expected}")]
    InitSize { expected: usize, actual: usize },
    #[error("exhaustive search is limited to {cap} nodes, instance has {nodes}")]
    TooManyNodes { nodes: usize, cap: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// GAEC contraction of two neighboring components.
    Contract,
    /// KLj: moving nodes between two neighboring components.
    Move,
    /// KLj: moving nodes out of a component into a new one.
    Split,
    /// KLj: joining two neighboring components.
    Join,
    /// Exhaustive search: jump from all singletons to the optimum.
    Exact,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Contract => "contract",
            StepKind::Move => "move",
            StepKind::Split => "split",
            StepKind::Join => "join",
            StepKind::Exact => "exact",
        }
    }
}

impl std::fmt::Display for StepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for StepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "contract" => StepKind::Contract,
            "move" => StepKind::Move,
            "split" => StepKind::Split,
            "join" => StepKind::Join,
            "exact" => StepKind::Exact,
            _ => return Err(format!("unknown step kind '{s}'")),
        })
    }
}

/// One executed transformation and the objective change it caused.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub delta: f64,
}

/// Result of a solver run.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    /// Final decomposition in canonical form.
    pub partition: Partition,
    /// Objective of `partition`, recomputed from scratch.
    pub objective: f64,
    /// Objective of the starting point (all singletons for GAEC and the
    /// exhaustive solver, the given initial decomposition for KLj).
    pub initial_objective: f64,
    pub trace: Vec<TraceStep>,
    /// Contractions for GAEC, outer iterations for KLj, decompositions
    /// visited for the exhaustive solver.
    pub iterations: usize,
    /// Set when KLj stopped at its outer iteration cap.
    pub hit_iteration_cap: bool,
    pub elapsed: Duration,
}

impl SolveReport {
    pub fn trace_delta_sum(&self) -> f64 {
        self.trace.iter().map(|s| s.delta).sum()
    }
}

/// Splits every block into its connected pieces in `G`, giving a
/// decomposition. Only lifted edges can straddle two pieces of a former
/// block, so the objective changes by the cost of those lifted edges.
pub fn canonicalize(inst: &LmpInstance, p: &Partition) -> Partition {
    inst.graph().restricted_components(p.labels())
}
