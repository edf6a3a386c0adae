use std::time::Instant;

use super::{SolveError, SolveReport, StepKind, TraceStep};
use crate::{LmpInstance, SetPartitions};

/// Bell(10) = 115975 set partitions.
pub const DEFAULT_EXACT_NODE_CAP: usize = 10;

/// Exhaustive search with the default node cap.
pub fn solve_exact(inst: &LmpInstance) -> Result<SolveReport, SolveError> {
    solve_exact_with_cap(inst, DEFAULT_EXACT_NODE_CAP)
}

/// Enumerates every set partition of the nodes, keeps the decompositions of
/// the graph, and returns one of minimal objective. Among equal minima the
/// first in canonical order wins.
pub fn solve_exact_with_cap(inst: &LmpInstance, cap: usize) -> Result<SolveReport, SolveError> {
    let n = inst.node_count();
    if n > cap {
        return Err(SolveError::TooManyNodes { nodes: n, cap });
    }
    let start = Instant::now();
    let initial_objective = inst.cut_cost(&(0..n).collect::<Vec<_>>());
    let g = inst.graph();
    let mut best = None;
    let mut visited = 0;
    for p in SetPartitions::new(n) {
        if g.restricted_components(p.labels()).block_count() != p.block_count() {
            continue;
        }
        visited += 1;
        let value = inst.cut_cost(p.labels());
        match &best {
            Some((v, _)) if *v <= value => {}
            _ => best = Some((value, p)),
        }
    }
    let (objective, partition) = best.expect("the singleton partition is always a decomposition");
    Ok(SolveReport {
        partition,
        objective,
        initial_objective,
        trace: vec![TraceStep {
            kind: StepKind::Exact,
            delta: objective - initial_objective,
        }],
        iterations: visited,
        hit_iteration_cap: false,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Graph, Partition};

    #[test]
    fn three_path_optimum() {
        let inst = LmpInstance::multicut(Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), vec![3.0, -1.0]).unwrap();
        let r = solve_exact(&inst).unwrap();
        assert_eq!(r.partition, Partition::from_labels(&[0, 0, 1]));
        assert_eq!(r.objective, -1.0);
        assert_eq!(r.iterations, 4);
    }

    #[test]
    fn single_node() {
        let inst = LmpInstance::multicut(Graph::new(1, &[]).unwrap(), vec![]).unwrap();
        let r = solve_exact(&inst).unwrap();
        assert_eq!(r.partition, Partition::single_block(1));
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn path_decomposition_count() {
        for n in 1..=6usize {
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            let inst = LmpInstance::multicut(Graph::new(n, &edges).unwrap(), vec![1.0; n - 1]).unwrap();
            assert_eq!(solve_exact(&inst).unwrap().iterations, 1 << (n - 1));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let inst = LmpInstance::multicut(Graph::empty(4), vec![]).unwrap();
        assert_eq!(
            solve_exact_with_cap(&inst, 3),
            Err(SolveError::TooManyNodes { nodes: 4, cap: 3 })
        );
    }

    #[test]
    fn ties_resolve_to_first_canonical() {
        // zero costs: every decomposition is optimal, single block comes first
        let inst = LmpInstance::multicut(Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), vec![0.0, 0.0]).unwrap();
        assert_eq!(solve_exact(&inst).unwrap().partition, Partition::single_block(3));
    }
}
