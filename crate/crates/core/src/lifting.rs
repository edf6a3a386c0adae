//! Building instances from edge cut probabilities.
//!
//! Every graph edge carries a probability that its endpoints lie in distinct
//! components. Lifted edges connect all pairs at hop distance `2..=d*`; their
//! join probability is the largest product of edge join probabilities along
//! any connecting path, found with Dijkstra on the weights `-ln(1 - p_e)`.
//! Probabilities become costs through the log-odds rule with a cut prior `p*`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ordered_float::OrderedFloat;
use rayon::prelude::*;
use thiserror::Error;

use crate::{Graph, LmpInstance, ModelError};

pub const DEFAULT_CLAMP_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LiftingError {
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("prior {0} outside (0, 1)")]
    Prior(f64),
    #[error("clamp epsilon {0} outside (0, 0.5)")]
    ClampEps(f64),
    #[error("maximum lifting distance must be at least 1")]
    MaxDistance,
    #[error("expected {expected} edge probabilities, got {actual}")]
    ProbabilityCount { expected: usize, actual: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A graph with a cut probability per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilisticGraph {
    graph: Graph,
    cut_prob: Vec<f64>,
}

impl ProbabilisticGraph {
    pub fn new(graph: Graph, cut_prob: Vec<f64>) -> Result<Self, LiftingError> {
        if cut_prob.len() != graph.edge_count() {
            return Err(LiftingError::ProbabilityCount {
                expected: graph.edge_count(),
                actual: cut_prob.len(),
            });
        }
        if let Some(&p) = cut_prob.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(LiftingError::Probability(p));
        }
        Ok(ProbabilisticGraph { graph, cut_prob })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cut_probabilities(&self) -> &[f64] {
        &self.cut_prob
    }
}

/// Parameters of geodesic lifting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftingParams {
    /// Largest hop distance `d*` at which lifted edges are created.
    pub max_distance: usize,
    /// Prior cut probability `p*`.
    pub prior: f64,
    /// Probabilities are clamped to `[eps, 1 - eps]` before taking logs.
    pub clamp_eps: f64,
    /// Search maximum-probability paths only among nodes within
    /// `max_distance` hops of the source. Disable for exact geodesics.
    pub restrict_to_ball: bool,
}

impl LiftingParams {
    pub fn new(max_distance: usize, prior: f64) -> Self {
        LiftingParams {
            max_distance,
            prior,
            clamp_eps: DEFAULT_CLAMP_EPS,
            restrict_to_ball: true,
        }
    }

    pub fn validate(&self) -> Result<(), LiftingError> {
        if self.max_distance < 1 {
            return Err(LiftingError::MaxDistance);
        }
        check_prior(self.prior)?;
        check_eps(self.clamp_eps)
    }
}

impl Default for LiftingParams {
    fn default() -> Self {
        LiftingParams::new(10, 0.5)
    }
}

fn check_prior(prior: f64) -> Result<(), LiftingError> {
    if prior > 0.0 && prior < 1.0 {
        Ok(())
    } else {
        Err(LiftingError::Prior(prior))
    }
}

fn check_eps(eps: f64) -> Result<(), LiftingError> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(LiftingError::ClampEps(eps))
    }
}

/// `ln((1-p)/p) + ln((1-p*)/p*)` with `p` clamped to `[eps, 1-eps]`.
///
/// Positive costs favor joining the endpoints, negative costs favor cutting.
pub fn cost_from_probability(p: f64, prior: f64, clamp_eps: f64) -> Result<f64, LiftingError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(LiftingError::Probability(p));
    }
    check_prior(prior)?;
    check_eps(clamp_eps)?;
    let p = p.clamp(clamp_eps, 1.0 - clamp_eps);
    Ok(((1.0 - p) / p).ln() + ((1.0 - prior) / prior).ln())
}

/// A lifted pair and the probability that its endpoints are joined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftedJoin {
    pub u: usize,
    pub v: usize,
    pub join_prob: f64,
}

/// All pairs `u < v` with hop distance in `2..=d*` and their geodesic join
/// probability, sorted by `(u, v)`.
pub fn lifted_join_probabilities(
    pg: &ProbabilisticGraph,
    params: &LiftingParams,
) -> Result<Vec<LiftedJoin>, LiftingError> {
    params.validate()?;
    let g = &pg.graph;
    let eps = params.clamp_eps;
    let weights: Vec<f64> = pg
        .cut_prob
        .iter()
        .map(|&p| -(1.0 - p.clamp(eps, 1.0 - eps)).ln())
        .collect();

    let per_source: Vec<Vec<LiftedJoin>> = (0..g.node_count())
        .into_par_iter()
        .map_init(
            || SearchScratch::new(g.node_count()),
            |scratch, source| geodesics_from(g, &weights, source, params, scratch),
        )
        .collect();
    Ok(per_source.into_iter().flatten().collect())
}

struct SearchScratch {
    hops: Vec<Option<usize>>,
    dist: Vec<f64>,
    allowed: Vec<bool>,
}

impl SearchScratch {
    fn new(n: usize) -> Self {
        SearchScratch {
            hops: vec![None; n],
            dist: vec![f64::INFINITY; n],
            allowed: vec![false; n],
        }
    }
}

fn geodesics_from(
    g: &Graph,
    weights: &[f64],
    source: usize,
    params: &LiftingParams,
    scratch: &mut SearchScratch,
) -> Vec<LiftedJoin> {
    let ball = g.ball(source, params.max_distance, &mut scratch.hops);
    let mut partners: Vec<usize> = ball
        .iter()
        .filter(|&&(v, d)| d > 1 && v > source)
        .map(|&(v, _)| v)
        .collect();
    if partners.is_empty() {
        return Vec::new();
    }
    partners.sort_unstable();

    let restrict = params.restrict_to_ball;
    if restrict {
        for &(v, _) in &ball {
            scratch.allowed[v] = true;
        }
    }
    let dist = &mut scratch.dist;
    let mut touched = vec![source];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((OrderedFloat(0.0), source)));
    let mut remaining = partners.len();
    let settled_partner = |v: usize| partners.binary_search(&v).is_ok();
    while let Some(Reverse((OrderedFloat(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if settled_partner(u) {
            remaining -= 1;
            if remaining == 0 {
                break;
            }
        }
        for &(w, e) in g.neighbors(u) {
            if restrict && !scratch.allowed[w] {
                continue;
            }
            let nd = d + weights[e];
            if nd < dist[w] {
                if dist[w] == f64::INFINITY {
                    touched.push(w);
                }
                dist[w] = nd;
                heap.push(Reverse((OrderedFloat(nd), w)));
            }
        }
    }

    let out = partners
        .iter()
        .map(|&v| LiftedJoin {
            u: source,
            v,
            join_prob: (-dist[v]).exp(),
        })
        .collect();
    for v in touched {
        dist[v] = f64::INFINITY;
    }
    if restrict {
        for &(v, _) in &ball {
            scratch.allowed[v] = false;
        }
    }
    out
}

/// Builds the lifted instance: graph edge costs from their cut
/// probabilities, lifted edges for all pairs at hop distance `2..=d*` with
/// cut probability `1 - q` where `q` is the geodesic join probability.
pub fn geodesic_lift(pg: &ProbabilisticGraph, params: &LiftingParams) -> Result<LmpInstance, LiftingError> {
    let joins = lifted_join_probabilities(pg, params)?;
    let mut costs = Vec::with_capacity(pg.graph.edge_count() + joins.len());
    for &p in &pg.cut_prob {
        costs.push(cost_from_probability(p, params.prior, params.clamp_eps)?);
    }
    let mut lifted = Vec::with_capacity(joins.len());
    for j in &joins {
        lifted.push((j.u, j.v));
        let p = (1.0 - j.join_prob).clamp(0.0, 1.0);
        costs.push(cost_from_probability(p, params.prior, params.clamp_eps)?);
    }
    Ok(LmpInstance::new(pg.graph.clone(), lifted, costs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_rule_examples() {
        assert_eq!(cost_from_probability(0.5, 0.5, 1e-6).unwrap(), 0.0);
        // ln 9 = 2.19722457733621938279...
        let ln9 = 2.197_224_577_336_219_4;
        assert!((cost_from_probability(0.9, 0.5, 1e-6).unwrap() + ln9).abs() < 1e-12);
        assert!((cost_from_probability(0.5, 0.1, 1e-6).unwrap() - ln9).abs() < 1e-12);
    }

    #[test]
    fn cost_rule_clamps_extremes() {
        let c0 = cost_from_probability(0.0, 0.5, 1e-6).unwrap();
        let c1 = cost_from_probability(1.0, 0.5, 1e-6).unwrap();
        assert!(c0.is_finite() && c1.is_finite());
        assert!((c0 + c1).abs() < 1e-9);
        assert!((c0 - ((1.0 - 1e-6) / 1e-6f64).ln()).abs() < 1e-9);
    }

    #[test]
    fn cost_rule_rejects_bad_parameters() {
        assert!(cost_from_probability(1.5, 0.5, 1e-6).is_err());
        assert!(cost_from_probability(0.5, 0.0, 1e-6).is_err());
        assert!(cost_from_probability(0.5, 1.0, 1e-6).is_err());
        assert!(cost_from_probability(0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn three_path_lifting() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let pg = ProbabilisticGraph::new(g, vec![0.2, 0.1]).unwrap();
        let inst = geodesic_lift(&pg, &LiftingParams::new(2, 0.5)).unwrap();
        assert_eq!(inst.lifted_edges(), &[(0, 2)]);
        let joins = lifted_join_probabilities(&pg, &LiftingParams::new(2, 0.5)).unwrap();
        // max over the single 0-2 path: 0.8 * 0.9
        assert!((joins[0].join_prob - 0.72).abs() < 1e-12);
        let expected = cost_from_probability(0.28, 0.5, 1e-6).unwrap();
        assert!((inst.cost(2) - expected).abs() < 1e-12);
    }

    #[test]
    fn unit_distance_gives_plain_multicut() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let pg = ProbabilisticGraph::new(g, vec![0.3; 3]).unwrap();
        let inst = geodesic_lift(&pg, &LiftingParams::new(1, 0.5)).unwrap();
        assert!(inst.lifted_edges().is_empty());
    }

    #[test]
    fn distance_filter() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let pg = ProbabilisticGraph::new(g, vec![0.3; 3]).unwrap();
        let inst = geodesic_lift(&pg, &LiftingParams::new(2, 0.5)).unwrap();
        assert_eq!(inst.lifted_edges(), &[(0, 2), (1, 3)]);
    }

    #[test]
    fn ball_restriction_limits_detours() {
        // 0-1 is almost surely cut. The safe detour 0-2-3-4-5 passes node 4,
        // which is 3 hops from 0 and so outside the ball when d* = 2.
        let g = Graph::new(6, &[(0, 1), (1, 5), (0, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let mut probs = vec![0.01; 6];
        probs[0] = 0.99;
        let pg = ProbabilisticGraph::new(g, probs).unwrap();
        let mut params = LiftingParams::new(2, 0.5);
        let restricted = lifted_join_probabilities(&pg, &params).unwrap();
        params.restrict_to_ball = false;
        let free = lifted_join_probabilities(&pg, &params).unwrap();
        let q = |js: &[LiftedJoin]| js.iter().find(|j| (j.u, j.v) == (0, 5)).unwrap().join_prob;
        assert!((q(&restricted) - 0.01 * 0.99).abs() < 1e-12);
        assert!((q(&free) - 0.99f64.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn probability_validation() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(ProbabilisticGraph::new(g.clone(), vec![1.2]).is_err());
        assert!(ProbabilisticGraph::new(g, vec![]).is_err());
        let mut params = LiftingParams::new(0, 0.5);
        assert_eq!(params.validate(), Err(LiftingError::MaxDistance));
        params.max_distance = 3;
        params.prior = 1.0;
        assert!(params.validate().is_err());
    }
}
