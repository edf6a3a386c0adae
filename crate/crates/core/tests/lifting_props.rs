mod common;

use common::{max_path_products, random_instance, SplitMix};
use lifted_multicut::{
    cost_from_probability, geodesic_lift, lifted_join_probabilities, Graph, LiftingParams, ProbabilisticGraph,
    DEFAULT_CLAMP_EPS,
};
use proptest::prelude::*;

fn random_pg(n: usize, density: f64, seed: u64) -> ProbabilisticGraph {
    let graph = random_instance(n, density, 0.0, seed).graph().clone();
    let mut rng = SplitMix(seed);
    let probs = (0..graph.edge_count()).map(|_| rng.unit()).collect();
    ProbabilisticGraph::new(graph, probs).unwrap()
}

proptest! {
    #[test]
    fn lifted_edges_are_exactly_the_pairs_within_range(
        n in 2usize..14, density in 0.01f64..0.4, seed in any::<u64>(), d in 1usize..6,
    ) {
        let pg = random_pg(n, density, seed);
        let inst = geodesic_lift(&pg, &LiftingParams::new(d, 0.5)).unwrap();
        let g = pg.graph();
        let mut expected = Vec::new();
        for u in 0..n {
            let dist = g.distances(u, n).unwrap();
            for (v, dv) in dist.iter().enumerate().skip(u + 1) {
                if matches!(dv, Some(k) if (2..=d).contains(k)) {
                    expected.push((u, v));
                }
            }
        }
        prop_assert_eq!(inst.lifted_edges(), &expected[..]);
        for &(u, v) in inst.lifted_edges() {
            prop_assert!(g.find_edge(u, v).is_none());
        }
        prop_assert!(inst.costs().iter().all(|c| c.is_finite()));
    }

    #[test]
    fn raising_a_cut_probability_never_raises_join_probabilities(
        n in 3usize..12, seed in any::<u64>(), edge in any::<prop::sample::Index>(), bump in 0.0f64..1.0,
        restrict in any::<bool>(),
    ) {
        let pg = random_pg(n, 0.25, seed);
        let params = LiftingParams { restrict_to_ball: restrict, ..LiftingParams::new(4, 0.5) };
        let before = lifted_join_probabilities(&pg, &params).unwrap();
        let mut probs = pg.cut_probabilities().to_vec();
        let e = edge.index(probs.len());
        probs[e] += (1.0 - probs[e]) * bump;
        let raised = ProbabilisticGraph::new(pg.graph().clone(), probs).unwrap();
        let after = lifted_join_probabilities(&raised, &params).unwrap();
        prop_assert_eq!(before.len(), after.len());
        for (b, a) in before.iter().zip(&after) {
            prop_assert_eq!((b.u, b.v), (a.u, a.v));
            prop_assert!(a.join_prob <= b.join_prob + 1e-12);
        }
    }

    #[test]
    fn ball_restriction_only_lowers_join_probabilities(n in 3usize..12, seed in any::<u64>(), d in 2usize..5) {
        let pg = random_pg(n, 0.3, seed);
        let open = LiftingParams { restrict_to_ball: false, ..LiftingParams::new(d, 0.5) };
        let exact = lifted_join_probabilities(&pg, &open).unwrap();
        let ball = lifted_join_probabilities(&pg, &LiftingParams::new(d, 0.5)).unwrap();
        for (x, b) in exact.iter().zip(&ball) {
            prop_assert!(b.join_prob <= x.join_prob + 1e-12);
            let best = max_path_products(pg.graph(), pg.cut_probabilities(), x.u)[x.v];
            prop_assert!((x.join_prob - best).abs() <= 1e-9);
        }
    }

    #[test]
    fn neutral_probability_costs_nothing(prior in 0.01f64..0.99) {
        let c = cost_from_probability(1.0 - prior, prior, DEFAULT_CLAMP_EPS).unwrap();
        prop_assert!(c.abs() <= 1e-12);
    }

    #[test]
    fn costs_fall_with_cut_probability(p in 0.0f64..1.0, q in 0.0f64..1.0, prior in 0.01f64..0.99) {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        let a = cost_from_probability(lo, prior, DEFAULT_CLAMP_EPS).unwrap();
        let b = cost_from_probability(hi, prior, DEFAULT_CLAMP_EPS).unwrap();
        prop_assert!(b <= a);
        prop_assert!(a.is_finite() && b.is_finite());
    }
}

#[test]
fn uniform_half_probabilities_at_half_prior_cost_nothing() {
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let pg = ProbabilisticGraph::new(g, vec![0.5; 3]).unwrap();
    let inst = geodesic_lift(&pg, &LiftingParams::new(3, 0.5)).unwrap();
    for e in 0..3 {
        assert_eq!(inst.cost(e), 0.0);
    }
    // lifted edges see join probabilities 1/4 and 1/8, i.e. cut-leaning costs
    assert!(inst.costs()[3..].iter().all(|&c| c < 0.0));
}

#[test]
fn invalid_parameters_are_rejected() {
    let pg = random_pg(5, 0.3, 1);
    assert!(geodesic_lift(&pg, &LiftingParams::new(0, 0.5)).is_err());
    assert!(geodesic_lift(&pg, &LiftingParams::new(2, 0.0)).is_err());
    assert!(geodesic_lift(&pg, &LiftingParams::new(2, 1.0)).is_err());
    assert!(ProbabilisticGraph::new(Graph::new(2, &[(0, 1)]).unwrap(), vec![1.5]).is_err());
    assert!(ProbabilisticGraph::new(Graph::new(2, &[(0, 1)]).unwrap(), vec![]).is_err());
}
