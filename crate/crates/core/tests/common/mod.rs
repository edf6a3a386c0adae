//! Brute-force reference implementations used to check the library. None of
//! these call into the code paths they are compared against.

#![allow(dead_code)]

use lifted_multicut::generators::{gen_random, RandomInstanceParams};
use lifted_multicut::{EdgeLabeling, Graph, LmpInstance};

/// Connectivity of `v` and `w` using only the graph edges in `keep`.
fn connected_with(graph: &Graph, keep: &[bool], v: usize, w: usize) -> bool {
    let mut seen = vec![false; graph.node_count()];
    let mut stack = vec![v];
    seen[v] = true;
    while let Some(u) = stack.pop() {
        if u == w {
            return true;
        }
        for (e, &(a, b)) in graph.edges().iter().enumerate() {
            if !keep[e] {
                continue;
            }
            let next = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    false
}

/// Degree of every node and whether the chosen edges form one connected
/// piece (over the nodes they touch).
fn subset_shape(graph: &Graph, subset: u32) -> (Vec<usize>, bool) {
    let n = graph.node_count();
    let mut degree = vec![0; n];
    let mut keep = vec![false; graph.edge_count()];
    let mut first = None;
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        if subset >> e & 1 == 1 {
            keep[e] = true;
            degree[a] += 1;
            degree[b] += 1;
            first.get_or_insert(a);
        }
    }
    let Some(start) = first else {
        return (degree, false);
    };
    let connected = (0..n)
        .filter(|&v| degree[v] > 0)
        .all(|v| connected_with(graph, &keep, start, v));
    (degree, connected)
}

/// Edge subsets (bitmasks over graph edges) forming simple cycles.
pub fn simple_cycles(graph: &Graph) -> Vec<u32> {
    assert!(graph.edge_count() <= 20);
    (1u32..1 << graph.edge_count())
        .filter(|&s| {
            let (deg, connected) = subset_shape(graph, s);
            connected && deg.iter().all(|&d| d == 0 || d == 2)
        })
        .collect()
}

/// Edge subsets forming simple paths from `v` to `w`.
pub fn simple_paths(graph: &Graph, v: usize, w: usize) -> Vec<u32> {
    (1u32..1 << graph.edge_count())
        .filter(|&s| {
            let (deg, connected) = subset_shape(graph, s);
            connected
                && deg[v] == 1
                && deg[w] == 1
                && deg
                    .iter()
                    .enumerate()
                    .all(|(u, &d)| u == v || u == w || d == 0 || d == 2)
        })
        .collect()
}

/// Edge subsets whose removal separates `v` from `w`.
pub fn separating_cuts(graph: &Graph, v: usize, w: usize) -> Vec<u32> {
    (0u32..1 << graph.edge_count())
        .filter(|&s| {
            let keep: Vec<bool> = (0..graph.edge_count()).map(|e| s >> e & 1 == 0).collect();
            !connected_with(graph, &keep, v, w)
        })
        .collect()
}

/// Membership in the feasible set by evaluating the cycle, path and cut
/// inequalities literally.
pub struct InequalitySystem {
    cycles: Vec<u32>,
    // per lifted edge: (paths, cuts)
    lifted: Vec<(Vec<u32>, Vec<u32>)>,
    graph_edges: usize,
}

impl InequalitySystem {
    pub fn new(inst: &LmpInstance) -> Self {
        let g = inst.graph();
        InequalitySystem {
            cycles: simple_cycles(g),
            lifted: inst
                .lifted_edges()
                .iter()
                .map(|&(v, w)| (simple_paths(g, v, w), separating_cuts(g, v, w)))
                .collect(),
            graph_edges: g.edge_count(),
        }
    }

    pub fn is_feasible(&self, y: &EdgeLabeling) -> bool {
        let m = self.graph_edges;
        let y_e = |e: usize| i32::from(y.get(e));
        let sum = |set: u32| (0..m).filter(|&e| set >> e & 1 == 1).map(y_e).sum::<i32>();
        // y_e <= sum of the other cycle edges
        for &c in &self.cycles {
            let total = sum(c);
            for e in (0..m).filter(|&e| c >> e & 1 == 1) {
                if y_e(e) > total - y_e(e) {
                    return false;
                }
            }
        }
        for (i, (paths, cuts)) in self.lifted.iter().enumerate() {
            let y_f = i32::from(y.get(m + i));
            // y_vw <= sum over any vw-path
            if paths.iter().any(|&p| y_f > sum(p)) {
                return false;
            }
            // 1 - y_vw <= sum over any vw-cut of (1 - y_e)
            for &c in cuts {
                let size = c.count_ones() as i32;
                if 1 - y_f > size - sum(c) {
                    return false;
                }
            }
        }
        true
    }
}

/// Largest product of `1 - p_e` over all simple paths from `source`, per
/// target node (0 where unreachable), by exhaustive depth-first search.
pub fn max_path_products(graph: &Graph, cut_prob: &[f64], source: usize) -> Vec<f64> {
    fn dfs(graph: &Graph, join: &[f64], u: usize, product: f64, on_path: &mut [bool], best: &mut [f64]) {
        if product > best[u] {
            best[u] = product;
        }
        for &(w, e) in graph.neighbors(u) {
            if !on_path[w] {
                on_path[w] = true;
                dfs(graph, join, w, product * join[e], on_path, best);
                on_path[w] = false;
            }
        }
    }
    let join: Vec<f64> = cut_prob.iter().map(|p| 1.0 - p).collect();
    let mut best = vec![0.0; graph.node_count()];
    let mut on_path = vec![false; graph.node_count()];
    on_path[source] = true;
    dfs(graph, &join, source, 1.0, &mut on_path, &mut best);
    best
}

/// Rand index by enumerating all node pairs.
pub fn rand_index_by_pairs(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let mut agree = 0usize;
    let mut total = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            total += 1;
            if (a[i] == a[j]) == (b[i] == b[j]) {
                agree += 1;
            }
        }
    }
    agree as f64 / total as f64
}

/// Variation of information in bits as `2 H(X, Y) - H(X) - H(Y)`.
pub fn vi_by_joint_entropy(a: &[usize], b: &[usize]) -> f64 {
    use std::collections::HashMap;
    fn entropy<K: std::hash::Hash + Eq>(items: impl Iterator<Item = K>, n: f64) -> f64 {
        let mut counts: HashMap<K, usize> = HashMap::new();
        for k in items {
            *counts.entry(k).or_default() += 1;
        }
        counts.values().map(|&c| -(c as f64 / n) * (c as f64 / n).log2()).sum()
    }
    let n = a.len() as f64;
    let joint = entropy(a.iter().zip(b), n);
    2.0 * joint - entropy(a.iter(), n) - entropy(b.iter(), n)
}

/// Seeded random instance with `nodes` nodes, lifted edges at hop distance
/// 2 to 3 and costs uniform in [-1, 1].
pub fn random_instance(nodes: usize, density: f64, lift_fraction: f64, seed: u64) -> LmpInstance {
    gen_random(&RandomInstanceParams {
        lift_fraction,
        ..RandomInstanceParams::new(nodes, density, seed)
    })
    .expect("valid generator parameters")
}

/// Small deterministic PRNG (splitmix64) for test-side sampling.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn labels(&mut self, n: usize, blocks: usize) -> Vec<usize> {
        (0..n).map(|_| self.below(blocks)).collect()
    }
}
