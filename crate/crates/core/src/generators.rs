//! Instance generators: pixel grids with geodesic lifting, and seeded random
//! instances for testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::{geodesic_lift, Graph, LiftingError, LiftingParams, LmpInstance, ProbabilisticGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("grid dimensions must be at least 1x1, got {width}x{height}")]
    EmptyGrid { width: usize, height: usize },
    #[error("expected {expected} pixel values for the grid, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("pixel value {0} outside [0, 1]")]
    PixelRange(f64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Lifting(#[from] LiftingError),
}

/// How the cut probability of a grid edge is derived from its two pixels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeRule {
    #[default]
    Mean,
    Max,
}

impl EdgeRule {
    fn combine(self, a: f64, b: f64) -> f64 {
        match self {
            EdgeRule::Mean => (a + b) / 2.0,
            EdgeRule::Max => a.max(b),
        }
    }
}

/// The 4-neighborhood grid graph. Pixel `(x, y)` is node `y * width + x`;
/// edges are listed per pixel in row-major order, right neighbor before
/// lower neighbor.
pub fn grid_graph(width: usize, height: usize) -> Graph {
    let mut edges = Vec::with_capacity(width * height * 2);
    for y in 0..height {
        for x in 0..width {
            let v = y * width + x;
            if x + 1 < width {
                edges.push((v, v + 1));
            }
            if y + 1 < height {
                edges.push((v, v + width));
            }
        }
    }
    Graph::new(width * height, &edges).expect("grid edges are simple")
}

/// The grid graph with per-edge cut probabilities combined from per-pixel
/// boundary values.
pub fn grid_probabilities(
    width: usize,
    height: usize,
    pixels: &[f64],
    rule: EdgeRule,
) -> Result<ProbabilisticGraph, GeneratorError> {
    if width == 0 || height == 0 {
        return Err(GeneratorError::EmptyGrid { width, height });
    }
    if pixels.len() != width * height {
        return Err(GeneratorError::Dimension {
            expected: width * height,
            actual: pixels.len(),
        });
    }
    if let Some(&p) = pixels.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(GeneratorError::PixelRange(p));
    }
    let graph = grid_graph(width, height);
    let probs = graph
        .edges()
        .iter()
        .map(|&(u, v)| rule.combine(pixels[u], pixels[v]))
        .collect();
    Ok(ProbabilisticGraph::new(graph, probs)?)
}

/// Grid instance: pixel boundary values → edge probabilities (mean rule) →
/// geodesic lifting with `params`.
pub fn gen_grid(
    width: usize,
    height: usize,
    pixels: &[f64],
    params: &LiftingParams,
) -> Result<LmpInstance, GeneratorError> {
    gen_grid_with_rule(width, height, pixels, params, EdgeRule::Mean)
}

pub fn gen_grid_with_rule(
    width: usize,
    height: usize,
    pixels: &[f64],
    params: &LiftingParams,
    rule: EdgeRule,
) -> Result<LmpInstance, GeneratorError> {
    let pg = grid_probabilities(width, height, pixels, rule)?;
    Ok(geodesic_lift(&pg, params)?)
}

/// Boundary map of two regions split by a vertical line at the middle
/// column, which carries `boundary`; all other pixels carry `interior`.
pub fn two_region_map(width: usize, height: usize, interior: f64, boundary: f64) -> Vec<f64> {
    let mid = width / 2;
    (0..width * height)
        .map(|i| if i % width == mid { boundary } else { interior })
        .collect()
}

/// Seeded synthetic boundary map: a few axis-aligned rectangles and a disc
/// whose outlines carry high values, plus uniform noise everywhere.
pub fn synthetic_boundary_map(width: usize, height: usize, noise: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = vec![0.0; width * height];
    let outline = |x: usize, y: usize, map: &mut Vec<f64>| {
        if x < width && y < height {
            map[y * width + x] = 0.9;
        }
    };
    let shapes = 4;
    for _ in 0..shapes {
        let x0 = rng.random_range(0..width.max(2) - 1);
        let y0 = rng.random_range(0..height.max(2) - 1);
        let x1 = rng.random_range(x0 + 1..width.max(x0 + 2));
        let y1 = rng.random_range(y0 + 1..height.max(y0 + 2));
        for x in x0..=x1 {
            outline(x, y0, &mut map);
            outline(x, y1, &mut map);
        }
        for y in y0..=y1 {
            outline(x0, y, &mut map);
            outline(x1, y, &mut map);
        }
    }
    let (cx, cy) = (width as f64 / 2.0, height as f64 / 2.0);
    let r = width.min(height) as f64 / 3.0;
    for y in 0..height {
        for x in 0..width {
            let d = ((x as f64 - cx).powi(2) + (y as f64 - cy).powi(2)).sqrt();
            if (d - r).abs() < 0.75 {
                outline(x, y, &mut map);
            }
        }
    }
    for p in &mut map {
        *p = (*p + rng.random_range(0.0..=noise)).min(1.0);
    }
    map
}

/// Parameters of [`gen_random`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomInstanceParams {
    pub nodes: usize,
    /// Probability of each non-tree node pair becoming a graph edge.
    pub edge_density: f64,
    /// Probability of each pair at hop distance 2 or 3 becoming a lifted
    /// edge.
    pub lift_fraction: f64,
    /// Costs are drawn uniformly from `[min, max]`.
    pub cost_range: (f64, f64),
    pub seed: u64,
}

impl RandomInstanceParams {
    pub fn new(nodes: usize, edge_density: f64, seed: u64) -> Self {
        RandomInstanceParams {
            nodes,
            edge_density,
            lift_fraction: 0.5,
            cost_range: (-1.0, 1.0),
            seed,
        }
    }
}

/// A connected random instance: a random spanning tree plus extra edges,
/// with lifted edges sampled among pairs at hop distance 2 to 3. Fully
/// determined by the parameters, including the seed.
pub fn gen_random(params: &RandomInstanceParams) -> Result<LmpInstance, GeneratorError> {
    let RandomInstanceParams {
        nodes: n,
        edge_density,
        lift_fraction,
        cost_range: (lo, hi),
        seed,
    } = *params;
    if n == 0 {
        return Err(GeneratorError::Parameter("at least one node is required".into()));
    }
    if !(edge_density > 0.0 && edge_density <= 1.0) {
        return Err(GeneratorError::Parameter(format!(
            "edge density {edge_density} outside (0, 1]"
        )));
    }
    if !(0.0..=1.0).contains(&lift_fraction) {
        return Err(GeneratorError::Parameter(format!(
            "lift fraction {lift_fraction} outside [0, 1]"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(GeneratorError::Parameter(format!("invalid cost range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacent = vec![false; n * n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        adjacent[u * n + v] = true;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adjacent[u * n + v] || rng.random_bool(edge_density) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("generated edges are simple");
    let mut lifted = Vec::new();
    if lift_fraction > 0.0 {
        for u in 0..n {
            let dist = graph.distances(u, 3).expect("node in range");
            for (v, d) in dist.iter().enumerate().skip(u + 1) {
                if matches!(d, Some(2 | 3)) && rng.random_bool(lift_fraction) {
                    lifted.push((u, v));
                }
            }
        }
    }
    let costs = (0..edges.len() + lifted.len())
        .map(|_| if lo == hi { lo } else { rng.random_range(lo..=hi) })
        .collect();
    LmpInstance::new(graph, lifted, costs).map_err(|e| GeneratorError::Parameter(e.to_string()))
}
