//! Random chordal skeletons and random intervention costs.
//!
//! Graphs are grown along a random permutation that becomes a perfect
//! elimination ordering: the vertex at 1-based position `i` picks each
//! earlier vertex as a parent with probability `min(1, (d/i)^(2/3))`, falling
//! back to one uniformly chosen parent if none was picked. Parent sets are
//! then closed into cliques by elimination fill-in, last vertex first, so the
//! permutation is a PEO of the result.
//!
//! Randomness comes from ChaCha8 seeded with the configured seed. Stream 0
//! draws the permutation; stream `i + 1` draws the parents of the vertex at
//! position `i`, so every vertex's choices are independent of the others.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub const GENERATOR_NAME: &str = "chacha8";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("need at least one vertex")]
    NoVertices,
    #[error("sparsity parameter must be positive and finite, got {0}")]
    BadSparsity(f64),
    #[error("unknown cost distribution {0:?} (expected exp_mean1, uniform_0_2 or ones)")]
    UnknownDist(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CostDist {
    /// Exponential with mean 1.
    #[serde(rename = "exp_mean1")]
    ExpMean1,
    /// Uniform on `[0, 2]`.
    #[serde(rename = "uniform_0_2")]
    Uniform02,
    #[serde(rename = "ones")]
    Ones,
}

impl fmt::Display for CostDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CostDist::ExpMean1 => "exp_mean1",
            CostDist::Uniform02 => "uniform_0_2",
            CostDist::Ones => "ones",
        })
    }
}

impl FromStr for CostDist {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exp_mean1" | "exp" => Ok(CostDist::ExpMean1),
            "uniform_0_2" | "uniform" => Ok(CostDist::Uniform02),
            "ones" => Ok(CostDist::Ones),
            _ => Err(GenError::UnknownDist(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    /// Sparsity parameter; larger means denser.
    pub d: f64,
    pub seed: u64,
    pub cost_dist: CostDist,
    /// Always add one extra uniformly chosen parent, not only when the
    /// independent draws picked none.
    #[serde(default)]
    pub always_add_parent: bool,
}

impl GenConfig {
    pub fn new(n: usize, d: f64, seed: u64) -> Self {
        GenConfig {
            n,
            d,
            seed,
            cost_dist: CostDist::Ones,
            always_add_parent: false,
        }
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::NoVertices);
        }
        if !(self.d.is_finite() && self.d > 0.0) {
            return Err(GenError::BadSparsity(self.d));
        }
        Ok(())
    }
}

/// Probability that the vertex at 1-based position `i` links to a given
/// earlier vertex. Clamped to 1 when `d ≥ i`.
pub fn edge_probability(d: f64, i: usize) -> f64 {
    (d / i as f64).powf(2.0 / 3.0).min(1.0)
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// A sampled graph together with the permutation it was grown along.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    pub graph: Graph,
    /// A perfect elimination ordering of `graph`.
    pub order: Vec<usize>,
}

/// Random connected chordal graph. Weights are drawn from `cfg.cost_dist`
/// with [`sample_costs`] under the same seed.
pub fn sample_chordal(cfg: &GenConfig) -> Result<Graph, GenError> {
    sample_chordal_with_order(cfg).map(|s| s.graph)
}

pub fn sample_chordal_with_order(cfg: &GenConfig) -> Result<SampledGraph, GenError> {
    cfg.validate()?;
    let n = cfg.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut stream(cfg.seed, 0));

    // Bitset rows over positions, not vertex ids.
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    let link = |adj: &mut [Vec<u64>], a: usize, b: usize| {
        adj[a][b / 64] |= 1 << (b % 64);
        adj[b][a / 64] |= 1 << (a % 64);
    };
    for pos in 1..n {
        let mut rng = stream(cfg.seed, pos as u64 + 1);
        let p = edge_probability(cfg.d, pos + 1);
        let mut picked = false;
        for earlier in 0..pos {
            if rng.random_bool(p) {
                link(&mut adj, pos, earlier);
                picked = true;
            }
        }
        if !picked || cfg.always_add_parent {
            let earlier: Vec<usize> = (0..pos).collect();
            let &q = earlier.choose(&mut rng).expect("pos >= 1");
            link(&mut adj, pos, q);
        }
    }
    // Elimination fill-in: make each vertex's earlier neighbors a clique,
    // latest vertex first. Fill edges only touch strictly earlier positions.
    for pos in (0..n).rev() {
        let earlier: Vec<u64> = (0..words).map(|w| adj[pos][w] & below(pos, w)).collect();
        for a in ones(&earlier) {
            for (w, bits) in earlier.iter().enumerate() {
                adj[a][w] |= bits & !(u64::from(w == a / 64) << (a % 64));
            }
        }
    }

    let mut edges = Vec::new();
    for (a, row) in adj.iter().enumerate() {
        for b in ones(row).filter(|&b| b > a) {
            edges.push((order[a], order[b]));
        }
    }
    let weights = sample_costs(n, cfg.cost_dist, cfg.seed);
    let graph = Graph::build(n, &edges, Some(weights), None).expect("generated graph is valid");
    Ok(SampledGraph { graph, order })
}

/// Mask of positions `< pos` within word `w`.
fn below(pos: usize, w: usize) -> u64 {
    match (pos / 64).cmp(&w) {
        std::cmp::Ordering::Greater => u64::MAX,
        std::cmp::Ordering::Equal => (1u64 << (pos % 64)) - 1,
        std::cmp::Ordering::Less => 0,
    }
}

fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &bits)| {
        let mut bits = bits;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                w * 64 + b
            })
        })
    })
}

/// `n` i.i.d. costs, deterministic in `seed`. Both random distributions
/// have mean 1.
pub fn sample_costs(n: usize, dist: CostDist, seed: u64) -> Vec<f64> {
    // Streams below u64::MAX belong to the graph sampler.
    let mut rng = stream(seed, u64::MAX);
    (0..n)
        .map(|_| match dist {
            CostDist::ExpMean1 => Exp1.sample(&mut rng),
            CostDist::Uniform02 => rng.random_range(0.0..=2.0),
            CostDist::Ones => 1.0,
        })
        .collect()
}

/// JSON metadata block describing how a graph was generated.
pub fn meta(cfg: &GenConfig) -> serde_json::Value {
    serde_json::json!({
        "n": cfg.n,
        "d": cfg.d,
        "seed": cfg.seed,
        "dist": cfg.cost_dist.to_string(),
        "always_add_parent": cfg.always_add_parent,
        "generator": GENERATOR_NAME,
        "probability_clamped": cfg.d >= 2.0,
    })
}
