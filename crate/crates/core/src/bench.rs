//! Benchmark harness: average normalized design cost over random chordal
//! graphs, one row per intervention budget `m`.
//!
//! Each trial draws one graph (with costs) and runs the designer for every
//! `m` in the range, so budgets are compared on common graphs. A graph that
//! needs more interventions than the smallest `m` is redrawn up to
//! `max_resample` times; if it still does not fit, the infeasible `(trial, m)`
//! cells are skipped and counted. Trials run in parallel; aggregation runs in
//! trial order, so output is identical across runs.

use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chordal::{chromatic_number_chordal, maximum_cardinality_search};
use crate::designer::{
    ceil_log2, design_exact, design_greedy_chordal, design_greedy_interval, design_unbounded_optimal, Algorithm,
    DesignError, ExactLimits,
};
use crate::graph::Graph;
use crate::randgen::{sample_chordal, CostDist, GenConfig, GenError};
use crate::sepsys::verify_graph_separating;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("trial {trial}, m = {m}: {source}")]
    Design {
        trial: usize,
        m: usize,
        source: DesignError,
    },
    #[error("trial {trial}, m = {m}: design does not separate the graph")]
    NotSeparating { trial: usize, m: usize },
    #[error("trial {trial}, m = {m}: cost {cost} is below the unbounded optimum {optimum}")]
    BelowOptimum {
        trial: usize,
        m: usize,
        cost: f64,
        optimum: f64,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub n: usize,
    pub d: f64,
    pub m_range: RangeInclusive<usize>,
    pub trials: usize,
    pub dist: CostDist,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub max_resample: usize,
    pub exact_limits: ExactLimits,
}

impl BenchConfig {
    pub fn new(n: usize, d: f64, m_range: RangeInclusive<usize>, trials: usize) -> Self {
        BenchConfig {
            n,
            d,
            m_range,
            trials,
            dist: CostDist::ExpMean1,
            seed: 0,
            algorithm: Algorithm::Greedy,
            max_resample: 100,
            exact_limits: ExactLimits::default(),
        }
    }

    fn validate(&self) -> Result<(), BenchError> {
        if self.trials == 0 {
            return Err(BenchError::Config("trials must be at least 1".into()));
        }
        if self.m_range.is_empty() {
            return Err(BenchError::Config("empty intervention range".into()));
        }
        Ok(())
    }
}

/// One CSV row; field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: f64,
    pub dist: CostDist,
    pub m: usize,
    pub trials: usize,
    pub mean_normalized_cost: f64,
    pub std_error: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchDiagnostics {
    /// Graphs redrawn because they needed more than the smallest budget.
    pub resampled: usize,
    /// Per `m`: trials skipped because the graph needed more interventions.
    pub skipped: Vec<(usize, usize)>,
    /// Per `m`: feasible trials whose cost equals the unbounded optimum.
    pub at_unbounded_optimum: Vec<(usize, usize)>,
    /// Per `m`: feasible trials with `m ≥ χ`.
    pub budget_at_least_chi: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// `trial_costs[i][t]`: normalized cost for the `i`-th `m` of the range
    /// in trial `t`, `None` when skipped.
    pub trial_costs: Vec<Vec<Option<f64>>>,
    /// Normalized unbounded optimum per trial.
    pub trial_optimum: Vec<f64>,
    pub diagnostics: BenchDiagnostics,
}

struct Trial {
    resamples: usize,
    optimum: f64,
    chi: usize,
    costs: Vec<Option<f64>>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of the graph drawn for `trial` on its `attempt`-th try.
pub fn trial_seed(seed: u64, trial: usize, attempt: usize) -> u64 {
    splitmix64(seed ^ splitmix64(((trial as u64) << 20) ^ attempt as u64))
}

fn tolerance(g: &Graph) -> f64 {
    1e-9 * g.total_weight().max(1.0)
}

fn run_trial<F>(cfg: &BenchConfig, trial: usize, source: &F) -> Result<Trial, BenchError>
where
    F: Fn(usize, usize) -> Result<Graph, BenchError>,
{
    let m_min = *cfg.m_range.start();
    let mut attempt = 0;
    let (graph, chi) = loop {
        let graph = source(trial, attempt)?;
        let peo = maximum_cardinality_search(&graph).map_err(|e| BenchError::Design {
            trial,
            m: m_min,
            source: e.into(),
        })?;
        let chi = chromatic_number_chordal(&graph, &peo).expect("PEO from the same graph");
        if ceil_log2(chi) <= m_min || attempt >= cfg.max_resample {
            break (graph, chi);
        }
        attempt += 1;
    };
    let n = graph.n().max(1) as f64;
    let optimum = design_unbounded_optimal(&graph)
        .map_err(|source| BenchError::Design { trial, m: 0, source })?
        .total_cost;

    let mut costs = Vec::new();
    for m in cfg.m_range.clone() {
        if ceil_log2(chi) > m {
            costs.push(None);
            continue;
        }
        let result = match cfg.algorithm {
            Algorithm::Greedy => design_greedy_chordal(&graph, m),
            Algorithm::GreedyInterval => design_greedy_interval(&graph, m),
            Algorithm::Exact => design_exact(&graph, m, cfg.exact_limits),
            Algorithm::Unbounded => design_unbounded_optimal(&graph),
        }
        .map_err(|source| BenchError::Design { trial, m, source })?;
        if !verify_graph_separating(&graph, &result.design).is_separating() {
            return Err(BenchError::NotSeparating { trial, m });
        }
        let cost = result.total_cost;
        let exact_at_chi = cfg.algorithm == Algorithm::Exact && m >= chi;
        if cost < optimum - tolerance(&graph) || (exact_at_chi && cost > optimum + tolerance(&graph)) {
            return Err(BenchError::BelowOptimum {
                trial,
                m,
                cost,
                optimum,
            });
        }
        costs.push(Some(cost / n));
    }
    Ok(Trial {
        resamples: attempt,
        optimum: optimum / n,
        chi,
        costs,
    })
}

/// Compensated sum, in iteration order.
fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in values {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Benchmark on random chordal graphs drawn from `cfg`.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.algorithm == Algorithm::GreedyInterval {
        return Err(BenchError::Config(
            "random chordal graphs carry no interval representation".into(),
        ));
    }
    run_benchmark_on(cfg, |trial, attempt| {
        let gen = GenConfig {
            n: cfg.n,
            d: cfg.d,
            seed: trial_seed(cfg.seed, trial, attempt),
            cost_dist: cfg.dist,
            always_add_parent: false,
        };
        Ok(sample_chordal(&gen)?)
    })
}

/// Benchmark on graphs from `source(trial, attempt)`. `cfg.n`, `cfg.d` and
/// `cfg.dist` are only copied into the rows.
pub fn run_benchmark_on<F>(cfg: &BenchConfig, source: F) -> Result<BenchReport, BenchError>
where
    F: Fn(usize, usize) -> Result<Graph, BenchError> + Sync,
{
    cfg.validate()?;
    let trials: Vec<Trial> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t, &source))
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    let mut diagnostics = BenchDiagnostics {
        resampled: trials.iter().map(|t| t.resamples).sum(),
        ..Default::default()
    };
    let mut trial_costs = Vec::new();
    for (i, m) in cfg.m_range.clone().enumerate() {
        let column: Vec<Option<f64>> = trials.iter().map(|t| t.costs[i]).collect();
        let values: Vec<f64> = column.iter().flatten().copied().collect();
        diagnostics.skipped.push((m, cfg.trials - values.len()));
        let at_opt = trials
            .iter()
            .filter(|t| t.costs[i].is_some_and(|c| (c - t.optimum).abs() <= 1e-9 * t.optimum.max(1.0)))
            .count();
        diagnostics.at_unbounded_optimum.push((m, at_opt));
        diagnostics
            .budget_at_least_chi
            .push((m, trials.iter().filter(|t| t.costs[i].is_some() && m >= t.chi).count()));
        trial_costs.push(column);

        if values.is_empty() {
            continue;
        }
        let k = values.len() as f64;
        let mean = kahan_sum(values.iter().copied()) / k;
        let std_error = if values.len() > 1 {
            let var = kahan_sum(values.iter().map(|x| (x - mean) * (x - mean))) / (k - 1.0);
            (var / k).sqrt()
        } else {
            0.0
        };
        rows.push(BenchRow {
            algorithm: cfg.algorithm,
            n: cfg.n,
            d: cfg.d,
            dist: cfg.dist,
            m,
            trials: values.len(),
            mean_normalized_cost: mean,
            std_error,
            seed: cfg.seed,
        });
    }
    Ok(BenchReport {
        rows,
        trial_costs,
        trial_optimum: trials.iter().map(|t| t.optimum).collect(),
        diagnostics,
    })
}

/// Writes rows as CSV with the header
/// `algorithm,n,d,dist,m,trials,mean_normalized_cost,std_error,seed`.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record([
            "algorithm",
            "n",
            "d",
            "dist",
            "m",
            "trials",
            "mean_normalized_cost",
            "std_error",
            "seed",
        ])?;
    }
    w.flush()?;
    Ok(())
}
