//! Exact bounded-budget design by branch-and-bound over labeled colorings.
//!
//! Vertices are labeled in PEO order, so the already-labeled neighbors of
//! the next vertex form a clique. Labels come from the `min(2^m, n)`
//! lightest ones; unused labels of equal weight are interchangeable, so only
//! the first unused label of each weight may open a new class.

use super::{design_greedy_chordal, prepare, Algorithm, DesignError, DesignResult, Prepared};
use crate::graph::Graph;
use crate::sepsys::{label_pool, Design, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    /// Search nodes to visit before giving up with the best design so far.
    pub node_budget: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            node_budget: 50_000_000,
        }
    }
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    g: &'a Graph,
    order: &'a [usize],
    b: Vec<f64>,
    label: Vec<usize>,
    uses: Vec<usize>,
    best_cost: f64,
    best: Option<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Cheapest label weight `v` could still take given its labeled neighbors.
    fn lightest_feasible(&self, v: usize) -> f64 {
        (0..self.b.len())
            .find(|&k| self.g.neighbors(v).iter().all(|&u| self.label[u] != k))
            .map_or(f64::INFINITY, |k| self.b[k])
    }

    fn bound(&self, depth: usize) -> f64 {
        self.order[depth..]
            .iter()
            .map(|&v| self.g.weight(v) * self.lightest_feasible(v))
            .sum()
    }

    /// Returns false once the node budget is exhausted.
    fn dfs(&mut self, depth: usize, cost: f64) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if depth == self.order.len() {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = Some(self.label.clone());
            }
            return true;
        }
        if cost + self.bound(depth) >= self.best_cost {
            return true;
        }
        let v = self.order[depth];
        let w = self.g.weight(v);
        for k in 0..self.b.len() {
            if self.g.neighbors(v).iter().any(|&u| self.label[u] == k) {
                continue;
            }
            if self.uses[k] == 0 && k > 0 && self.b[k - 1] == self.b[k] && self.uses[k - 1] == 0 {
                continue;
            }
            let next = cost + w * self.b[k];
            if next >= self.best_cost {
                // Labels come in nondecreasing weight.
                break;
            }
            self.label[v] = k;
            self.uses[k] += 1;
            let ok = self.dfs(depth + 1, next);
            self.uses[k] -= 1;
            self.label[v] = UNSET;
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Minimum-cost separating design with at most `m` interventions.
///
/// The greedy design seeds the incumbent. When the node budget runs out the
/// best design found so far is returned inside
/// [`DesignError::BudgetExceeded`].
pub fn design_exact(g: &Graph, m: usize, limits: ExactLimits) -> Result<DesignResult, DesignError> {
    let Prepared { peo, .. } = prepare(g, Some(m))?;
    let greedy = design_greedy_chordal(g, m)?;
    let pool = label_pool(m, g.n());
    let labels = pool.labels();

    let mut search = Search {
        g,
        order: peo.order(),
        b: pool.b().into_iter().map(|x| x as f64).collect(),
        label: vec![UNSET; g.n()],
        uses: vec![0; labels.len()],
        best_cost: greedy.total_cost,
        best: None,
        nodes: 0,
        budget: limits.node_budget,
    };
    let complete = search.dfs(0, 0.0);
    let nodes = search.nodes;

    let result = match search.best {
        Some(assignment) => {
            let rows: Vec<Label> = assignment.iter().map(|&k| labels[k].clone()).collect();
            let design = Design::from_rows(m, rows).expect("pool labels have length m");
            DesignResult::finish(g, design, Algorithm::Exact, Vec::new(), Vec::new())
        }
        None => DesignResult {
            algorithm: Algorithm::Exact,
            steps: Vec::new(),
            ..greedy
        },
    };
    let mut result = result;
    result.notes.push(format!("{nodes} search nodes"));
    if complete {
        Ok(result)
    } else {
        result.notes.push("node budget exhausted; not proven optimal".into());
        Err(DesignError::BudgetExceeded {
            nodes,
            best: Box::new(result),
        })
    }
}
