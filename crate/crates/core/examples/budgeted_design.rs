//! Designs with at most m interventions: greedy, greedy on intervals, and
//! exact branch-and-bound, compared across budgets.

use intervention_design::designer::{
    design_exact, design_greedy_chordal, design_greedy_interval, design_unbounded_optimal, min_separating_size,
    DesignError, ExactLimits,
};
use intervention_design::graph::{Graph, Interval};
use intervention_design::randgen::{sample_chordal, CostDist, GenConfig};

fn main() {
    let mut cfg = GenConfig::new(12, 1.0, 3);
    cfg.cost_dist = CostDist::ExpMean1;
    let g = sample_chordal(&cfg).unwrap();
    let m0 = min_separating_size(&g).unwrap();
    let floor = design_unbounded_optimal(&g).unwrap().total_cost;
    println!(
        "n = {}, {} edges, needs m >= {m0}; unbounded optimum {floor:.4}",
        g.n(),
        g.num_edges()
    );
    println!("{:>3} {:>10} {:>10}", "m", "greedy", "exact");
    for m in m0..m0 + 5 {
        let greedy = design_greedy_chordal(&g, m).unwrap();
        let exact = design_exact(&g, m, ExactLimits::default()).unwrap();
        println!("{m:>3} {:>10.4} {:>10.4}", greedy.total_cost, exact.total_cost);
    }

    let intervals = [
        (0.0, 2.0),
        (1.0, 3.0),
        (2.5, 4.0),
        (0.5, 1.5),
        (3.0, 5.0),
        (4.5, 6.0),
        (1.2, 2.8),
    ];
    let weights = vec![1.0, 2.0, 0.5, 3.0, 1.5, 1.0, 0.25];
    let iv = Graph::from_intervals(
        intervals.iter().map(|&(a, b)| Interval::new(a, b)).collect(),
        Some(weights),
    )
    .unwrap();
    let m = min_separating_size(&iv).unwrap();
    let r = design_greedy_interval(&iv, m).unwrap();
    println!("\ninterval graph, m = {m}: greedy cost {}", r.total_cost);
    for step in &r.steps {
        println!("  {} -> {}", step.label, step.chosen);
    }

    match design_greedy_chordal(&Graph::complete(3), 1) {
        Err(e @ DesignError::InsufficientInterventions { .. }) => println!("\ntriangle with m = 1: {e}"),
        other => println!("unexpected: {other:?}"),
    }

    match design_exact(&Graph::complete(9), 4, ExactLimits { node_budget: 100 }) {
        Err(DesignError::BudgetExceeded { nodes, best }) => {
            println!(
                "K9, tiny node budget: stopped after {nodes} nodes with cost {}",
                best.total_cost
            )
        }
        other => println!("K9 solved: {:?}", other.map(|r| r.total_cost)),
    }
}
