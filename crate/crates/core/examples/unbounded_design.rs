//! Cheapest design when the number of interventions is not limited: never
//! intervene on a maximum-weight independent set, and intervene once on
//! every other color class.

use intervention_design::designer::design_unbounded_optimal;
use intervention_design::graph::Graph;
use intervention_design::randgen::{sample_chordal, CostDist, GenConfig};

fn main() {
    let k3 = Graph::complete(3).with_weights(vec![3.0, 2.0, 1.0]).unwrap();
    let r = design_unbounded_optimal(&k3).unwrap();
    let sets: Vec<String> = r.design.interventions().iter().map(|s| s.to_string()).collect();
    println!("triangle: cost {}, interventions {}", r.total_cost, sets.join(" "));

    let mut cfg = GenConfig::new(30, 2.0, 11);
    cfg.cost_dist = CostDist::ExpMean1;
    let g = sample_chordal(&cfg).unwrap();
    let r = design_unbounded_optimal(&g).unwrap();
    println!(
        "random chordal graph, n = {}, {} edges: {} interventions, cost {:.3} of total {:.3}",
        g.n(),
        g.num_edges(),
        r.design.m(),
        r.total_cost,
        g.total_weight()
    );
    for step in &r.steps {
        println!("  {} -> {}", step.label, step.chosen);
    }
}
