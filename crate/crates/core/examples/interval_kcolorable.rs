//! Heaviest set of jobs that fits on k machines: the maximum-weight
//! k-colorable subgraph of an interval graph.

use intervention_design::chordal::max_weight_k_colorable_interval;
use intervention_design::graph::{Graph, Interval};

fn main() {
    let jobs = [(0.0, 3.0), (1.0, 4.0), (2.0, 6.0), (3.5, 5.0), (5.5, 8.0), (6.0, 7.0)];
    let weights = vec![4.0, 2.0, 5.0, 1.0, 3.0, 2.5];
    let g = Graph::from_intervals(jobs.iter().map(|&(a, b)| Interval::new(a, b)).collect(), Some(weights)).unwrap();
    println!("{} jobs, {} overlapping pairs", g.n(), g.num_edges());

    for k in 1..=3 {
        let picked = max_weight_k_colorable_interval(&g, k).unwrap();
        let machines: Vec<String> = picked.classes.iter().map(|c| c.to_string()).collect();
        println!(
            "k = {k}: weight {:>4}, machines {}",
            g.weight_of(&picked.vertices),
            machines.join(" ")
        );
    }
}
