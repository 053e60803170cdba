//! Writes the labeled-coloring integer program for an external MILP solver.
//!
//! cargo run --example export_ilp -- [m] > model.lp

use intervention_design::designer::{export_ilp, IlpModel};
use intervention_design::graph::Graph;

fn main() {
    let m: usize = std::env::args().nth(1).map_or(2, |s| s.parse().expect("m"));
    let g = Graph::path(4).with_weights(vec![1.0, 2.0, 2.0, 1.0]).unwrap();
    let model = IlpModel::new(&g, m);
    eprintln!(
        "{} variables, {} assignment rows, {} edge rows",
        model.num_variables(),
        model.num_assignment_constraints(),
        model.num_edge_constraints()
    );
    print!("{}", export_ilp(&g, m));
}
