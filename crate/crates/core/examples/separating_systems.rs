//! Designs as 0-1 matrices: label pools, conversion to and from colorings,
//! separation checks and cost.

use intervention_design::chordal::Coloring;
use intervention_design::graph::{Graph, VertexSet};
use intervention_design::sepsys::{
    coloring_to_design, cost_breakdown, design_to_coloring, label_pool, verify_graph_separating, Design,
};

fn sets(s: &[VertexSet]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() {
    for (m, n) in [(2, 4), (3, 4), (3, 10)] {
        let pool = label_pool(m, n);
        let labels: Vec<String> = pool.labels().iter().map(|l| l.to_string()).collect();
        println!("m = {m}, n = {n}: {} with weights {:?}", labels.join(" "), pool.b());
    }

    let k3 = Graph::complete(3).with_weights(vec![3.0, 2.0, 1.0]).unwrap();
    let design = Design::from_interventions(3, vec![VertexSet::from([1]), VertexSet::from([2])]).unwrap();
    let rows: Vec<String> = design.rows().iter().map(|r| r.to_string()).collect();
    println!("\ntriangle, interventions {{1}}, {{2}}: rows {}", rows.join(" "));
    println!("separating: {}", verify_graph_separating(&k3, &design).is_separating());
    let cost = cost_breakdown(&design, k3.weights());
    println!(
        "cost by rows {}, by interventions {}",
        cost.by_rows, cost.by_interventions
    );
    println!(
        "coloring: {}",
        sets(&design_to_coloring(&k3, &design).unwrap().classes())
    );

    let path = Graph::path(3);
    let coloring = Coloring::from_classes(&[0, 1, 0]);
    let pool = label_pool(1, 3);
    let d = coloring_to_design(&coloring, pool.labels(), 1).unwrap();
    println!(
        "\npath coloring {{0,2}} {{1}} -> interventions {}",
        sets(d.interventions())
    );

    let full = Design::from_interventions(3, vec![VertexSet::from([0, 1, 2])]).unwrap();
    println!(
        "intervening on everything leaves {:?} unseparated",
        verify_graph_separating(&path, &full).unseparated
    );
}
