//! Chordality test, perfect elimination ordering, optimal coloring and the
//! maximum-weight independent set on a small chordal graph.

use intervention_design::chordal::{
    chromatic_number_chordal, greedy_color_chordal, max_weight_independent_set_frank, maximum_cardinality_search,
    ChordalError,
};
use intervention_design::graph::Graph;

fn main() {
    // Two triangles sharing the edge 1-2, plus a pendant vertex on 3.
    let g = Graph::build(
        5,
        &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)],
        Some(vec![2.0, 1.0, 1.5, 3.0, 1.0]),
        None,
    )
    .unwrap();

    let peo = maximum_cardinality_search(&g).unwrap();
    println!("PEO (earlier neighbors form a clique): {:?}", peo.order());
    println!("chromatic number: {}", chromatic_number_chordal(&g, &peo).unwrap());

    let coloring = greedy_color_chordal(&g, &peo).unwrap();
    for (c, class) in coloring.classes().iter().enumerate() {
        println!("  color {c}: {class}");
    }

    let mwis = max_weight_independent_set_frank(&g, &peo).unwrap();
    println!("max-weight independent set {mwis}, weight {}", g.weight_of(&mwis));

    match maximum_cardinality_search(&Graph::cycle(5)) {
        Err(ChordalError::NotChordal { cycle, .. }) => println!("C5 is not chordal; chordless cycle {cycle:?}"),
        other => println!("unexpected: {other:?}"),
    }
}
