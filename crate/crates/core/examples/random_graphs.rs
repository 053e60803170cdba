//! Samples random chordal graphs and summarizes their size and chromatic
//! number for a few sparsity settings.
//!
//! cargo run --example random_graphs -- [n] [samples]

use intervention_design::chordal::{chromatic_number_chordal, maximum_cardinality_search};
use intervention_design::randgen::{meta, sample_chordal, CostDist, GenConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(20, |s| s.parse().expect("n"));
    let samples: u64 = args.next().map_or(1000, |s| s.parse().expect("samples"));

    for d in [1.0, 2.0, 3.0, 5.0] {
        let mut edges = 0;
        let mut chi_hist = vec![0u64; n + 1];
        for seed in 0..samples {
            let g = sample_chordal(&GenConfig::new(n, d, seed)).unwrap();
            let peo = maximum_cardinality_search(&g).expect("generator output is chordal");
            chi_hist[chromatic_number_chordal(&g, &peo).unwrap()] += 1;
            edges += g.num_edges();
        }
        let spread: Vec<String> = chi_hist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(chi, c)| format!("{chi}:{c}"))
            .collect();
        println!(
            "d = {d}: mean edges {:.1}, chromatic number counts {}",
            edges as f64 / samples as f64,
            spread.join(" ")
        );
    }

    let mut cfg = GenConfig::new(6, 2.0, 42);
    cfg.cost_dist = CostDist::ExpMean1;
    let g = sample_chordal(&cfg).unwrap();
    println!("\nexample graph: {:?}", g.edges());
    let costs: Vec<String> = g.weights().iter().map(|w| format!("{w:.3}")).collect();
    println!("costs: {}", costs.join(" "));
    println!("meta: {}", meta(&cfg));
}
