//! Walk probabilities against the global-mixing threshold.
//!
//! Propagates a one-hot distribution from one karate-club edge for 16 steps
//! and prints every edge's probability relative to the stable value
//! `1/m`: the edges of the seed's own community float above the line, the
//! rest sink below it. This is the separation that the extraction step
//! thresholds on.
//!
//! ```bash
//! cargo run -p uelc --example alpha_trace
//! ```

use std::io::Cursor;

use uelc::graph::load_edge_list;
use uelc::linkdyn::{build_transition, propagate, unit_distribution};

fn main() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/karate.txt"
    ))
    .expect("bundled dataset");
    let loaded = load_edge_list(Cursor::new(text)).expect("valid edge list");
    let g = &loaded.graph;

    let seed = g
        .edge_between(
            loaded.labels.id("1").unwrap(),
            loaded.labels.id("2").unwrap(),
        )
        .expect("edge 1-2 exists");
    let t = build_transition(g);
    let alpha = propagate(&t, &unit_distribution(g.edge_count(), seed).unwrap(), 16)
        .expect("dimensions match");

    let eps = 1.0 / g.edge_count() as f64;
    println!("seed edge 1-2, l = 16, epsilon = 1/m = {eps:.6}");
    println!("{:>8} {:>12} side", "edge", "alpha");
    let mut above = 0;
    for (e, &p) in alpha.probs().iter().enumerate() {
        let (u, v) = g.endpoints(e);
        let side = if p >= eps { "above" } else { "below" };
        if p >= eps {
            above += 1;
        }
        println!(
            "{:>8} {:>12.6} {side}",
            format!("{}-{}", loaded.labels.label(u), loaded.labels.label(v)),
            p / eps
        );
    }
    println!(
        "{above} of {} edges at or above the threshold (values shown as multiples of epsilon)",
        g.edge_count()
    );
}
