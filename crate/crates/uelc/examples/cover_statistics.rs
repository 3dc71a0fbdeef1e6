//! The four cover statistics as cumulative distributions.
//!
//! After detecting link communities on the Les Miserables network, derives
//! the node cover and prints P(X >= x) for community size, pairwise overlap
//! size, per-node membership number, and community degree; the same data the
//! CLI exports as CSV with `detect-links --cover-stats`.
//!
//! ```bash
//! cargo run -p uelc --example cover_statistics
//! ```

use std::io::Cursor;

use uelc::bench::{cover_statistics, cumulative_ge};
use uelc::graph::load_edge_list;
use uelc::partition::{node_cover_from_links, uelc, DetectorConfig};
use uelc::spectral::StepPolicy;

fn main() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/lesmis.txt"
    ))
    .expect("bundled dataset");
    let loaded = load_edge_list(Cursor::new(text)).expect("valid edge list");

    let cfg = DetectorConfig {
        step_policy: StepPolicy::spectral(100),
        rng_seed: 1,
        seed_trials: 2,
        min_edges_leaf: 2,
    };
    let partition = uelc(&loaded.graph, &cfg);
    let cover = node_cover_from_links(&loaded.graph, &partition);
    let stats = cover_statistics(&cover, &partition);

    println!(
        "{} link communities over {} characters",
        partition.community_count(),
        loaded.graph.node_count()
    );
    for (name, values) in [
        ("community size", &stats.community_sizes),
        ("overlap size", &stats.overlap_sizes),
        ("membership number", &stats.membership_numbers),
        ("community degree", &stats.community_degrees),
    ] {
        println!("{name}: P(X >= x)");
        if values.is_empty() {
            println!("  (no observations)");
            continue;
        }
        for (value, prob) in cumulative_ge(values) {
            println!("  x = {value:>3}: {prob:.3}");
        }
    }
}
