//! Decomposition + fast path on growing networks, ns per edge.
//!
//! `cargo run --release --example bench`

use phylo_zigzag::bench::run_bench;

fn main() {
    let report = run_bench(&[10_000, 100_000, 1_000_000], 0, 3).expect("generator");
    for r in &report.rows {
        println!("{:>9} edges  {:>8.4}s  {:>6.1} ns/edge", r.edges, r.seconds, r.ns_per_edge);
    }
    if let Some(f) = report.fit {
        println!("fitted endpoint ratio {:.2}", f.endpoint_ratio);
    }
}
