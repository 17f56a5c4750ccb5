//! Exhaustive η* for small networks, with a per-level search log.

use phylo_zigzag::oracle::search_trace;
use phylo_zigzag::{eta_exact, fixtures};

fn main() {
    let n = fixtures::fix_b();
    let trace = search_trace(&n, None).expect("small network");
    for level in &trace.levels {
        println!("k = {}: {} nodes, witness {:?}", level.k, level.explored, level.witness);
    }
    let r = &trace.result;
    println!("η* = {}; uncovered {:?}; {} nodes in total", r.eta, r.witness.uncovered_names(&n), r.explored);

    let capped = eta_exact(&n, Some(5));
    println!("with a budget of 5 nodes: {}", capped.map_or_else(|e| e.to_string(), |r| r.eta.to_string()));
}
