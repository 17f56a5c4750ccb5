//! Maximal zig-zag trails of a small network.
//!
//! `cargo run --example decompose [file.phn]`

use phylo_zigzag::{decompose, fixtures, parse_phn};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => fixtures::FIX_B.to_owned(),
    };
    let n = parse_phn(&text).expect("valid network");
    let d = decompose(&n);
    for (i, t) in d.trails().enumerate() {
        let edges: Vec<String> = t
            .edges()
            .iter()
            .map(|&e| {
                let (a, b) = n.edge_names(e);
                format!("{a}->{b}")
            })
            .collect();
        println!("#{i} {:<8} {}", t.kind().as_str(), edges.join(" "));
    }
    let c = d.counts();
    println!(
        "{} crowns, {} M, {} N, {} W; n_m - n_w = {} = |X| - 1",
        c.crown,
        c.m_fence,
        c.n_fence,
        c.w_fence,
        c.m_fence as isize - c.w_fence as isize
    );
}
