//! Seeded random networks: same seed, same network.
//!
//! `cargo run --example generate [seed]`

use phylo_zigzag::{decompose, eta_fast, random_network, to_phn, GenParams};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let params = GenParams::new(6, 4, seed).with_probabilities(0.1, 0.3);
    let n = random_network(&params).expect("generator");
    assert_eq!(to_phn(&n), to_phn(&random_network(&params).unwrap()));
    print!("{}", to_phn(&n));
    let c = decompose(&n).counts();
    println!(
        "# {} vertices, {} edges; W-fences {}; fast η* {:?}",
        n.vertex_count(),
        n.edge_count(),
        c.w_fence,
        eta_fast(&n).eta()
    );
}
