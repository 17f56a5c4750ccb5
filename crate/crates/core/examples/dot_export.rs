//! Graphviz output with edges colored by trail kind.
//!
//! `cargo run --example dot_export | dot -Tsvg > fix_b.svg`

use phylo_zigzag::{decompose, export_dot, fixtures};

fn main() {
    let n = fixtures::fix_b();
    print!("{}", export_dot(&n, Some(&decompose(&n))));
}
