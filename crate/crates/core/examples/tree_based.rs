//! Tree-basedness and a spanning subdivision tree.

use phylo_zigzag::{decompose, fixtures, subdivision_tree};

fn main() {
    for (name, n) in [("fix_tree", fixtures::fix_tree()), ("fix_c", fixtures::fix_c()), ("fix_a", fixtures::fix_a())] {
        let d = decompose(&n);
        print!("{name}: δ* = {}", d.delta_star());
        match subdivision_tree(&n, &d) {
            Ok(t) => println!(", tree-based; subdivision tree has {} edges over {} vertices", t.edges().len(), n.vertex_count()),
            Err(e) => println!(", not tree-based ({e})"),
        }
    }
}
