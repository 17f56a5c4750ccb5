//! Removing a vertex shared by an M-fence and a W-fence, once per degree
//! pattern of that vertex.

use phylo_zigzag::{decompose, fixtures, mw_pair_graph, parse_phn, resolve, to_phn};

fn main() {
    for (name, text) in [
        ("tree vertex", fixtures::RESOLVE_TREE_VERTEX),
        ("reticulation", fixtures::RESOLVE_RETICULATION),
        ("pass-through", fixtures::RESOLVE_PASS_THROUGH),
        ("(2,2) vertex", fixtures::RESOLVE_DOUBLE),
    ] {
        let n = parse_phn(text).unwrap();
        let d = decompose(&n);
        let g = mw_pair_graph(&n, &d);
        let pair = &g.adjacency[0];
        let v = pair.witnesses[0];
        let r = resolve(&n, &d, pair.m_trail, pair.w_trail, v).expect("resolvable");
        let (before, after) = (d.counts(), r.decomposition.counts());
        println!(
            "{name}: remove `{}` {:?}: M {} -> {}, W {} -> {}",
            n.name(v),
            n.degree_pair(v),
            before.m_fence,
            after.m_fence,
            before.w_fence,
            after.w_fence
        );
        print!("{}", to_phn(&r.network));
    }
}
