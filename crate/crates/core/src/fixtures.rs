//! Small hand-built networks shipped with the crate.

use crate::network::PhyloNetwork;
use crate::phn::parse_phn;

/// Binary tree on leaves 1, 2, 3.
pub const FIX_TREE: &str = include_str!("../fixtures/fix_tree.phn");
/// Single reticulation `r` whose parents are both pass-through vertices.
pub const FIX_A: &str = include_str!("../fixtures/fix_a.phn");
/// Two W-fences hanging off one M-fence; has no saturated M-W matching.
pub const FIX_B: &str = include_str!("../fixtures/fix_b.phn");
/// Tree-based network with a four-edge crown.
pub const FIX_C: &str = include_str!("../fixtures/fix_c.phn");

/// Resolution fixtures, one per degree pair of the shared vertex.
pub const RESOLVE_TREE_VERTEX: &str = include_str!("../fixtures/resolve_tree_vertex.phn");
pub const RESOLVE_RETICULATION: &str = include_str!("../fixtures/resolve_reticulation.phn");
pub const RESOLVE_PASS_THROUGH: &str = include_str!("../fixtures/resolve_pass_through.phn");
pub const RESOLVE_DOUBLE: &str = include_str!("../fixtures/resolve_double.phn");

pub const SOURCES: [(&str, &str); 8] = [
    ("fix_tree", FIX_TREE),
    ("fix_a", FIX_A),
    ("fix_b", FIX_B),
    ("fix_c", FIX_C),
    ("resolve_tree_vertex", RESOLVE_TREE_VERTEX),
    ("resolve_reticulation", RESOLVE_RETICULATION),
    ("resolve_pass_through", RESOLVE_PASS_THROUGH),
    ("resolve_double", RESOLVE_DOUBLE),
];

fn load(text: &str) -> PhyloNetwork {
    parse_phn(text).expect("shipped fixture is valid")
}

pub fn fix_tree() -> PhyloNetwork {
    load(FIX_TREE)
}

pub fn fix_a() -> PhyloNetwork {
    load(FIX_A)
}

pub fn fix_b() -> PhyloNetwork {
    load(FIX_B)
}

pub fn fix_c() -> PhyloNetwork {
    load(FIX_C)
}

/// Every shipped fixture, in the order of [`SOURCES`].
pub fn all() -> Vec<PhyloNetwork> {
    SOURCES.iter().map(|(_, text)| load(text)).collect()
}

/// Looks a fixture up by file stem, e.g. `"fix_a"`.
pub fn by_name(name: &str) -> Option<PhyloNetwork> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| load(text))
}
