//! The generator must exercise every trail kind and every degree pattern a
//! resolution vertex can have; otherwise the other suites prove little.

mod common;

use std::collections::BTreeMap;

use phylo_zigzag::{decompose, mw_pair_graph, TrailKind};

use common::corpus;

#[test]
fn generator_reaches_every_trail_kind() {
    let mut seen: BTreeMap<TrailKind, usize> = BTreeMap::new();
    for n in corpus(500, 5, 12, 12) {
        for t in decompose(&n).trails() {
            *seen.entry(t.kind()).or_default() += 1;
        }
    }
    println!("trail kinds: {seen:?}");
    for k in [TrailKind::Crown, TrailKind::MFence, TrailKind::NFence, TrailKind::WFence] {
        assert!(seen.get(&k).copied().unwrap_or(0) >= 10, "{k:?} too rare: {seen:?}");
    }
}

#[test]
fn generator_reaches_every_resolution_case() {
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for n in corpus(5_000, 6, 12, 12) {
        let d = decompose(&n);
        for pair in mw_pair_graph(&n, &d).adjacency {
            for v in pair.witnesses {
                *seen.entry(n.degree_pair(v)).or_default() += 1;
            }
        }
    }
    println!("shared vertex degrees: {seen:?}");
    for case in [(1, 2), (2, 1), (1, 1), (2, 2)] {
        assert!(seen.get(&case).copied().unwrap_or(0) >= 10, "{case:?} too rare: {seen:?}");
    }
}
