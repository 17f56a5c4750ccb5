//! Independent reference implementations and corpora shared by the
//! integration tests. Nothing here uses the decomposition code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use phylo_zigzag::{random_network, GenParams, PhyloNetwork};

/// Partition of the edges by repeated merging: two groups merge whenever an
/// edge of one shares a head or a tail with an edge of the other. Quadratic
/// per round; only meant for tiny networks.
pub fn naive_partition(n: &PhyloNetwork) -> BTreeSet<BTreeSet<usize>> {
    let mut groups: Vec<BTreeSet<usize>> = (0..n.edge_count()).map(|e| BTreeSet::from([e])).collect();
    let touches = |a: usize, b: usize| {
        let (x, y) = (n.edge(a), n.edge(b));
        x.head == y.head || x.tail == y.tail
    };
    loop {
        let mut merged = false;
        'outer: for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                if groups[i].iter().any(|&a| groups[j].iter().any(|&b| touches(a, b))) {
                    let g = groups.remove(j);
                    groups[i].extend(g);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return groups.into_iter().collect();
        }
    }
}

/// No edge outside `trail` shares a head or a tail with an edge inside it.
pub fn is_maximal(n: &PhyloNetwork, trail: &[usize]) -> bool {
    let inside: BTreeSet<usize> = trail.iter().copied().collect();
    (0..n.edge_count()).filter(|e| !inside.contains(e)).all(|e| {
        let x = n.edge(e);
        trail.iter().all(|&f| {
            let y = n.edge(f);
            x.head != y.head && x.tail != y.tail
        })
    })
}

/// Consecutive edges alternately share a head and a tail, and no edge repeats.
pub fn is_zigzag_sequence(n: &PhyloNetwork, trail: &[usize]) -> bool {
    let distinct: BTreeSet<usize> = trail.iter().copied().collect();
    if distinct.len() != trail.len() {
        return false;
    }
    let shares = |a: usize, b: usize| {
        let (x, y) = (n.edge(a), n.edge(b));
        (x.head == y.head, x.tail == y.tail)
    };
    let mut sides = trail.windows(2).map(|w| shares(w[0], w[1]));
    let Some(first) = sides.next() else {
        return trail.len() == 1;
    };
    if first.0 == first.1 {
        return false;
    }
    let mut head = first.0;
    for s in sides {
        if s != (!head, head) {
            return false;
        }
        head = !head;
    }
    true
}

/// Parameters of the `i`-th network in a corpus seeded by `seed`. Sizes
/// cycle through small trees, reticulate networks, and networks with
/// (1,1) and (2,2) vertices.
pub fn corpus_params(i: u64, seed: u64, max_leaves: usize, max_reticulations: usize) -> GenParams {
    let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ i;
    let leaves = 1 + (mix % max_leaves as u64) as usize;
    let reticulations = ((mix / 7) % (max_reticulations as u64 + 1)) as usize;
    let (p11, p22) = match i % 4 {
        0 => (0.0, 0.0),
        1 => (0.15, 0.0),
        2 => (0.0, 0.4),
        _ => (0.1, 0.3),
    };
    GenParams::new(leaves, reticulations, seed ^ i.wrapping_mul(0x2545_F491_4F6C_DD1D)).with_probabilities(p11, p22)
}

pub fn corpus(count: u64, seed: u64, max_leaves: usize, max_reticulations: usize) -> Vec<PhyloNetwork> {
    (0..count)
        .map(|i| {
            let p = corpus_params(i, seed, max_leaves, max_reticulations);
            random_network(&p).unwrap_or_else(|e| panic!("generator failed on {p:?}: {e}"))
        })
        .collect()
}

/// Definition-level maximality for a whole family of trails, in linear
/// time: every edge sharing a head or a tail with an edge of a trail must
/// belong to that same trail. Returns the first offending pair of edges.
pub fn maximality_violation(n: &PhyloNetwork, trails: &[Vec<usize>]) -> Option<(usize, usize)> {
    let mut owner = vec![usize::MAX; n.edge_count()];
    for (i, t) in trails.iter().enumerate() {
        for &e in t {
            owner[e] = i;
        }
    }
    for (i, t) in trails.iter().enumerate() {
        for &f in t {
            let edge = n.edge(f);
            let near = n.in_edges(edge.head).iter().chain(n.out_edges(edge.tail));
            for &g in near {
                if owner[g] != i {
                    return Some((f, g));
                }
            }
        }
    }
    None
}

/// Trail type from the definitions: closed walks are crowns, odd paths
/// N-fences, even paths M- or W-fences by whether the first two edges share
/// a tail or a head.
pub fn naive_kind(n: &PhyloNetwork, trail: &[usize]) -> &'static str {
    let len = trail.len();
    let (first, last) = (n.edge(trail[0]), n.edge(trail[len - 1]));
    let closes = len > 2 && len.is_multiple_of(2) && (first.head == last.head || first.tail == last.tail);
    if closes {
        "crown"
    } else if len % 2 == 1 {
        "n-fence"
    } else if first.tail == n.edge(trail[1]).tail {
        "m-fence"
    } else {
        "w-fence"
    }
}

/// Tails and heads of a trail's edges, as sets.
pub fn upper_lower_sets(n: &PhyloNetwork, trail: &[usize]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    (
        trail.iter().map(|&e| n.edge(e).tail).collect(),
        trail.iter().map(|&e| n.edge(e).head).collect(),
    )
}

/// Checks that `edges` form a subtree of `n` rooted at the root that
/// contains every leaf and whose own leaves are leaves of `n`. Returns the
/// vertex set of the subtree.
pub fn check_covering_subtree(n: &PhyloNetwork, edges: &[usize]) -> Result<BTreeSet<usize>, String> {
    let mut parent = vec![None; n.vertex_count()];
    let mut outdeg = vec![0usize; n.vertex_count()];
    let mut seen = BTreeSet::new();
    for &e in edges {
        if e >= n.edge_count() || !seen.insert(e) {
            return Err(format!("edge {e} unknown or repeated"));
        }
        let edge = n.edge(e);
        if parent[edge.head].replace(edge.tail).is_some() {
            return Err(format!("`{}` has two parents in the subtree", n.name(edge.head)));
        }
        outdeg[edge.tail] += 1;
    }
    let mut vertices = BTreeSet::from([n.root()]);
    for v in 0..n.vertex_count() {
        if parent[v].is_none() {
            continue;
        }
        // climb to the root; the network is acyclic so this terminates
        let mut u = v;
        while let Some(p) = parent[u] {
            u = p;
        }
        if u != n.root() {
            return Err(format!("`{}` is not below the root", n.name(v)));
        }
        vertices.insert(v);
    }
    for &leaf in n.leaves() {
        if !vertices.contains(&leaf) {
            return Err(format!("leaf `{}` is missing", n.name(leaf)));
        }
    }
    for &v in &vertices {
        if outdeg[v] == 0 && !n.is_leaf(v) {
            return Err(format!("`{}` is a leaf of the subtree only", n.name(v)));
        }
    }
    Ok(vertices)
}
