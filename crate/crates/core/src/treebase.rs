//! Covering subtrees: trees inside a network that share its root and its
//! exact leaf set.

use std::fmt::Write as _;

use crate::network::{EdgeId, PhyloNetwork, VertexId};
use crate::phn::write_leaf_lines;
use crate::zigzag::{TrailKind, ZigzagDecomposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSubtree {
    host: u64,
    edges: Vec<EdgeId>,
    covered: Vec<VertexId>,
    uncovered: Vec<VertexId>,
}

impl CoveringSubtree {
    /// Fingerprint of the host network (see [`PhyloNetwork::fingerprint`]).
    pub fn host_fingerprint(&self) -> u64 {
        self.host
    }

    /// Host edge ids, ascending.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn covered(&self) -> &[VertexId] {
        &self.covered
    }

    pub fn uncovered(&self) -> &[VertexId] {
        &self.uncovered
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.covered.binary_search(&v).is_ok()
    }

    /// External ids of the uncovered vertices, sorted.
    pub fn uncovered_names<'a>(&self, host: &'a PhyloNetwork) -> Vec<&'a str> {
        let mut names: Vec<&str> = self.uncovered.iter().map(|&v| host.name(v)).collect();
        names.sort_unstable();
        names
    }

    /// `.phn` text of the tree followed by a `# uncovered:` trailer.
    pub fn to_phn(&self, host: &PhyloNetwork) -> String {
        let mut out = String::new();
        for &e in &self.edges {
            let (t, h) = host.edge_names(e);
            let _ = writeln!(out, "edge {t} {h}");
        }
        write_leaf_lines(host, &mut out);
        out.push_str("# uncovered:");
        for name in self.uncovered_names(host) {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubtreeViolation {
    #[error("edge id {0} is not an edge of the network")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is listed twice")]
    RepeatedEdge(String),
    #[error("vertex `{0}` has more than one in-edge")]
    MultipleParents(String),
    #[error("vertex `{0}` is covered but has no in-edge")]
    Detached(String),
    #[error("vertex `{0}` is a leaf of the subtree but not of the network")]
    InternalLeaf(String),
    #[error("leaf `{0}` of the network is not covered")]
    MissingLeaf(String),
}

/// Checks that `edges` induce a directed tree rooted at the network's root
/// whose leaves are exactly the network's leaves.
pub fn validate_covering_subtree(n: &PhyloNetwork, edges: &[EdgeId]) -> Result<CoveringSubtree, SubtreeViolation> {
    let nv = n.vertex_count();
    let mut used = vec![false; n.edge_count()];
    let mut indeg = vec![0u8; nv];
    let mut outdeg = vec![0u8; nv];
    let mut covered = vec![false; nv];
    covered[n.root()] = true;
    for &e in edges {
        if e >= n.edge_count() {
            return Err(SubtreeViolation::UnknownEdge(e));
        }
        if std::mem::replace(&mut used[e], true) {
            let (t, h) = n.edge_names(e);
            return Err(SubtreeViolation::RepeatedEdge(format!("{t}->{h}")));
        }
        let edge = n.edge(e);
        indeg[edge.head] += 1;
        outdeg[edge.tail] += 1;
        covered[edge.head] = true;
        covered[edge.tail] = true;
    }
    if let Some(v) = indeg.iter().position(|&d| d > 1) {
        return Err(SubtreeViolation::MultipleParents(n.name(v).to_owned()));
    }
    // Every covered non-root vertex has exactly one parent inside the set and
    // the host is acyclic, so parent chains end at the root: a tree.
    for v in 0..nv {
        if covered[v] && v != n.root() && indeg[v] == 0 {
            return Err(SubtreeViolation::Detached(n.name(v).to_owned()));
        }
    }
    for v in 0..nv {
        if covered[v] && outdeg[v] == 0 && !n.is_leaf(v) {
            return Err(SubtreeViolation::InternalLeaf(n.name(v).to_owned()));
        }
    }
    for &leaf in n.leaves() {
        if !covered[leaf] {
            return Err(SubtreeViolation::MissingLeaf(n.name(leaf).to_owned()));
        }
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let (cov, uncov): (Vec<VertexId>, Vec<VertexId>) = (0..nv).partition(|&v| covered[v]);
    Ok(CoveringSubtree {
        host: n.fingerprint(),
        edges: sorted,
        covered: cov,
        uncovered: uncov,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("network has {0} W-fence(s) and is not tree-based")]
    WFencePresent(usize),
    #[error("selected edges do not form a subdivision tree: {0}")]
    Internal(SubtreeViolation),
}

/// Spanning subdivision tree of a W-fence-free network.
///
/// Per trail `e_1..e_m` (canonical order): odd-indexed edges are kept, and an
/// M-fence additionally keeps `e_m`. Each lower vertex then receives exactly
/// one in-edge and each upper vertex keeps at least one out-edge.
pub fn subdivision_tree(n: &PhyloNetwork, d: &ZigzagDecomposition) -> Result<CoveringSubtree, TreeError> {
    let w = d.counts().w_fence;
    if w > 0 {
        return Err(TreeError::WFencePresent(w));
    }
    let mut edges = Vec::with_capacity(n.vertex_count());
    for t in d.trails() {
        let seq = t.edges();
        edges.extend(seq.iter().step_by(2).copied());
        if t.kind() == TrailKind::MFence {
            edges.push(*seq.last().expect("non-empty trail"));
        }
    }
    let tree = validate_covering_subtree(n, &edges).map_err(TreeError::Internal)?;
    debug_assert!(tree.uncovered().is_empty());
    Ok(tree)
}
