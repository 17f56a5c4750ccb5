//! M-W pairs, M-W matchings and resolution.
//!
//! Trail `Z_i` is above `Z_j` when some vertex is lower in `Z_i` and upper in
//! `Z_j`. An M-W pair is an M-fence above a W-fence. Deleting a shared vertex
//! of an M-W pair (resolution) turns both fences into N-fences, so a matching
//! that covers every W-fence yields a covering subtree missing exactly one
//! vertex per W-fence, which is optimal.

use crate::network::{PhyloNetwork, VertexId};
use crate::treebase::{subdivision_tree, validate_covering_subtree, CoveringSubtree, SubtreeViolation, TreeError};
use crate::validate::ValidationReport;
use crate::zigzag::{decompose, KindCounts, TrailKind, ZigzagDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MwError {
    #[error("a trail cannot be above itself (trail {0})")]
    SameTrail(usize),
    #[error("trails ({0}, {1}) are not an M-fence and a W-fence")]
    NotAnMwPair(usize, usize),
    #[error("vertex `{0}` is not shared by the M-fence and the W-fence")]
    NotSharedVertex(String),
    #[error("resolution produced an invalid network: {0}")]
    InvalidResult(ValidationReport),
    #[error("resolution changed fence counts from {before:?} to {after:?}")]
    CountsMismatch { before: KindCounts, after: KindCounts },
    #[error("no W-fence-saturated M-W matching exists ({matched} of {w_fences} W-fences matched)")]
    Inapplicable { matched: usize, w_fences: usize },
    #[error("residual network lost its saturated matching after {0} resolution(s)")]
    SaturationLost(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("reconstructed covering subtree is invalid: {0}")]
    Subtree(SubtreeViolation),
}

/// True iff `V_l(Z_i) ∩ V_u(Z_j)` is non-empty. Scans the smaller of the two
/// vertex sets.
pub fn above(d: &ZigzagDecomposition, i: usize, j: usize) -> Result<bool, MwError> {
    if i == j {
        return Err(MwError::SameTrail(i));
    }
    let (lower, upper) = (d.trail(i).lower(), d.trail(j).upper());
    Ok(if lower.len() <= upper.len() {
        lower.iter().any(|&v| d.upper_trail(v) == Some(j))
    } else {
        upper.iter().any(|&v| d.lower_trail(v) == Some(i))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MwPair {
    pub m_trail: usize,
    pub w_trail: usize,
    /// Shared vertices, sorted by external id.
    pub witnesses: Vec<VertexId>,
}

/// Bipartite graph of M-fences and W-fences joined by M-W pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MwPairGraph {
    pub m_nodes: Vec<usize>,
    pub w_nodes: Vec<usize>,
    /// Sorted by `(m_trail, w_trail)`.
    pub adjacency: Vec<MwPair>,
}

/// One pass over the vertices: a vertex that is lower in an M-fence and upper
/// in a W-fence is a witness for that pair.
pub fn mw_pair_graph(n: &PhyloNetwork, d: &ZigzagDecomposition) -> MwPairGraph {
    let m_nodes: Vec<usize> = d.indices_of(TrailKind::MFence).collect();
    let w_nodes: Vec<usize> = d.indices_of(TrailKind::WFence).collect();
    let mut hits: Vec<(usize, usize, VertexId)> = Vec::new();
    for v in 0..n.vertex_count() {
        let (Some(lo), Some(up)) = (d.lower_trail(v), d.upper_trail(v)) else {
            continue;
        };
        if d.kind(lo) == TrailKind::MFence && d.kind(up) == TrailKind::WFence {
            hits.push((lo, up, v));
        }
    }
    hits.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| n.cmp_names(a.2, b.2)));
    let mut adjacency: Vec<MwPair> = Vec::new();
    for (m, w, v) in hits {
        match adjacency.last_mut() {
            Some(p) if p.m_trail == m && p.w_trail == w => p.witnesses.push(v),
            _ => adjacency.push(MwPair {
                m_trail: m,
                w_trail: w,
                witnesses: vec![v],
            }),
        }
    }
    MwPairGraph {
        m_nodes,
        w_nodes,
        adjacency,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub m_trail: usize,
    pub w_trail: usize,
    /// Smallest shared vertex by external id.
    pub vertex: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MwMatching {
    /// Sorted by `w_trail`.
    pub pairs: Vec<MatchedPair>,
    pub saturated: bool,
}

impl MwMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Maximum-cardinality M-W matching by augmenting paths from each W-fence.
///
/// `saturated` is true iff every W-fence is matched (vacuously so when there
/// is none).
pub fn max_mw_matching(g: &MwPairGraph) -> MwMatching {
    let w_count = g.w_nodes.len();
    let m_pos = |trail: usize| g.m_nodes.binary_search(&trail).expect("pair uses a known M-fence");
    let w_pos = |trail: usize| g.w_nodes.binary_search(&trail).expect("pair uses a known W-fence");

    // adjacency[w] = (m index, pair index)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); w_count];
    for (k, p) in g.adjacency.iter().enumerate() {
        adj[w_pos(p.w_trail)].push((m_pos(p.m_trail), k));
    }

    let mut match_m: Vec<Option<usize>> = vec![None; g.m_nodes.len()];
    let mut match_w: Vec<Option<(usize, usize)>> = vec![None; w_count];

    // greedy start
    for w in 0..w_count {
        if let Some(&(m, k)) = adj[w].iter().find(|(m, _)| match_m[*m].is_none()) {
            match_m[m] = Some(w);
            match_w[w] = Some((m, k));
        }
    }

    // Marks survive failed searches: with the matching unchanged, a vertex
    // that led nowhere still leads nowhere.
    let mut seen = vec![0u32; g.m_nodes.len()];
    let mut stamp = 1u32;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..w_count {
        if match_w[root].is_some() {
            continue;
        }
        stack.clear();
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let (w, next) = *top;
            if next == adj[w].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (m, _) = adj[w][next];
            if seen[m] == stamp {
                continue;
            }
            seen[m] = stamp;
            match match_m[m] {
                Some(other) => stack.push((other, 0)),
                None => {
                    for &(wk, ik) in &stack {
                        let (mk, pk) = adj[wk][ik - 1];
                        match_m[mk] = Some(wk);
                        match_w[wk] = Some((mk, pk));
                    }
                    stamp += 1;
                    break;
                }
            }
        }
    }

    let pairs: Vec<MatchedPair> = match_w
        .iter()
        .flatten()
        .map(|&(_, k)| {
            let p = &g.adjacency[k];
            MatchedPair {
                m_trail: p.m_trail,
                w_trail: p.w_trail,
                vertex: p.witnesses[0],
            }
        })
        .collect();
    MwMatching {
        saturated: pairs.len() == w_count,
        pairs,
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub network: PhyloNetwork,
    pub decomposition: ZigzagDecomposition,
}

/// Resolves the M-W pair `(m_trail, w_trail)` at `v`, i.e. builds `N - {v}`.
///
/// The result is revalidated and re-decomposed; it must have exactly one
/// M-fence and one W-fence fewer than `n`.
pub fn resolve(
    n: &PhyloNetwork,
    d: &ZigzagDecomposition,
    m_trail: usize,
    w_trail: usize,
    v: VertexId,
) -> Result<Resolution, MwError> {
    let kinds = (
        d.get(m_trail).map(|t| t.kind()),
        d.get(w_trail).map(|t| t.kind()),
    );
    if kinds != (Some(TrailKind::MFence), Some(TrailKind::WFence)) {
        return Err(MwError::NotAnMwPair(m_trail, w_trail));
    }
    if v >= n.vertex_count() || d.lower_trail(v) != Some(m_trail) || d.upper_trail(v) != Some(w_trail) {
        let name = if v < n.vertex_count() { n.name(v).to_owned() } else { v.to_string() };
        return Err(MwError::NotSharedVertex(name));
    }
    let raw = n
        .remove_vertex(v)
        .map_err(|_| MwError::NotSharedVertex(n.name(v).to_owned()))?;
    let network = PhyloNetwork::from_raw(raw).map_err(MwError::InvalidResult)?;
    let decomposition = decompose(&network);
    let (before, after) = (d.counts(), decomposition.counts());
    if after.w_fence + 1 != before.w_fence || after.m_fence + 1 != before.m_fence {
        return Err(MwError::CountsMismatch { before, after });
    }
    Ok(Resolution { network, decomposition })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FastResult {
    /// `η* = |W_N|`, certified by a saturated matching.
    Applicable { eta: usize, matching: MwMatching },
    /// No saturated matching: `η* > |W_N|`. Carries a maximum matching.
    Inapplicable { matching: MwMatching, w_fences: usize },
}

impl FastResult {
    pub fn eta(&self) -> Option<usize> {
        match self {
            FastResult::Applicable { eta, .. } => Some(*eta),
            FastResult::Inapplicable { .. } => None,
        }
    }

    pub fn matching(&self) -> &MwMatching {
        match self {
            FastResult::Applicable { matching, .. } | FastResult::Inapplicable { matching, .. } => matching,
        }
    }
}

pub fn eta_fast(n: &PhyloNetwork) -> FastResult {
    eta_fast_with(n, &decompose(n))
}

/// [`eta_fast`] on an existing decomposition.
pub fn eta_fast_with(n: &PhyloNetwork, d: &ZigzagDecomposition) -> FastResult {
    let w = d.counts().w_fence;
    if w == 0 {
        return FastResult::Applicable {
            eta: 0,
            matching: MwMatching {
                pairs: Vec::new(),
                saturated: true,
            },
        };
    }
    let matching = max_mw_matching(&mw_pair_graph(n, d));
    if matching.saturated {
        FastResult::Applicable { eta: w, matching }
    } else {
        FastResult::Inapplicable { matching, w_fences: w }
    }
}

/// Maximum covering subtree for networks with a saturated M-W matching.
///
/// Resolves one matched pair at a time, re-decomposing and re-matching the
/// residual network after each step, then lifts a subdivision tree of the
/// W-fence-free residual back onto `n`.
pub fn build_mcst_via_resolution(n: &PhyloNetwork) -> Result<CoveringSubtree, MwError> {
    let mut current = n.clone();
    let mut d = decompose(n);
    let target = d.counts().w_fence;
    let mut steps = 0;
    while d.counts().w_fence > 0 {
        let matching = max_mw_matching(&mw_pair_graph(&current, &d));
        if !matching.saturated {
            return Err(if steps == 0 {
                MwError::Inapplicable {
                    matched: matching.len(),
                    w_fences: d.counts().w_fence,
                }
            } else {
                MwError::SaturationLost(steps)
            });
        }
        let p = matching.pairs[0];
        let r = resolve(&current, &d, p.m_trail, p.w_trail, p.vertex)?;
        current = r.network;
        d = r.decomposition;
        steps += 1;
    }
    let residual_tree = subdivision_tree(&current, &d)?;
    let edges: Vec<_> = residual_tree
        .edges()
        .iter()
        .map(|&e| {
            let (t, h) = current.edge_names(e);
            n.find_edge(t, h).expect("residual edges exist in the host")
        })
        .collect();
    let tree = validate_covering_subtree(n, &edges).map_err(MwError::Subtree)?;
    if tree.uncovered().len() != target {
        return Err(MwError::CountsMismatch {
            before: decompose(n).counts(),
            after: d.counts(),
        });
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn trail_with(n: &PhyloNetwork, d: &ZigzagDecomposition, tail: &str, head: &str) -> usize {
        d.trail_of(n.find_edge(tail, head).unwrap())
    }

    #[test]
    fn above_relation() {
        let n = fixtures::fix_a();
        let d = decompose(&n);
        let m = trail_with(&n, &d, "ρ", "a");
        let w = trail_with(&n, &d, "a", "r");
        let nf = trail_with(&n, &d, "r", "1");
        assert_eq!(above(&d, m, w), Ok(true));
        assert_eq!(above(&d, nf, w), Ok(false));
        assert_eq!(above(&d, w, nf), Ok(true));
        assert_eq!(above(&d, m, m), Err(MwError::SameTrail(m)));

        let n = fixtures::fix_b();
        let d = decompose(&n);
        let mc = trail_with(&n, &d, "c", "d1");
        for w in d.indices_of(TrailKind::WFence) {
            assert_eq!(above(&d, mc, w), Ok(false));
        }
    }

    #[test]
    fn pair_graphs() {
        let n = fixtures::fix_a();
        let d = decompose(&n);
        let g = mw_pair_graph(&n, &d);
        assert_eq!((g.m_nodes.len(), g.w_nodes.len(), g.adjacency.len()), (1, 1, 1));
        let w: Vec<&str> = g.adjacency[0].witnesses.iter().map(|&v| n.name(v)).collect();
        assert_eq!(w, ["a", "b"]);

        let n = fixtures::fix_b();
        let d = decompose(&n);
        let g = mw_pair_graph(&n, &d);
        assert_eq!((g.m_nodes.len(), g.w_nodes.len()), (3, 2));
        let mu = trail_with(&n, &d, "u", "a1");
        let w1 = trail_with(&n, &d, "a1", "r1");
        let w2 = trail_with(&n, &d, "a2", "r2");
        let pairs: Vec<(usize, usize)> = g.adjacency.iter().map(|p| (p.m_trail, p.w_trail)).collect();
        let mut expected = vec![(mu, w1), (mu, w2)];
        expected.sort();
        assert_eq!(pairs, expected);

        let n = fixtures::fix_c();
        let g = mw_pair_graph(&n, &decompose(&n));
        assert_eq!((g.m_nodes.len(), g.w_nodes.len(), g.adjacency.len()), (1, 0, 0));
    }

    #[test]
    fn matchings() {
        let n = fixtures::fix_a();
        let m = max_mw_matching(&mw_pair_graph(&n, &decompose(&n)));
        assert_eq!(m.len(), 1);
        assert!(m.saturated);
        assert_eq!(n.name(m.pairs[0].vertex), "a");

        let n = fixtures::fix_b();
        let m = max_mw_matching(&mw_pair_graph(&n, &decompose(&n)));
        assert_eq!(m.len(), 1);
        assert!(!m.saturated);

        let empty = MwPairGraph {
            m_nodes: vec![],
            w_nodes: vec![],
            adjacency: vec![],
        };
        let m = max_mw_matching(&empty);
        assert!(m.is_empty() && m.saturated);
    }

    #[test]
    fn augmenting_path_is_found() {
        // W0 - M0, W1 - {M0, M1}; greedy gives W0-M0 then W1-M1 directly,
        // so order W1 first to force an augmentation.
        let g = MwPairGraph {
            m_nodes: vec![0, 1],
            w_nodes: vec![2, 3],
            adjacency: vec![
                MwPair { m_trail: 0, w_trail: 2, witnesses: vec![10] },
                MwPair { m_trail: 0, w_trail: 3, witnesses: vec![11] },
                MwPair { m_trail: 1, w_trail: 2, witnesses: vec![12] },
            ],
        };
        let m = max_mw_matching(&g);
        assert!(m.saturated, "{m:?}");
        let g = MwPairGraph {
            m_nodes: vec![0, 1],
            w_nodes: vec![2, 3],
            adjacency: vec![
                MwPair { m_trail: 0, w_trail: 3, witnesses: vec![11] },
                MwPair { m_trail: 1, w_trail: 3, witnesses: vec![12] },
                MwPair { m_trail: 0, w_trail: 2, witnesses: vec![10] },
            ],
        };
        let mut g2 = g.clone();
        g2.adjacency.sort_by_key(|p| (p.m_trail, p.w_trail));
        let m = max_mw_matching(&g2);
        assert!(m.saturated, "{m:?}");
        let mut ms: Vec<usize> = m.pairs.iter().map(|p| p.m_trail).collect();
        ms.sort();
        assert_eq!(ms, [0, 1]);
    }

    #[test]
    fn resolve_fix_a() {
        let n = fixtures::fix_a();
        let d = decompose(&n);
        let m = trail_with(&n, &d, "ρ", "a");
        let w = trail_with(&n, &d, "a", "r");
        for (gone, kept) in [("a", "b"), ("b", "a")] {
            let r = resolve(&n, &d, m, w, n.vertex(gone).unwrap()).unwrap();
            assert_eq!(r.network.edge_count(), 3);
            assert!(r.network.find_edge("ρ", kept).is_some());
            let c = r.decomposition.counts();
            assert_eq!((c.m_fence, c.w_fence, c.n_fence), (0, 0, 3));
        }
        assert_eq!(
            resolve(&n, &d, m, w, n.vertex("r").unwrap()).unwrap_err(),
            MwError::NotSharedVertex("r".into())
        );
        let nf = trail_with(&n, &d, "r", "1");
        assert_eq!(
            resolve(&n, &d, nf, w, n.vertex("a").unwrap()).unwrap_err(),
            MwError::NotAnMwPair(nf, w)
        );
    }

    #[test]
    fn fast_path_on_fixtures() {
        assert_eq!(eta_fast(&fixtures::fix_tree()).eta(), Some(0));
        assert_eq!(eta_fast(&fixtures::fix_a()).eta(), Some(1));
        match eta_fast(&fixtures::fix_b()) {
            FastResult::Inapplicable { matching, w_fences } => {
                assert_eq!(matching.len(), 1);
                assert_eq!(w_fences, 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mcst_by_resolution() {
        let n = fixtures::fix_a();
        let t = build_mcst_via_resolution(&n).unwrap();
        assert_eq!(t.uncovered_names(&n), ["a"]);

        let n = fixtures::fix_c();
        assert!(build_mcst_via_resolution(&n).unwrap().uncovered().is_empty());

        assert_eq!(
            build_mcst_via_resolution(&fixtures::fix_b()).unwrap_err(),
            MwError::Inapplicable { matched: 1, w_fences: 2 }
        );
    }
}
