//! Maximal zig-zag trail decomposition.
//!
//! Two edges are siblings when they share a head or share a tail. In an
//! almost-binary network every edge has at most one head-sibling and at most
//! one tail-sibling, so the sibling relation is a disjoint union of paths and
//! even cycles. Each component is one maximal zig-zag trail, and the set of
//! components is the unique decomposition of the edge set.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::network::{EdgeId, PhyloNetwork, VertexId};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrailKind {
    Crown,
    MFence,
    NFence,
    WFence,
}

impl TrailKind {
    pub const ALL: [TrailKind; 4] = [TrailKind::Crown, TrailKind::MFence, TrailKind::NFence, TrailKind::WFence];

    pub fn as_str(self) -> &'static str {
        match self {
            TrailKind::Crown => "crown",
            TrailKind::MFence => "m-fence",
            TrailKind::NFence => "n-fence",
            TrailKind::WFence => "w-fence",
        }
    }

    /// `|lower| - |upper|` for a maximal trail of this kind.
    pub fn lower_minus_upper(self) -> isize {
        match self {
            TrailKind::MFence => 1,
            TrailKind::Crown | TrailKind::NFence => 0,
            TrailKind::WFence => -1,
        }
    }
}

impl fmt::Display for TrailKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrailError {
    #[error("trail has no edges")]
    Empty,
    #[error("edges {0} and {1} share neither a head nor a tail")]
    Disjoint(usize, usize),
    #[error("edges {0} and {1} are identical")]
    Repeated(usize, usize),
    #[error("links at positions {0} and {1} share the same side")]
    NotAlternating(usize, usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Link {
    Head,
    Tail,
}

fn link<V: PartialEq>(a: &(V, V), b: &(V, V)) -> Option<Link> {
    match (a.0 == b.0, a.1 == b.1) {
        (true, false) => Some(Link::Tail),
        (false, true) => Some(Link::Head),
        _ => None,
    }
}

/// Classifies an ordered `(tail, head)` sequence whose consecutive edges
/// alternately share heads and tails.
///
/// Crown iff the sequence closes on itself; otherwise N-fence for an odd
/// length, M-fence when both terminal vertices are heads and W-fence when
/// both are tails.
pub fn classify_trail<V: PartialEq>(edges: &[(V, V)]) -> Result<TrailKind, TrailError> {
    let m = edges.len();
    if m == 0 {
        return Err(TrailError::Empty);
    }
    let mut links = Vec::with_capacity(m.saturating_sub(1));
    for i in 0..m - 1 {
        let (a, b) = (&edges[i], &edges[i + 1]);
        match link(a, b) {
            Some(l) => links.push(l),
            None if a.0 == b.0 && a.1 == b.1 => return Err(TrailError::Repeated(i, i + 1)),
            None => return Err(TrailError::Disjoint(i, i + 1)),
        }
        if i > 0 && links[i] == links[i - 1] {
            return Err(TrailError::NotAlternating(i - 1, i));
        }
    }
    if m == 1 {
        return Ok(TrailKind::NFence);
    }
    if m % 2 == 1 {
        return Ok(TrailKind::NFence);
    }
    if m >= 4 {
        let closing = link(&edges[m - 1], &edges[0]);
        if closing.is_some() && closing != links.last().copied() {
            return Ok(TrailKind::Crown);
        }
    }
    Ok(match links[0] {
        Link::Tail => TrailKind::MFence,
        Link::Head => TrailKind::WFence,
    })
}

/// One maximal zig-zag trail in canonical orientation, borrowed from its
/// decomposition.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ZigzagTrail<'a> {
    edges: &'a [EdgeId],
    kind: TrailKind,
    upper: &'a [VertexId],
    lower: &'a [VertexId],
}

impl<'a> ZigzagTrail<'a> {
    pub fn edges(&self) -> &'a [EdgeId] {
        self.edges
    }

    pub fn kind(&self) -> TrailKind {
        self.kind
    }

    /// Tails of the trail's edges, each once, in trail order.
    pub fn upper(&self) -> &'a [VertexId] {
        self.upper
    }

    /// Heads of the trail's edges, each once, in trail order.
    pub fn lower(&self) -> &'a [VertexId] {
        self.lower
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// `(V_u, V_l)` of a trail: tails and heads of its edges.
pub fn upper_lower(t: ZigzagTrail<'_>) -> (&[VertexId], &[VertexId]) {
    (t.upper, t.lower)
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub crown: usize,
    pub m_fence: usize,
    pub n_fence: usize,
    pub w_fence: usize,
}

impl KindCounts {
    pub fn get(&self, kind: TrailKind) -> usize {
        match kind {
            TrailKind::Crown => self.crown,
            TrailKind::MFence => self.m_fence,
            TrailKind::NFence => self.n_fence,
            TrailKind::WFence => self.w_fence,
        }
    }

    fn bump(&mut self, kind: TrailKind) {
        match kind {
            TrailKind::Crown => self.crown += 1,
            TrailKind::MFence => self.m_fence += 1,
            TrailKind::NFence => self.n_fence += 1,
            TrailKind::WFence => self.w_fence += 1,
        }
    }
}

const NONE: u32 = u32::MAX;

/// Trails are stored back to back: trail `i` owns `edges[span[i][0]..span[i+1][0]]`
/// and likewise for its upper and lower vertices.
#[derive(Clone, Debug)]
pub struct ZigzagDecomposition {
    edges: Vec<EdgeId>,
    upper: Vec<VertexId>,
    lower: Vec<VertexId>,
    spans: Vec<[u32; 3]>,
    kinds: Vec<TrailKind>,
    edge_to_trail: Vec<u32>,
    counts: KindCounts,
    lower_trail: Vec<u32>,
    upper_trail: Vec<u32>,
}

impl ZigzagDecomposition {
    pub fn trail_count(&self) -> usize {
        self.kinds.len()
    }

    /// Trails in order of their lowest-numbered edge.
    pub fn trails(&self) -> impl ExactSizeIterator<Item = ZigzagTrail<'_>> + '_ {
        (0..self.trail_count()).map(move |i| self.trail(i))
    }

    pub fn trail(&self, i: usize) -> ZigzagTrail<'_> {
        let [e0, u0, l0] = self.spans[i].map(|x| x as usize);
        let [e1, u1, l1] = self.spans[i + 1].map(|x| x as usize);
        ZigzagTrail {
            edges: &self.edges[e0..e1],
            kind: self.kinds[i],
            upper: &self.upper[u0..u1],
            lower: &self.lower[l0..l1],
        }
    }

    pub fn get(&self, i: usize) -> Option<ZigzagTrail<'_>> {
        (i < self.trail_count()).then(|| self.trail(i))
    }

    pub fn kind(&self, i: usize) -> TrailKind {
        self.kinds[i]
    }

    pub fn trail_of(&self, e: EdgeId) -> usize {
        self.edge_to_trail[e] as usize
    }

    pub fn counts(&self) -> KindCounts {
        self.counts
    }

    /// Trail holding the in-edges of `v`; `None` only for the root.
    pub fn lower_trail(&self, v: VertexId) -> Option<usize> {
        let t = self.lower_trail[v];
        (t != NONE).then_some(t as usize)
    }

    /// Trail holding the out-edges of `v`; `None` only for leaves.
    pub fn upper_trail(&self, v: VertexId) -> Option<usize> {
        let t = self.upper_trail[v];
        (t != NONE).then_some(t as usize)
    }

    pub fn delta_star(&self) -> usize {
        self.counts.w_fence
    }

    pub fn indices_of(&self, kind: TrailKind) -> impl Iterator<Item = usize> + '_ {
        self.kinds
            .iter()
            .enumerate()
            .filter(move |(_, &k)| k == kind)
            .map(|(i, _)| i)
    }
}

fn cmp_edges(n: &PhyloNetwork, a: EdgeId, b: EdgeId) -> Ordering {
    n.cmp_edges_by_name(a, b)
}

/// `[head-sibling, tail-sibling]` of every edge, `NONE` where absent.
/// Built from the edge list alone, pairing each edge with the first edge
/// seen at the same head (tail).
fn sibling_table(n: &PhyloNetwork) -> Vec<[u32; 2]> {
    let mut sib = vec![[NONE; 2]; n.edge_count()];
    let mut seen = vec![[NONE; 2]; n.vertex_count()];
    for (e, edge) in n.edges().iter().enumerate() {
        for (side, v) in [(0, edge.head), (1, edge.tail)] {
            let other = seen[v][side];
            if other == NONE {
                seen[v][side] = e as u32;
            } else {
                sib[e][side] = other;
                sib[other as usize][side] = e as u32;
            }
        }
    }
    sib
}

/// Walks from `start` alternating sides, beginning with side `first`
/// (0 = head, 1 = tail), and appends the visited edges (without `start`) to
/// `out`. Returns whether the walk closed.
fn walk(sib: &[[u32; 2]], start: EdgeId, first: usize, out: &mut Vec<EdgeId>) -> bool {
    let mut cur = start;
    let mut side = first;
    loop {
        let next = sib[cur][side];
        if next == NONE {
            return false;
        }
        let next = next as usize;
        if next == start {
            return true;
        }
        out.push(next);
        cur = next;
        side ^= 1;
    }
}

/// Pushes the endpoints of `seq` selected by `pick`, merging runs of equal
/// vertices (shared endpoints are adjacent in a trail).
fn push_distinct(out: &mut Vec<VertexId>, seq: &[EdgeId], closed: bool, pick: impl Fn(EdgeId) -> VertexId) {
    let from = out.len();
    for &e in seq {
        let v = pick(e);
        if out.len() == from || out[out.len() - 1] != v {
            out.push(v);
        }
    }
    if closed && out.len() - from > 1 && out[from] == out[out.len() - 1] {
        out.pop();
    }
}

/// Computes the unique maximal zig-zag trail decomposition in `O(|E|)`.
pub fn decompose(n: &PhyloNetwork) -> ZigzagDecomposition {
    let m = n.edge_count();
    assert!(m < NONE as usize && n.vertex_count() < NONE as usize, "network too large");
    let sib = sibling_table(n);

    let mut d = ZigzagDecomposition {
        edges: Vec::with_capacity(m),
        upper: Vec::with_capacity(m),
        lower: Vec::with_capacity(m),
        spans: Vec::with_capacity(m + 1),
        kinds: Vec::with_capacity(m),
        edge_to_trail: vec![NONE; m],
        counts: KindCounts::default(),
        lower_trail: Vec::new(),
        upper_trail: Vec::new(),
    };
    d.spans.push([0; 3]);
    let (mut forward, mut backward) = (Vec::new(), Vec::new());

    for e in 0..m {
        if d.edge_to_trail[e] != NONE {
            continue;
        }
        let index = d.kinds.len() as u32;
        let start = d.edges.len();
        forward.clear();
        let closed = walk(&sib, e, 0, &mut forward);
        if closed {
            d.edges.push(e);
            d.edges.extend_from_slice(&forward);
            canonical_cycle(n, &sib, &mut d.edges[start..]);
        } else {
            backward.clear();
            walk(&sib, e, 1, &mut backward);
            d.edges.extend(backward.iter().rev());
            d.edges.push(e);
            d.edges.extend_from_slice(&forward);
            let seq = &mut d.edges[start..];
            if seq.len() > 1 && cmp_edges(n, seq[seq.len() - 1], seq[0]) == Ordering::Less {
                seq.reverse();
            }
        }
        let seq = &d.edges[start..];
        for &f in seq {
            d.edge_to_trail[f] = index;
        }
        let kind = if closed {
            TrailKind::Crown
        } else if seq.len() % 2 == 1 {
            TrailKind::NFence
        } else if sib[seq[0]][1] as usize == seq[1] {
            TrailKind::MFence
        } else {
            TrailKind::WFence
        };
        push_distinct(&mut d.upper, seq, closed, |f| n.edge(f).tail);
        push_distinct(&mut d.lower, seq, closed, |f| n.edge(f).head);
        d.counts.bump(kind);
        d.kinds.push(kind);
        d.spans.push([d.edges.len() as u32, d.upper.len() as u32, d.lower.len() as u32]);
    }

    d.lower_trail = vec![NONE; n.vertex_count()];
    d.upper_trail = vec![NONE; n.vertex_count()];
    for (e, edge) in n.edges().iter().enumerate() {
        d.lower_trail[edge.head] = d.edge_to_trail[e];
        d.upper_trail[edge.tail] = d.edge_to_trail[e];
    }
    d
}

/// Rotates a closed trail to start at its smallest edge and to continue
/// towards that edge's head-sibling.
fn canonical_cycle(n: &PhyloNetwork, sib: &[[u32; 2]], seq: &mut [EdgeId]) {
    let len = seq.len();
    let start = (0..len)
        .min_by(|&a, &b| cmp_edges(n, seq[a], seq[b]))
        .expect("non-empty cycle");
    seq.rotate_left(start);
    if sib[seq[0]][0] as usize != seq[1] {
        seq[1..].reverse();
    }
}

/// `δ*(N)`: the number of maximal W-fences.
pub fn delta_star(n: &PhyloNetwork) -> usize {
    decompose(n).counts.w_fence
}

/// A network is tree-based iff it has no W-fence.
pub fn is_tree_based(n: &PhyloNetwork) -> bool {
    delta_star(n) == 0
}

/// `#M-fences - #W-fences == |X| - 1`. Holds for every valid network.
pub fn check_count_identity(n: &PhyloNetwork) -> bool {
    count_identity_holds(n, &decompose(n))
}

pub fn count_identity_holds(n: &PhyloNetwork, d: &ZigzagDecomposition) -> bool {
    let c = d.counts();
    c.m_fence as isize - c.w_fence as isize == n.leaf_count() as isize - 1
}
