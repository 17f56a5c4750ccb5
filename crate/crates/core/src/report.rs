//! Machine-readable records. Field order is fixed so JSON output is
//! byte-stable for a given input.

use serde::Serialize;

use crate::mw::{FastResult, MwMatching};
use crate::network::{PhyloNetwork, VertexId};
use crate::oracle::OracleResult;
use crate::treebase::CoveringSubtree;
use crate::zigzag::{count_identity_holds, KindCounts, TrailKind, ZigzagDecomposition, ZigzagTrail};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrailRecord {
    pub index: usize,
    pub kind: TrailKind,
    pub edges: Vec<[String; 2]>,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatsRecord {
    pub vertices: usize,
    pub edges: usize,
    pub leaves: usize,
    pub counts: KindCounts,
    pub delta_star: usize,
    pub identity_ok: bool,
    pub tree_based: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trails: Option<Vec<TrailRecord>>,
}

fn sorted_names(n: &PhyloNetwork, vs: &[VertexId]) -> Vec<String> {
    let mut out: Vec<String> = vs.iter().map(|&v| n.name(v).to_owned()).collect();
    out.sort();
    out
}

pub fn trail_record(n: &PhyloNetwork, index: usize, t: ZigzagTrail<'_>) -> TrailRecord {
    TrailRecord {
        index,
        kind: t.kind(),
        edges: t
            .edges()
            .iter()
            .map(|&e| {
                let (a, b) = n.edge_names(e);
                [a.to_owned(), b.to_owned()]
            })
            .collect(),
        upper: sorted_names(n, t.upper()),
        lower: sorted_names(n, t.lower()),
    }
}

pub fn stats_record(n: &PhyloNetwork, d: &ZigzagDecomposition, with_trails: bool) -> StatsRecord {
    let counts = d.counts();
    StatsRecord {
        vertices: n.vertex_count(),
        edges: n.edge_count(),
        leaves: n.leaf_count(),
        counts,
        delta_star: counts.w_fence,
        identity_ok: count_identity_holds(n, d),
        tree_based: counts.w_fence == 0,
        trails: with_trails.then(|| {
            d.trails()
                .enumerate()
                .map(|(i, t)| trail_record(n, i, t))
                .collect()
        }),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fast,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchRecord {
    pub m_trail: usize,
    pub w_trail: usize,
    pub vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    /// `None` when the fast path does not apply.
    pub fast_eta: Option<usize>,
    pub oracle_eta: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaReport {
    pub method: Method,
    pub eta: usize,
    pub delta_star: usize,
    pub saturated: bool,
    pub matching: Vec<MatchRecord>,
    pub uncovered: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckRecord>,
}

pub fn matching_records(n: &PhyloNetwork, m: &MwMatching) -> Vec<MatchRecord> {
    m.pairs
        .iter()
        .map(|p| MatchRecord {
            m_trail: p.m_trail,
            w_trail: p.w_trail,
            vertex: n.name(p.vertex).to_owned(),
        })
        .collect()
}

fn uncovered(n: &PhyloNetwork, t: &CoveringSubtree) -> Vec<String> {
    t.uncovered_names(n).into_iter().map(str::to_owned).collect()
}

/// Report for an applicable fast path together with the subtree built by
/// resolution.
pub fn fast_report(n: &PhyloNetwork, d: &ZigzagDecomposition, fast: &FastResult, tree: &CoveringSubtree) -> EtaReport {
    EtaReport {
        method: Method::Fast,
        eta: tree.uncovered().len(),
        delta_star: d.counts().w_fence,
        saturated: fast.matching().saturated,
        matching: matching_records(n, fast.matching()),
        uncovered: uncovered(n, tree),
        explored: None,
        check: None,
    }
}

pub fn oracle_report(n: &PhyloNetwork, d: &ZigzagDecomposition, fast: &FastResult, result: &OracleResult) -> EtaReport {
    EtaReport {
        method: Method::Oracle,
        eta: result.eta,
        delta_star: d.counts().w_fence,
        saturated: fast.matching().saturated,
        matching: matching_records(n, fast.matching()),
        uncovered: uncovered(n, &result.witness),
        explored: Some(result.explored),
        check: None,
    }
}

/// Fast and exact values agree when the fast path applies and matches, or
/// when it does not apply and the exact value exceeds `δ*`.
pub fn check_record(fast: &FastResult, delta_star: usize, oracle_eta: usize) -> CheckRecord {
    let fast_eta = fast.eta();
    let agree = match fast_eta {
        Some(e) => e == oracle_eta,
        None => oracle_eta > delta_star,
    };
    CheckRecord {
        fast_eta,
        oracle_eta,
        agree,
    }
}

impl KindCounts {
    pub fn total(&self) -> usize {
        TrailKind::ALL.iter().map(|&k| self.get(k)).sum()
    }
}
