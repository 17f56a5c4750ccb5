//! Wall-clock scaling of decomposition plus the fast path.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::genkit::{random_network, GenError, GenParams};
use crate::mw::eta_fast_with;
use crate::network::PhyloNetwork;
use crate::zigzag::decompose;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub target_edges: usize,
    pub edges: usize,
    pub vertices: usize,
    pub w_fences: usize,
    pub applicable: bool,
    /// Best of the repeats.
    pub seconds: f64,
    pub ns_per_edge: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearityFit {
    /// Slope of ns/edge against log10(edges).
    pub slope: f64,
    pub intercept: f64,
    /// Ratio of the fitted ns/edge at the two ends of the size range,
    /// larger over smaller. 1.0 is perfectly linear.
    pub endpoint_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub fit: Option<LinearityFit>,
}

/// Generator parameters that give about `target_edges` edges: a binary
/// tree on `L` leaves has `2L - 2` edges and each reticulation adds three.
pub fn params_for_edges(target_edges: usize, seed: u64) -> GenParams {
    let leaves = (target_edges / 4).max(2);
    let tree_edges = 2 * leaves - 2;
    let reticulations = target_edges.saturating_sub(tree_edges) / 3;
    GenParams::new(leaves, reticulations, seed)
}

/// Time of one decomposition + fast-path evaluation.
pub fn time_once(n: &PhyloNetwork) -> (Duration, usize, bool) {
    let start = Instant::now();
    let d = decompose(n);
    let fast = eta_fast_with(n, &d);
    let elapsed = start.elapsed();
    (elapsed, d.counts().w_fence, fast.eta().is_some())
}

pub fn bench_size(target_edges: usize, seed: u64, repeats: usize) -> Result<BenchRow, GenError> {
    let n = random_network(&params_for_edges(target_edges, seed))?;
    let mut best = Duration::MAX;
    let mut w_fences = 0;
    let mut applicable = false;
    for _ in 0..repeats.max(1) {
        let (t, w, a) = time_once(&n);
        best = best.min(t);
        w_fences = w;
        applicable = a;
    }
    let seconds = best.as_secs_f64();
    Ok(BenchRow {
        target_edges,
        edges: n.edge_count(),
        vertices: n.vertex_count(),
        w_fences,
        applicable,
        seconds,
        ns_per_edge: seconds * 1e9 / n.edge_count() as f64,
    })
}

pub fn run_bench(sizes: &[usize], seed: u64, repeats: usize) -> Result<BenchReport, GenError> {
    let rows = sizes
        .iter()
        .map(|&s| bench_size(s, seed, repeats))
        .collect::<Result<Vec<_>, _>>()?;
    let fit = linearity_fit(&rows);
    Ok(BenchReport { seed, rows, fit })
}

/// Least-squares line through `(log10 edges, ns/edge)`. Needs at least two
/// distinct sizes.
pub fn linearity_fit(rows: &[BenchRow]) -> Option<LinearityFit> {
    if rows.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.edges as f64).log10()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.ns_per_edge).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (a, b) = (intercept + slope * lo, intercept + slope * hi);
    let endpoint_ratio = if a <= 0.0 || b <= 0.0 {
        f64::INFINITY
    } else {
        a.max(b) / a.min(b)
    };
    Some(LinearityFit {
        slope,
        intercept,
        endpoint_ratio,
    })
}
