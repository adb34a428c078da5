//! Directed centralities, communication efficiency and rank statistics.
//!
//! Shortest-path passes run one source per task. Sources are grouped into
//! fixed-size blocks that are summed in source order and then combined in
//! block order, so floating-point results do not depend on the thread count.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, VertexId};

const SOURCE_BLOCK: usize = 32;

pub const PAGERANK_DAMPING: f64 = 0.85;
pub const PAGERANK_TOLERANCE: f64 = 1e-10;
pub const PAGERANK_MAX_ITER: usize = 1000;

/// Compressed out-adjacency over an arbitrary edge subset.
#[derive(Debug, Clone)]
pub(crate) struct Csr {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    edge_ids: Vec<EdgeId>,
}

impl Csr {
    /// Out-adjacency of the non-loop edges of `g` accepted by `keep`.
    pub(crate) fn new(g: &DirectedGraph, mut keep: impl FnMut(EdgeId) -> bool) -> Self {
        let n = g.vertex_count();
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::with_capacity(g.edge_count());
        let mut edge_ids = Vec::with_capacity(g.edge_count());
        for v in 0..n {
            for &e in g.out_adjacency(v) {
                let t = g.edges()[e].target;
                if t != v && keep(e) {
                    targets.push(t);
                    edge_ids.push(e);
                }
            }
            offsets[v + 1] = targets.len();
        }
        Csr {
            offsets,
            targets,
            edge_ids,
        }
    }

    fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    fn out(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }
}

/// Combines per-source partial sums deterministically.
fn block_reduce<T, F>(n: usize, width: usize, per_source: F) -> Vec<T>
where
    T: Copy + Default + std::ops::AddAssign + Send,
    F: Fn(VertexId, &mut [T]) + Sync,
{
    let blocks: Vec<Vec<T>> = (0..n.div_ceil(SOURCE_BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut acc = vec![T::default(); width];
            for s in b * SOURCE_BLOCK..((b + 1) * SOURCE_BLOCK).min(n) {
                per_source(s, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![T::default(); width];
    for block in blocks {
        for (t, x) in total.iter_mut().zip(block) {
            *t += x;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct Betweenness {
    pub edge: Vec<f64>,
    pub vertex: Vec<f64>,
}

fn brandes_source(csr: &Csr, s: VertexId, edge_acc: &mut [f64], vertex_acc: &mut [f64]) {
    let n = csr.vertex_count();
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    sigma[s] = 1.0;
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for k in csr.out(v) {
            let w = csr.targets[k];
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    let mut delta = vec![0.0f64; n];
    for &v in order.iter().rev() {
        for k in csr.out(v) {
            let w = csr.targets[k];
            if dist[w] == dist[v] + 1 {
                let share = sigma[v] / sigma[w] * (1.0 + delta[w]);
                edge_acc[csr.edge_ids[k]] += share;
                delta[v] += share;
            }
        }
        if v != s {
            vertex_acc[v] += delta[v];
        }
    }
}

/// Unnormalised edge and vertex betweenness over ordered pairs.
pub fn betweenness(g: &DirectedGraph) -> Betweenness {
    let csr = Csr::new(g, |_| true);
    let (n, m) = (g.vertex_count(), g.edge_count());
    let total = block_reduce(n, m + n, |s, acc| {
        let (edge_acc, vertex_acc) = acc.split_at_mut(m);
        brandes_source(&csr, s, edge_acc, vertex_acc);
    });
    Betweenness {
        edge: total[..m].to_vec(),
        vertex: total[m..].to_vec(),
    }
}

/// Self-loops carry no shortest paths and score 0.
pub fn edge_betweenness(g: &DirectedGraph) -> Vec<f64> {
    betweenness(g).edge
}

pub fn vertex_betweenness(g: &DirectedGraph) -> Vec<f64> {
    betweenness(g).vertex
}

/// Damped random-surfer stationary distribution. Dangling vertices spread
/// their mass uniformly; self-loops count as ordinary out-edges.
pub fn pagerank(g: &DirectedGraph, damping: f64, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "damping must lie in (0, 1), got {damping}"
        )));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let out_degree: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let uniform = 1.0 / n as f64;
    let mut x = vec![uniform; n];
    for _ in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&v| out_degree[v] == 0).map(|v| x[v]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        let next: Vec<f64> = (0..n)
            .map(|v| {
                let inflow: f64 = g
                    .in_adjacency(v)
                    .iter()
                    .map(|&e| {
                        let u = g.edges()[e].source;
                        x[u] / out_degree[u] as f64
                    })
                    .sum();
                base + damping * inflow
            })
            .collect();
        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if change < tol {
            let total: f64 = x.iter().sum();
            x.iter_mut().for_each(|p| *p /= total);
            return Ok(x);
        }
    }
    Err(Error::NoConvergence(max_iter))
}

fn inverse_distance_sum(csr: &Csr, s: VertexId, dist: &mut [u32], queue: &mut VecDeque<VertexId>) -> f64 {
    dist.fill(u32::MAX);
    dist[s] = 0;
    queue.clear();
    queue.push_back(s);
    let mut sum = 0.0;
    while let Some(v) = queue.pop_front() {
        for k in csr.out(v) {
            let w = csr.targets[k];
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                sum += 1.0 / dist[w] as f64;
                queue.push_back(w);
            }
        }
    }
    sum
}

pub(crate) fn efficiency_of(csr: &Csr) -> Result<f64> {
    let n = csr.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "communication efficiency needs at least 2 vertices, got {n}"
        )));
    }
    let partial: Vec<f64> = (0..n.div_ceil(SOURCE_BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut dist = vec![u32::MAX; n];
            let mut queue = VecDeque::new();
            (b * SOURCE_BLOCK..((b + 1) * SOURCE_BLOCK).min(n))
                .map(|s| inverse_distance_sum(csr, s, &mut dist, &mut queue))
                .sum()
        })
        .collect();
    let total: f64 = partial.iter().sum();
    Ok(total / (n as f64 * (n - 1) as f64))
}

/// Mean inverse directed hop distance over ordered pairs of distinct
/// vertices; unreachable pairs contribute 0.
pub fn communication_efficiency(g: &DirectedGraph) -> Result<f64> {
    efficiency_of(&Csr::new(g, |_| true))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationResult {
    pub rho: f64,
    pub n: usize,
}

/// Ranks starting at 1, ties receiving their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // Positions i..j (0-based) share ranks i+1..=j.
        let rank = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    if x.len() != y.len() {
        return Err(Error::InvalidParameter(format!(
            "spearman needs equal lengths, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InvalidParameter("spearman needs at least 2 observations".into()));
    }
    if let Some(bad) = x.iter().chain(y).find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "spearman input must be finite, got {bad}"
        )));
    }
    let rho = pearson(&average_ranks(x), &average_ranks(y)).ok_or(Error::CorrelationUndefined("constant input"))?;
    Ok(CorrelationResult { rho, n: x.len() })
}

/// Equal-width bins over `[min, max]`, right-open except the last. A zero
/// range uses unit-width bins starting at the common value.
pub fn histogram(values: &[f64], bins: usize) -> Result<Vec<(f64, usize)>> {
    if bins == 0 {
        return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
    }
    if values.is_empty() {
        return Err(Error::InvalidParameter("histogram of an empty sample".into()));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "histogram input must be finite, got {bad}"
        )));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = if max > min { (max - min) / bins as f64 } else { 1.0 };
    let mut counts = vec![0usize; bins];
    for &v in values {
        let k = (((v - min) / width).floor() as usize).min(bins - 1);
        counts[k] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| (min + k as f64 * width, c))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexMetricRow {
    pub vertex: VertexId,
    pub in_degree: usize,
    pub out_degree: usize,
    pub betweenness: f64,
    pub pagerank: f64,
}

/// Degrees (adjacency counts), betweenness and PageRank with default
/// parameters for every vertex.
pub fn vertex_metrics(g: &DirectedGraph) -> Result<Vec<VertexMetricRow>> {
    let bc = vertex_betweenness(g);
    let pr = pagerank(g, PAGERANK_DAMPING, PAGERANK_TOLERANCE, PAGERANK_MAX_ITER)?;
    Ok((0..g.vertex_count())
        .map(|v| VertexMetricRow {
            vertex: v,
            in_degree: g.in_degree(v),
            out_degree: g.out_degree(v),
            betweenness: bc[v],
            pagerank: pr[v],
        })
        .collect())
}
