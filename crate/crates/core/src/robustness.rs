//! Edge- and vertex-removal experiments tracked by communication efficiency.
//!
//! Items are removed in batches of `ceil(step_fraction * total)` until
//! `ceil(max_fraction * total)` are gone, recording efficiency after each
//! batch. Rankings sort ascending by score with ties broken by ascending
//! index; "desc" kinds sort by negated score. Removed vertices stay in the
//! efficiency denominator as isolated vertices.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forman::{edge_forman, vertex_forman, FaceMembership};
use crate::graph::{DirectedGraph, FaceIndex};
use crate::metrics::{betweenness, efficiency_of, Csr};
use crate::ollivier::{edge_ollivier, vertex_ollivier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Edge,
    Vertex,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Edge => "edge",
            Family::Vertex => "vertex",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    Random,
    EdgeOrAsc,
    EdgeFrAsc,
    EdgeAfrAsc,
    EdgeEbcDesc,
    VertexIorAsc,
    VertexOorAsc,
    VertexIfrAsc,
    VertexOfrAsc,
    VertexIafrAsc,
    VertexOafrAsc,
    VertexIndegDesc,
    VertexOutdegDesc,
    VertexBcDesc,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 14] = [
        StrategyKind::Random,
        StrategyKind::EdgeOrAsc,
        StrategyKind::EdgeFrAsc,
        StrategyKind::EdgeAfrAsc,
        StrategyKind::EdgeEbcDesc,
        StrategyKind::VertexIorAsc,
        StrategyKind::VertexOorAsc,
        StrategyKind::VertexIfrAsc,
        StrategyKind::VertexOfrAsc,
        StrategyKind::VertexIafrAsc,
        StrategyKind::VertexOafrAsc,
        StrategyKind::VertexIndegDesc,
        StrategyKind::VertexOutdegDesc,
        StrategyKind::VertexBcDesc,
    ];

    pub fn name(self) -> &'static str {
        use StrategyKind::*;
        match self {
            Random => "random",
            EdgeOrAsc => "edge_or_asc",
            EdgeFrAsc => "edge_fr_asc",
            EdgeAfrAsc => "edge_afr_asc",
            EdgeEbcDesc => "edge_ebc_desc",
            VertexIorAsc => "vertex_ior_asc",
            VertexOorAsc => "vertex_oor_asc",
            VertexIfrAsc => "vertex_ifr_asc",
            VertexOfrAsc => "vertex_ofr_asc",
            VertexIafrAsc => "vertex_iafr_asc",
            VertexOafrAsc => "vertex_oafr_asc",
            VertexIndegDesc => "vertex_indeg_desc",
            VertexOutdegDesc => "vertex_outdeg_desc",
            VertexBcDesc => "vertex_bc_desc",
        }
    }

    /// `None` for `random`, which applies to both families.
    pub fn family(self) -> Option<Family> {
        match self {
            StrategyKind::Random => None,
            k if k.name().starts_with("edge_") => Some(Family::Edge),
            _ => Some(Family::Vertex),
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown removal strategy `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RemovalStrategy {
    pub kind: StrategyKind,
    /// Only used by `random`.
    pub seed: u64,
}

impl RemovalStrategy {
    pub fn new(kind: StrategyKind, seed: u64) -> Self {
        RemovalStrategy { kind, seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankingMode {
    /// Rank once on the intact graph.
    #[default]
    Static,
    /// Re-rank the surviving items after every batch.
    Recompute,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemovalConfig {
    pub step_fraction: f64,
    pub max_fraction: f64,
    pub mode: RankingMode,
}

impl Default for RemovalConfig {
    fn default() -> Self {
        RemovalConfig {
            step_fraction: 0.02,
            max_fraction: 0.5,
            mode: RankingMode::Static,
        }
    }
}

impl RemovalConfig {
    fn validate(&self) -> Result<()> {
        let RemovalConfig {
            step_fraction: s,
            max_fraction: m,
            ..
        } = *self;
        if !(s > 0.0 && s <= m && m <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < step_fraction <= max_fraction <= 1, got step {s}, max {m}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalCurve {
    pub strategy: RemovalStrategy,
    /// `(fraction removed, efficiency)`, starting at fraction 0.
    pub points: Vec<(f64, f64)>,
}

impl RemovalCurve {
    /// Trapezoidal area under the efficiency curve.
    pub fn auc(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyComparison {
    pub curve: RemovalCurve,
    pub auc: f64,
}

/// `ceil(x)` that ignores float noise just above an integer.
fn count_for(fraction: f64, total: usize) -> usize {
    ((fraction * total as f64 - 1e-9).ceil().max(0.0) as usize).min(total)
}

fn check_family(kind: StrategyKind, family: Family) -> Result<()> {
    match kind.family() {
        Some(f) if f != family => Err(Error::StrategyFamily {
            strategy: kind.name(),
            family: match family {
                Family::Edge => "edge",
                Family::Vertex => "vertex",
            },
        }),
        _ => Ok(()),
    }
}

fn forman_values(g: &DirectedGraph) -> Vec<crate::forman::EdgeFormanValues> {
    edge_forman(g, &FaceIndex::new(g), FaceMembership::AnyEdge)
}

/// Score per edge, lower removed first; self-loops rank last.
fn edge_scores(g: &DirectedGraph, kind: StrategyKind) -> Result<Vec<f64>> {
    let mut scores = vec![f64::INFINITY; g.edge_count()];
    match kind {
        StrategyKind::EdgeFrAsc | StrategyKind::EdgeAfrAsc => {
            for v in forman_values(g) {
                scores[v.edge] = if kind == StrategyKind::EdgeFrAsc { v.fr } else { v.afr };
            }
        }
        StrategyKind::EdgeOrAsc => {
            for v in edge_ollivier(g)? {
                scores[v.edge] = v.kappa;
            }
        }
        StrategyKind::EdgeEbcDesc => {
            for (e, b) in betweenness(g).edge.into_iter().enumerate() {
                if !g.is_self_loop(e) {
                    scores[e] = -b;
                }
            }
        }
        _ => unreachable!("edge strategy expected"),
    }
    Ok(scores)
}

fn vertex_scores(g: &DirectedGraph, kind: StrategyKind) -> Result<Vec<f64>> {
    use StrategyKind::*;
    let n = g.vertex_count();
    Ok(match kind {
        VertexIfrAsc | VertexOfrAsc | VertexIafrAsc | VertexOafrAsc => vertex_forman(g, &forman_values(g))
            .into_iter()
            .map(|v| match kind {
                VertexIfrAsc => v.f_in,
                VertexOfrAsc => v.f_out,
                VertexIafrAsc => v.afr_in,
                _ => v.afr_out,
            })
            .collect(),
        VertexIorAsc | VertexOorAsc => {
            let values = edge_ollivier(g)?;
            vertex_ollivier(g, &values)
                .into_iter()
                .map(|v| if kind == VertexIorAsc { v.o_in } else { v.o_out })
                .collect()
        }
        VertexIndegDesc => (0..n).map(|v| -(g.in_degree(v) as f64)).collect(),
        VertexOutdegDesc => (0..n).map(|v| -(g.out_degree(v) as f64)).collect(),
        VertexBcDesc => betweenness(g).vertex.into_iter().map(|b| -b).collect(),
        _ => unreachable!("vertex strategy expected"),
    })
}

fn rank(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    order
}

fn shuffled(total: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..total).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

fn efficiency_with(g: &DirectedGraph, alive: &[bool]) -> Result<f64> {
    efficiency_of(&Csr::new(g, |e| alive[e]))
}

/// Next `count` items to remove: a prefix of the static order, or the best
/// survivors of a fresh ranking on the current graph.
struct Picker<'a> {
    g: &'a DirectedGraph,
    strategy: RemovalStrategy,
    family: Family,
    mode: RankingMode,
    order: Vec<usize>,
}

impl<'a> Picker<'a> {
    fn new(g: &'a DirectedGraph, strategy: RemovalStrategy, family: Family, mode: RankingMode) -> Result<Self> {
        let total = match family {
            Family::Edge => g.edge_count(),
            Family::Vertex => g.vertex_count(),
        };
        let order = match (strategy.kind, mode) {
            (StrategyKind::Random, _) => shuffled(total, strategy.seed),
            (kind, RankingMode::Static) => rank(&Self::scores(g, kind, family)?),
            (_, RankingMode::Recompute) => Vec::new(),
        };
        Ok(Picker {
            g,
            strategy,
            family,
            mode,
            order,
        })
    }

    fn scores(g: &DirectedGraph, kind: StrategyKind, family: Family) -> Result<Vec<f64>> {
        match family {
            Family::Edge => edge_scores(g, kind),
            Family::Vertex => vertex_scores(g, kind),
        }
    }

    fn next(&self, removed: &[bool], alive_edges: &[bool], done: usize, count: usize) -> Result<Vec<usize>> {
        if self.strategy.kind == StrategyKind::Random || self.mode == RankingMode::Static {
            return Ok(self.order[done..done + count].to_vec());
        }
        let (current, kept) = self.g.retain_edges(|e| alive_edges[e]);
        let scores = Self::scores(&current, self.strategy.kind, self.family)?;
        let picked = match self.family {
            Family::Edge => rank(&scores).into_iter().map(|e| kept[e]).take(count).collect(),
            Family::Vertex => rank(&scores).into_iter().filter(|&v| !removed[v]).take(count).collect(),
        };
        Ok(picked)
    }
}

fn run_removal(
    g: &DirectedGraph,
    strategy: RemovalStrategy,
    family: Family,
    cfg: &RemovalConfig,
) -> Result<RemovalCurve> {
    cfg.validate()?;
    check_family(strategy.kind, family)?;
    let total = match family {
        Family::Edge => g.edge_count(),
        Family::Vertex => g.vertex_count(),
    };
    let picker = Picker::new(g, strategy, family, cfg.mode)?;
    let mut alive = vec![true; g.edge_count()];
    let mut removed = vec![false; total];
    let mut points = vec![(0.0, efficiency_with(g, &alive)?)];
    let batch = count_for(cfg.step_fraction, total).max(1);
    let limit = count_for(cfg.max_fraction, total);
    let mut done = 0;
    while done < limit {
        let count = batch.min(limit - done);
        for item in picker.next(&removed, &alive, done, count)? {
            removed[item] = true;
            match family {
                Family::Edge => alive[item] = false,
                Family::Vertex => {
                    for &e in g.in_adjacency(item).iter().chain(g.out_adjacency(item)) {
                        alive[e] = false;
                    }
                }
            }
        }
        done += count;
        points.push((done as f64 / total as f64, efficiency_with(g, &alive)?));
    }
    Ok(RemovalCurve { strategy, points })
}

pub fn run_edge_removal(g: &DirectedGraph, strategy: RemovalStrategy, cfg: &RemovalConfig) -> Result<RemovalCurve> {
    run_removal(g, strategy, Family::Edge, cfg)
}

pub fn run_vertex_removal(g: &DirectedGraph, strategy: RemovalStrategy, cfg: &RemovalConfig) -> Result<RemovalCurve> {
    run_removal(g, strategy, Family::Vertex, cfg)
}

/// Runs every strategy against `g` and reports the area under each curve.
pub fn compare_strategies(
    g: &DirectedGraph,
    strategies: &[RemovalStrategy],
    family: Family,
    cfg: &RemovalConfig,
) -> Result<Vec<StrategyComparison>> {
    for s in strategies {
        check_family(s.kind, family)?;
    }
    strategies
        .par_iter()
        .map(|&s| {
            let curve = run_removal(g, s, family, cfg)?;
            let auc = curve.auc();
            Ok(StrategyComparison { curve, auc })
        })
        .collect()
}
