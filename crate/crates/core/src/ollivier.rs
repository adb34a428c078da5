//! Directed Ollivier-Ricci curvature.
//!
//! For an edge `x -> y`, `m_x` is uniform on the in-neighbours of `x` and
//! `m_y` uniform on the out-neighbours of `y` (self-loops ignored). An empty
//! support puts the whole mass on the endpoint itself and sets a fallback
//! flag. Then `kappa = 1 - W1(m_x, m_y)` with directed hop distances as ground
//! cost. Every support pair is joined by `x' -> x -> y -> y'`, so
//! `W1 <= 3` and `kappa` lies in `[-2, 1]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, VertexId};
use crate::transport::{solve_transport, TransportProblem, TransportSolution};

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedMeasurePair {
    pub source_support: Vec<(VertexId, f64)>,
    pub target_support: Vec<(VertexId, f64)>,
    pub source_fallback: bool,
    pub target_fallback: bool,
}

impl DirectedMeasurePair {
    pub fn fallback(&self) -> bool {
        self.source_fallback || self.target_fallback
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeOllivierValue {
    pub edge: EdgeId,
    pub kappa: f64,
    pub fallback: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexOllivierValues {
    pub vertex: VertexId,
    pub o_in: f64,
    pub o_out: f64,
    pub o_total: f64,
}

fn uniform(support: Vec<VertexId>, own: VertexId) -> (Vec<(VertexId, f64)>, bool) {
    if support.is_empty() {
        return (vec![(own, 1.0)], true);
    }
    let mass = 1.0 / support.len() as f64;
    (support.into_iter().map(|v| (v, mass)).collect(), false)
}

fn non_loop_edge(g: &DirectedGraph, e: EdgeId) -> Result<(VertexId, VertexId)> {
    let edge = g.edge(e)?;
    if edge.is_self_loop() {
        return Err(Error::SelfLoop(e));
    }
    Ok((edge.source, edge.target))
}

/// Neighbourhood measures of the endpoints of `e`.
pub fn build_measures(g: &DirectedGraph, e: EdgeId) -> Result<DirectedMeasurePair> {
    let (x, y) = non_loop_edge(g, e)?;
    let (source_support, source_fallback) = uniform(g.in_neighbors(x).collect(), x);
    let (target_support, target_fallback) = uniform(g.out_neighbors(y).collect(), y);
    Ok(DirectedMeasurePair {
        source_support,
        target_support,
        source_fallback,
        target_fallback,
    })
}

fn require_unit_weights(g: &DirectedGraph) -> Result<()> {
    if g.edges().iter().any(|e| e.weight != 1.0) {
        return Err(Error::WeightedGraph);
    }
    Ok(())
}

fn hop_distance(g: &DirectedGraph, s: VertexId, t: VertexId) -> Result<f64> {
    if let Some(d) = g.hop_distance_within3(s, t) {
        return Ok(d as f64);
    }
    // Unreachable for supports of an existing edge; kept for completeness.
    let d =
        g.shortest_path_lengths(s)?[t].ok_or_else(|| Error::InvalidParameter(format!("no path from {s} to {t}")))?;
    Ok(d as f64)
}

/// The transport problem whose optimal cost is `W1(m_x, m_y)` for `e`.
pub fn transport_problem(g: &DirectedGraph, measures: &DirectedMeasurePair) -> Result<TransportProblem> {
    let mut cost = Vec::with_capacity(measures.source_support.len() * measures.target_support.len());
    for &(s, _) in &measures.source_support {
        for &(t, _) in &measures.target_support {
            cost.push(hop_distance(g, s, t)?);
        }
    }
    TransportProblem::from_flat(
        measures.source_support.iter().map(|&(_, m)| m).collect(),
        measures.target_support.iter().map(|&(_, m)| m).collect(),
        cost,
    )
}

/// Curvature of `e` with its measures and the certified transport solution.
pub fn or_edge_detailed(g: &DirectedGraph, e: EdgeId) -> Result<(f64, DirectedMeasurePair, TransportSolution)> {
    require_unit_weights(g)?;
    let measures = build_measures(g, e)?;
    let solution = solve_transport(&transport_problem(g, &measures)?)?;
    Ok((1.0 - solution.cost, measures, solution))
}

pub fn or_edge_directed(g: &DirectedGraph, e: EdgeId) -> Result<f64> {
    or_edge_detailed(g, e).map(|(kappa, _, _)| kappa)
}

/// Curvature of every non-loop edge, in edge order. Computed in parallel;
/// the result does not depend on the thread count.
pub fn edge_ollivier(g: &DirectedGraph) -> Result<Vec<EdgeOllivierValue>> {
    require_unit_weights(g)?;
    let edges: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| !g.is_self_loop(e)).collect();
    edges
        .into_par_iter()
        .map(|edge| {
            let (kappa, measures, _) = or_edge_detailed(g, edge)?;
            Ok(EdgeOllivierValue {
                edge,
                kappa,
                fallback: measures.fallback(),
            })
        })
        .collect()
}

/// In, out and total vertex curvature from per-edge values.
pub fn vertex_ollivier(g: &DirectedGraph, values: &[EdgeOllivierValue]) -> Vec<VertexOllivierValues> {
    let per_edge: Vec<Option<f64>> = {
        let mut v = vec![None; g.edge_count()];
        for value in values {
            v[value.edge] = Some(value.kappa);
        }
        v
    };
    let (o_in, o_out) = crate::forman::in_out_sums(g, &per_edge);
    (0..g.vertex_count())
        .map(|vertex| VertexOllivierValues {
            vertex,
            o_in: o_in[vertex],
            o_out: o_out[vertex],
            o_total: o_in[vertex] - o_out[vertex],
        })
        .collect()
}
