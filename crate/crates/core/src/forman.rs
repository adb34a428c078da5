//! Forman-Ricci (FR) and augmented Forman-Ricci (AFR) curvature.
//!
//! For a directed edge `e = v1 -> v2` only the edges entering `v1` and the
//! edges leaving `v2` take part, so the curvature follows the direction of
//! flow along `e`:
//!
//! ```text
//! F(e) = w_e * ( w_v1/w_e - sum_{e' into v1}   w_v1 / sqrt(w_e w_e')
//!              + w_v2/w_e - sum_{e' out of v2} w_v2 / sqrt(w_e w_e') )
//! ```
//!
//! The augmented form adds `w_e / w_t` for every feed-forward-loop face `t`
//! containing `e` and drops from the two sums every neighbouring edge that
//! bounds a common face with `e`. With unit weights this reduces to
//! `F(e) = 2 - indeg(v1) - outdeg(v2)` and `F#(e) = F(e) + m(e) + p(e)`.
//!
//! Self-loops never contribute and have no curvature of their own.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, FaceIndex, UndirectedGraph, VertexId};

/// Which faces count as containing an edge in the augmented curvature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum FaceMembership {
    /// The edge may sit anywhere on the face.
    #[default]
    AnyEdge,
    /// Only faces for which the edge is the direct `x -> y` edge.
    DirectEdgeOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeFormanValues {
    pub edge: EdgeId,
    pub fr: f64,
    pub afr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexFormanValues {
    pub vertex: VertexId,
    pub f_in: f64,
    pub f_out: f64,
    pub f_total: f64,
    pub afr_in: f64,
    pub afr_out: f64,
}

fn non_loop_edge(g: &DirectedGraph, e: EdgeId) -> Result<(VertexId, VertexId, f64)> {
    let edge = g.edge(e)?;
    if edge.is_self_loop() {
        return Err(Error::SelfLoop(e));
    }
    Ok((edge.source, edge.target, edge.weight))
}

/// Directed Forman-Ricci curvature of edge `e`.
pub fn fr_edge_directed(g: &DirectedGraph, e: EdgeId) -> Result<f64> {
    let (v1, v2, we) = non_loop_edge(g, e)?;
    let (wv1, wv2) = (g.vertex_weight(v1), g.vertex_weight(v2));
    let edges = g.edges();
    let spread = |wv: f64, adj: &[EdgeId]| -> f64 {
        adj.iter()
            .filter(|&&f| f != e && !edges[f].is_self_loop())
            .map(|&f| wv / (we * edges[f].weight).sqrt())
            .sum()
    };
    let tail = wv1 / we - spread(wv1, g.in_adjacency(v1));
    let head = wv2 / we - spread(wv2, g.out_adjacency(v2));
    Ok(we * (tail + head))
}

/// Directed augmented Forman-Ricci curvature of edge `e`.
///
/// A neighbouring edge is dropped from the negative sums once if it shares
/// at least one counted face with `e`, regardless of how many.
pub fn afr_edge_directed(g: &DirectedGraph, e: EdgeId, faces: &FaceIndex, membership: FaceMembership) -> Result<f64> {
    let (v1, v2, we) = non_loop_edge(g, e)?;
    let (wv1, wv2) = (g.vertex_weight(v1), g.vertex_weight(v2));
    let edges = g.edges();

    let mut face_term = 0.0;
    let mut parallel: Vec<EdgeId> = Vec::new();
    for &id in faces.face_ids(e) {
        let face = faces.faces()[id];
        if membership == FaceMembership::DirectEdgeOnly && face.direct_edge != e {
            continue;
        }
        face_term += we / face.weight;
        parallel.extend(face.edges().into_iter().filter(|&f| f != e));
    }

    let spread = |wv: f64, adj: &[EdgeId]| -> f64 {
        adj.iter()
            .filter(|&&f| f != e && !edges[f].is_self_loop() && !parallel.contains(&f))
            .map(|&f| wv / (we * edges[f].weight).sqrt())
            .sum()
    };
    let negative = spread(wv1, g.in_adjacency(v1)) + spread(wv2, g.out_adjacency(v2));
    Ok(we * (face_term + wv1 / we + wv2 / we - negative))
}

/// Forman-Ricci curvature of edge `e` in an undirected graph: every other
/// non-loop edge at either endpoint contributes.
pub fn fr_edge_undirected(g: &UndirectedGraph, e: EdgeId) -> Result<f64> {
    afr_undirected_impl(g, e, false)
}

/// Augmented Forman-Ricci curvature of `e` with the undirected triangles as
/// unit-weight faces.
pub fn afr_edge_undirected(g: &UndirectedGraph, e: EdgeId) -> Result<f64> {
    afr_undirected_impl(g, e, true)
}

fn afr_undirected_impl(g: &UndirectedGraph, e: EdgeId, with_faces: bool) -> Result<f64> {
    let (v1, v2, we) = g.edge(e)?;
    if v1 == v2 {
        return Err(Error::SelfLoop(e));
    }
    let apexes = if with_faces { g.triangle_apexes(e) } else { Vec::new() };
    let face_term = apexes.len() as f64 * we;
    let spread = |v: VertexId| -> f64 {
        let wv = g.vertex_weight(v);
        g.incident(v)
            .iter()
            .filter(|&&f| f != e && !g.is_self_loop(f))
            .filter(|&&f| !apexes.contains(&g.opposite(f, v)))
            .map(|&f| wv / (we * g.edge(f).map_or(1.0, |x| x.2)).sqrt())
            .sum()
    };
    let (wv1, wv2) = (g.vertex_weight(v1), g.vertex_weight(v2));
    Ok(we * (face_term + wv1 / we + wv2 / we - spread(v1) - spread(v2)))
}

/// FR and AFR for every non-loop edge, in edge order.
pub fn edge_forman(g: &DirectedGraph, faces: &FaceIndex, membership: FaceMembership) -> Vec<EdgeFormanValues> {
    (0..g.edge_count())
        .filter(|&e| !g.is_self_loop(e))
        .map(|e| EdgeFormanValues {
            edge: e,
            fr: fr_edge_directed(g, e).expect("non-loop edge"),
            afr: afr_edge_directed(g, e, faces, membership).expect("non-loop edge"),
        })
        .collect()
}

/// In/out sums of a per-edge quantity; `None` entries (self-loops) are skipped.
pub(crate) fn in_out_sums(g: &DirectedGraph, per_edge: &[Option<f64>]) -> (Vec<f64>, Vec<f64>) {
    let mut ins = vec![0.0; g.vertex_count()];
    let mut outs = vec![0.0; g.vertex_count()];
    for (edge, value) in g.edges().iter().zip(per_edge) {
        if let Some(v) = value {
            ins[edge.target] += v;
            outs[edge.source] += v;
        }
    }
    (ins, outs)
}

/// In/Out/Total vertex curvatures from per-edge FR and AFR values.
pub fn vertex_forman(g: &DirectedGraph, values: &[EdgeFormanValues]) -> Vec<VertexFormanValues> {
    let mut fr = vec![None; g.edge_count()];
    let mut afr = vec![None; g.edge_count()];
    for v in values {
        fr[v.edge] = Some(v.fr);
        afr[v.edge] = Some(v.afr);
    }
    let (f_in, f_out) = in_out_sums(g, &fr);
    let (afr_in, afr_out) = in_out_sums(g, &afr);
    (0..g.vertex_count())
        .map(|v| VertexFormanValues {
            vertex: v,
            f_in: f_in[v],
            f_out: f_out[v],
            f_total: f_in[v] - f_out[v],
            afr_in: afr_in[v],
            afr_out: afr_out[v],
        })
        .collect()
}

/// Subgraph of the edges whose value is at most `threshold`, with their
/// endpoints. Edges without a value (self-loops) are never kept.
pub fn threshold_subnetwork(g: &DirectedGraph, values: &[Option<f64>], threshold: f64) -> DirectedGraph {
    g.edge_induced_subgraph(|e| values.get(e).copied().flatten().is_some_and(|v| v <= threshold))
}
