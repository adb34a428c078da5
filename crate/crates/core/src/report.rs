//! Per-edge and per-vertex result tables combining curvature and centrality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forman::{edge_forman, vertex_forman, FaceMembership};
use crate::graph::{DirectedGraph, EdgeId, FaceIndex, VertexId};
use crate::metrics::{betweenness, pagerank, PAGERANK_DAMPING, PAGERANK_MAX_ITER, PAGERANK_TOLERANCE};
use crate::ollivier::{edge_ollivier, vertex_ollivier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeMeasures {
    pub fr: bool,
    pub afr: bool,
    pub or: bool,
    pub betweenness: bool,
}

impl EdgeMeasures {
    pub const ALL: EdgeMeasures = EdgeMeasures {
        fr: true,
        afr: true,
        or: true,
        betweenness: true,
    };
}

/// Curvature cells are `None` for self-loops and unrequested measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeCurvatureRow {
    pub edge: EdgeId,
    pub source: VertexId,
    pub target: VertexId,
    pub fr: Option<f64>,
    pub afr: Option<f64>,
    pub or: Option<f64>,
    pub or_fallback: Option<bool>,
    pub betweenness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeCurvatureReport {
    pub rows: Vec<EdgeCurvatureRow>,
    pub self_loops: usize,
}

pub const EDGE_COLUMNS: [&str; 4] = ["fr", "afr", "or", "ebc"];

impl EdgeCurvatureReport {
    /// Values of `fr`, `afr`, `or` or `ebc` in edge order.
    pub fn column(&self, name: &str) -> Result<Vec<Option<f64>>> {
        let pick: fn(&EdgeCurvatureRow) -> Option<f64> = match name {
            "fr" => |r| r.fr,
            "afr" => |r| r.afr,
            "or" => |r| r.or,
            "ebc" => |r| r.betweenness,
            _ => return Err(Error::InvalidParameter(format!("unknown edge column `{name}`"))),
        };
        Ok(self.rows.iter().map(pick).collect())
    }
}

pub fn edge_curvature_report(
    g: &DirectedGraph,
    measures: EdgeMeasures,
    membership: FaceMembership,
) -> Result<EdgeCurvatureReport> {
    let mut rows: Vec<EdgeCurvatureRow> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(edge, e)| EdgeCurvatureRow {
            edge,
            source: e.source,
            target: e.target,
            fr: None,
            afr: None,
            or: None,
            or_fallback: None,
            betweenness: None,
        })
        .collect();
    if measures.fr || measures.afr {
        for v in edge_forman(g, &FaceIndex::new(g), membership) {
            let row = &mut rows[v.edge];
            row.fr = measures.fr.then_some(v.fr);
            row.afr = measures.afr.then_some(v.afr);
        }
    }
    if measures.or {
        for v in edge_ollivier(g)? {
            rows[v.edge].or = Some(v.kappa);
            rows[v.edge].or_fallback = Some(v.fallback);
        }
    }
    if measures.betweenness {
        for (row, b) in rows.iter_mut().zip(betweenness(g).edge) {
            if row.source != row.target {
                row.betweenness = Some(b);
            }
        }
    }
    Ok(EdgeCurvatureReport {
        rows,
        self_loops: g.self_loop_count(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCurvatureRow {
    pub vertex: VertexId,
    pub in_degree: usize,
    pub out_degree: usize,
    pub ifr: f64,
    pub ofr: f64,
    pub tfr: f64,
    pub iafr: f64,
    pub oafr: f64,
    pub ior: Option<f64>,
    pub oor: Option<f64>,
    pub tor: Option<f64>,
    pub betweenness: f64,
    pub pagerank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCurvatureReport {
    pub rows: Vec<VertexCurvatureRow>,
}

pub const VERTEX_COLUMNS: [&str; 12] = [
    "in_degree",
    "out_degree",
    "ifr",
    "ofr",
    "tfr",
    "iafr",
    "oafr",
    "ior",
    "oor",
    "tor",
    "betweenness",
    "pagerank",
];

impl VertexCurvatureReport {
    pub fn column(&self, name: &str) -> Result<Vec<Option<f64>>> {
        let pick: fn(&VertexCurvatureRow) -> Option<f64> = match name {
            "in_degree" => |r| Some(r.in_degree as f64),
            "out_degree" => |r| Some(r.out_degree as f64),
            "ifr" => |r| Some(r.ifr),
            "ofr" => |r| Some(r.ofr),
            "tfr" => |r| Some(r.tfr),
            "iafr" => |r| Some(r.iafr),
            "oafr" => |r| Some(r.oafr),
            "ior" => |r| r.ior,
            "oor" => |r| r.oor,
            "tor" => |r| r.tor,
            "betweenness" => |r| Some(r.betweenness),
            "pagerank" => |r| Some(r.pagerank),
            _ => return Err(Error::InvalidParameter(format!("unknown vertex column `{name}`"))),
        };
        Ok(self.rows.iter().map(pick).collect())
    }
}

/// Vertex table; OR columns are filled only when `with_or` is set, which
/// requires unit edge weights.
pub fn vertex_curvature_report(
    g: &DirectedGraph,
    membership: FaceMembership,
    with_or: bool,
) -> Result<VertexCurvatureReport> {
    let forman = vertex_forman(g, &edge_forman(g, &FaceIndex::new(g), membership));
    let ollivier = if with_or {
        Some(vertex_ollivier(g, &edge_ollivier(g)?))
    } else {
        None
    };
    let bc = betweenness(g).vertex;
    let pr = pagerank(g, PAGERANK_DAMPING, PAGERANK_TOLERANCE, PAGERANK_MAX_ITER)?;
    let rows = (0..g.vertex_count())
        .map(|v| {
            let f = &forman[v];
            let o = ollivier.as_ref().map(|o| o[v]);
            VertexCurvatureRow {
                vertex: v,
                in_degree: g.in_degree(v),
                out_degree: g.out_degree(v),
                ifr: f.f_in,
                ofr: f.f_out,
                tfr: f.f_total,
                iafr: f.afr_in,
                oafr: f.afr_out,
                ior: o.map(|o| o.o_in),
                oor: o.map(|o| o.o_out),
                tor: o.map(|o| o.o_total),
                betweenness: bc[v],
                pagerank: pr[v],
            }
        })
        .collect();
    Ok(VertexCurvatureReport { rows })
}

/// Pairs where both entries are defined.
pub fn complete_pairs(x: &[Option<f64>], y: &[Option<f64>]) -> (Vec<f64>, Vec<f64>) {
    x.iter().zip(y).filter_map(|(a, b)| Some(((*a)?, (*b)?))).unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::graph_from;
    use crate::graph::GraphBuilder;

    #[test]
    fn single_edge_row() {
        let g = graph_from(&[("a", "b")]);
        let r = edge_curvature_report(&g, EdgeMeasures::ALL, FaceMembership::AnyEdge).unwrap();
        let row = &r.rows[0];
        assert_eq!(
            (row.fr, row.afr, row.or, row.or_fallback),
            (Some(2.0), Some(2.0), Some(0.0), Some(true))
        );
        assert_eq!(row.betweenness, Some(1.0));
    }

    #[test]
    fn ffl_and_cycle_rows() {
        let g = graph_from(&[("x", "y"), ("x", "z"), ("z", "y")]);
        let r = edge_curvature_report(&g, EdgeMeasures::ALL, FaceMembership::AnyEdge).unwrap();
        assert_eq!((r.rows[0].fr, r.rows[0].afr), (Some(2.0), Some(3.0)));
        let g = graph_from(&[("a", "b"), ("b", "c"), ("c", "a")]);
        let r = edge_curvature_report(&g, EdgeMeasures::ALL, FaceMembership::AnyEdge).unwrap();
        let row = &r.rows[0];
        assert_eq!(
            (row.fr, row.afr, row.or, row.or_fallback),
            (Some(0.0), Some(0.0), Some(1.0), Some(false))
        );
    }

    #[test]
    fn loops_and_unrequested_measures_are_empty() {
        let g = graph_from(&[("a", "a"), ("a", "b")]);
        let only_fr = EdgeMeasures {
            fr: true,
            afr: false,
            or: false,
            betweenness: false,
        };
        let r = edge_curvature_report(&g, only_fr, FaceMembership::AnyEdge).unwrap();
        assert_eq!(r.self_loops, 1);
        assert_eq!(r.rows[0].fr, None);
        assert_eq!(r.rows[1].fr, Some(2.0));
        assert_eq!(r.rows[1].afr, None);
        assert_eq!(r.column("fr").unwrap(), vec![None, Some(2.0)]);
        assert!(r.column("bogus").is_err());
    }

    #[test]
    fn vertex_rows() {
        let mut b = GraphBuilder::new();
        b.add_edge("a", "b", 1.0).unwrap();
        b.add_vertex("iso");
        let g = b.build();
        let r = vertex_curvature_report(&g, FaceMembership::AnyEdge, true).unwrap();
        let a = &r.rows[0];
        assert_eq!((a.ifr, a.ofr, a.tfr), (0.0, 2.0, -2.0));
        let iso = &r.rows[2];
        assert_eq!((iso.ifr, iso.ofr, iso.ior, iso.tor), (0.0, 0.0, Some(0.0), Some(0.0)));
        let sum: f64 = r.column("pagerank").unwrap().iter().map(|p| p.unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-9);

        let cycle = graph_from(&[("a", "b"), ("b", "c"), ("c", "a")]);
        let r = vertex_curvature_report(&cycle, FaceMembership::AnyEdge, true).unwrap();
        assert!(r.rows.iter().all(|row| row.tor == Some(0.0)));
        let r = vertex_curvature_report(&cycle, FaceMembership::AnyEdge, false).unwrap();
        assert!(r.rows.iter().all(|row| row.ior.is_none()));
    }

    #[test]
    fn complete_pairs_drop_missing() {
        let (x, y) = complete_pairs(&[Some(1.0), None, Some(3.0)], &[Some(2.0), Some(5.0), None]);
        assert_eq!((x, y), (vec![1.0], vec![2.0]));
    }
}
