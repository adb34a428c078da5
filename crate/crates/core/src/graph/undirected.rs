use std::collections::HashMap;

use super::{check_weight, DirectedGraph, EdgeId, VertexId};
use crate::error::{Error, Result};

/// Simple undirected graph, used for the undirected curvature variants and
/// as the direction-blind projection of a [`DirectedGraph`].
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedGraph {
    vertex_weights: Vec<f64>,
    edges: Vec<(VertexId, VertexId, f64)>,
    adj: Vec<Vec<EdgeId>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

impl UndirectedGraph {
    pub fn new(vertex_count: usize) -> Self {
        UndirectedGraph {
            vertex_weights: vec![1.0; vertex_count],
            edges: Vec::new(),
            adj: vec![Vec::new(); vertex_count],
            lookup: HashMap::new(),
        }
    }

    pub fn with_vertex_weights(weights: Vec<f64>) -> Result<Self> {
        for &w in &weights {
            check_weight(w)?;
        }
        let mut g = Self::new(weights.len());
        g.vertex_weights = weights;
        Ok(g)
    }

    /// Direction-blind projection; each unordered pair keeps the weight of
    /// its first directed edge.
    pub fn from_directed(g: &DirectedGraph) -> Self {
        let mut u = UndirectedGraph {
            vertex_weights: g.vertex_weights().to_vec(),
            ..Self::new(g.vertex_count())
        };
        for edge in g.edges() {
            u.insert(edge.source, edge.target, edge.weight);
        }
        u
    }

    /// Adds `{a, b}`; returns `None` when the pair already exists.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId, weight: f64) -> Result<Option<EdgeId>> {
        let n = self.vertex_count();
        for v in [a, b] {
            if v >= n {
                return Err(Error::InvalidVertex(v));
            }
        }
        let weight = check_weight(weight)?;
        Ok(self.insert(a, b, weight))
    }

    fn insert(&mut self, a: VertexId, b: VertexId, weight: f64) -> Option<EdgeId> {
        let key = (a.min(b), a.max(b));
        if self.lookup.contains_key(&key) {
            return None;
        }
        let e = self.edges.len();
        self.edges.push((key.0, key.1, weight));
        self.lookup.insert(key, e);
        self.adj[key.0].push(e);
        if key.0 != key.1 {
            self.adj[key.1].push(e);
        }
        Some(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_weight(&self, v: VertexId) -> f64 {
        self.vertex_weights[v]
    }

    /// `(smaller endpoint, larger endpoint, weight)`.
    pub fn edge(&self, e: EdgeId) -> Result<(VertexId, VertexId, f64)> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge(e))
    }

    pub fn edges(&self) -> &[(VertexId, VertexId, f64)] {
        &self.edges
    }

    pub fn is_self_loop(&self, e: EdgeId) -> bool {
        let (a, b, _) = self.edges[e];
        a == b
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.lookup.get(&(a.min(b), a.max(b))).copied()
    }

    /// The other endpoint of `e` as seen from `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b, _) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Third vertices of the triangles that contain edge `e`, ascending.
    pub fn triangle_apexes(&self, e: EdgeId) -> Vec<VertexId> {
        let (a, b, _) = self.edges[e];
        if a == b {
            return Vec::new();
        }
        let mut apexes: Vec<VertexId> = self.adj[a]
            .iter()
            .map(|&f| self.opposite(f, a))
            .filter(|&w| w != a && w != b && self.find_edge(w, b).is_some())
            .collect();
        apexes.sort_unstable();
        apexes
    }
}
