//! Directed graph model shared by every curvature and metric computation.
//!
//! A [`DirectedGraph`] is immutable once built. Vertices are dense indices in
//! first-appearance order and carry a string label plus a positive weight.
//! Edges keep their insertion order; duplicate `(source, target)` pairs are
//! collapsed keep-first by [`GraphBuilder`]. Self-loops are stored but are
//! skipped by every curvature and face computation.

mod faces;
mod io;
mod undirected;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub use faces::{enumerate_ffl_faces, FaceIndex, TriangleFace};
pub use io::{parse_edge_list, parse_vertex_weights, write_edge_list, ParsedGraph};
pub use undirected::UndirectedGraph;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub weight: f64,
}

impl Edge {
    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

pub(crate) fn check_weight(w: f64) -> Result<f64> {
    if w.is_finite() && w > 0.0 {
        Ok(w)
    } else {
        Err(Error::InvalidWeight(w))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    labels: Vec<String>,
    vertex_weights: Vec<f64>,
    edges: Vec<Edge>,
    in_adj: Vec<Vec<EdgeId>>,
    out_adj: Vec<Vec<EdgeId>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

impl DirectedGraph {
    /// Builds a graph from labelled edges, collapsing duplicates keep-first.
    ///
    /// Vertices are indexed in order of first appearance in `edges`; vertices
    /// that only appear in `vertex_weights` are appended afterwards.
    pub fn from_edge_list(
        edges: &[(&str, &str, Option<f64>)],
        vertex_weights: Option<&[(&str, f64)]>,
    ) -> Result<ParsedGraph> {
        let mut builder = GraphBuilder::new();
        for &(s, t, w) in edges {
            builder.add_edge(s, t, w.unwrap_or(1.0))?;
        }
        for &(v, w) in vertex_weights.unwrap_or(&[]) {
            builder.set_vertex_weight(v, w)?;
        }
        Ok(builder.finish())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::InvalidEdge(e))
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_weight(&self, v: VertexId) -> f64 {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[f64] {
        &self.vertex_weights
    }

    pub fn is_self_loop(&self, e: EdgeId) -> bool {
        self.edges[e].is_self_loop()
    }

    pub fn self_loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_self_loop()).count()
    }

    /// True when every vertex and edge weight equals 1.
    pub fn is_unweighted(&self) -> bool {
        self.vertex_weights.iter().all(|&w| w == 1.0) && self.edges.iter().all(|e| e.weight == 1.0)
    }

    pub fn find_edge(&self, source: VertexId, target: VertexId) -> Option<EdgeId> {
        self.lookup.get(&(source, target)).copied()
    }

    pub fn has_edge(&self, source: VertexId, target: VertexId) -> bool {
        self.lookup.contains_key(&(source, target))
    }

    /// Incoming edge indices of `v` in edge order, self-loops included.
    pub fn in_adjacency(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v]
    }

    /// Outgoing edge indices of `v` in edge order, self-loops included.
    pub fn out_adjacency(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v]
    }

    pub fn in_edges(&self, v: VertexId, exclude_self_loops: bool) -> Result<Vec<EdgeId>> {
        let adj = self.in_adj.get(v).ok_or(Error::InvalidVertex(v))?;
        Ok(adj
            .iter()
            .copied()
            .filter(|&e| !(exclude_self_loops && self.edges[e].is_self_loop()))
            .collect())
    }

    pub fn out_edges(&self, v: VertexId, exclude_self_loops: bool) -> Result<Vec<EdgeId>> {
        let adj = self.out_adj.get(v).ok_or(Error::InvalidVertex(v))?;
        Ok(adj
            .iter()
            .copied()
            .filter(|&e| !(exclude_self_loops && self.edges[e].is_self_loop()))
            .collect())
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree_no_loops(&self, v: VertexId) -> usize {
        self.in_adj[v]
            .iter()
            .filter(|&&e| !self.edges[e].is_self_loop())
            .count()
    }

    pub fn out_degree_no_loops(&self, v: VertexId) -> usize {
        self.out_adj[v]
            .iter()
            .filter(|&&e| !self.edges[e].is_self_loop())
            .count()
    }

    /// Loop-free in-neighbours of `v`, in edge order.
    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_adj[v]
            .iter()
            .map(move |&e| self.edges[e].source)
            .filter(move |&u| u != v)
    }

    /// Loop-free out-neighbours of `v`, in edge order.
    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_adj[v]
            .iter()
            .map(move |&e| self.edges[e].target)
            .filter(move |&u| u != v)
    }

    /// Directed hop distances from `source`; `None` marks unreachable vertices.
    pub fn shortest_path_lengths(&self, source: VertexId) -> Result<Vec<Option<u32>>> {
        if source >= self.vertex_count() {
            return Err(Error::InvalidVertex(source));
        }
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &e in &self.out_adj[u] {
                let w = self.edges[e].target;
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Exact hop distance from `s` to `t` when it is at most 3, else `None`.
    ///
    /// Avoids a full BFS for the short ground distances used by the
    /// Ollivier-Ricci transport problems.
    pub fn hop_distance_within3(&self, s: VertexId, t: VertexId) -> Option<u32> {
        if s == t {
            return Some(0);
        }
        if self.has_edge(s, t) {
            return Some(1);
        }
        let mids: Vec<VertexId> = self.out_neighbors(s).filter(|&m| m != t).collect();
        if mids.iter().any(|&m| self.has_edge(m, t)) {
            return Some(2);
        }
        let preds: Vec<VertexId> = self.in_neighbors(t).filter(|&m| m != s).collect();
        if mids
            .iter()
            .any(|&a| preds.iter().any(|&b| a != b && self.has_edge(a, b)))
        {
            return Some(3);
        }
        None
    }

    /// Partition of the vertices under direction-blind connectivity.
    ///
    /// Components are ordered by their smallest vertex and each component is
    /// sorted ascending.
    pub fn weakly_connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let nbrs = self.out_adj[u]
                    .iter()
                    .map(|&e| self.edges[e].target)
                    .chain(self.in_adj[u].iter().map(|&e| self.edges[e].source));
                for w in nbrs {
                    if !seen[w] {
                        seen[w] = true;
                        component.push(w);
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Same vertex set, keeping only edges for which `keep` returns true.
    ///
    /// Returns the new graph and, for each of its edges, the index of the
    /// originating edge in `self`.
    pub fn retain_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> (DirectedGraph, Vec<EdgeId>) {
        let mut kept = Vec::new();
        let mut edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if keep(e) {
                kept.push(e);
                edges.push(*edge);
            }
        }
        let graph = DirectedGraph::from_parts(self.labels.clone(), self.vertex_weights.clone(), edges);
        (graph, kept)
    }

    /// Subgraph induced by the kept edges and their endpoints.
    ///
    /// Vertices keep their relative order; isolated vertices are dropped.
    pub fn edge_induced_subgraph(&self, mut keep: impl FnMut(EdgeId) -> bool) -> DirectedGraph {
        let mut remap = vec![usize::MAX; self.vertex_count()];
        let mut edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if keep(e) {
                remap[edge.source] = 0;
                remap[edge.target] = 0;
                edges.push(*edge);
            }
        }
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for v in 0..self.vertex_count() {
            if remap[v] == 0 {
                remap[v] = labels.len();
                labels.push(self.labels[v].clone());
                weights.push(self.vertex_weights[v]);
            }
        }
        for edge in &mut edges {
            edge.source = remap[edge.source];
            edge.target = remap[edge.target];
        }
        DirectedGraph::from_parts(labels, weights, edges)
    }

    /// Assembles a graph from already-validated parts. Edges must be unique.
    fn from_parts(labels: Vec<String>, vertex_weights: Vec<f64>, edges: Vec<Edge>) -> DirectedGraph {
        let n = labels.len();
        let mut in_adj = vec![Vec::new(); n];
        let mut out_adj = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            out_adj[edge.source].push(e);
            in_adj[edge.target].push(e);
            lookup.insert((edge.source, edge.target), e);
        }
        DirectedGraph {
            labels,
            vertex_weights,
            edges,
            in_adj,
            out_adj,
            lookup,
        }
    }
}

/// Incremental constructor for [`DirectedGraph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    vertex_weights: Vec<f64>,
    edges: Vec<Edge>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
    duplicates: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `label`, creating the vertex if needed.
    pub fn add_vertex(&mut self, label: &str) -> VertexId {
        if let Some(&v) = self.index.get(label) {
            return v;
        }
        let v = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), v);
        self.vertex_weights.push(1.0);
        v
    }

    pub fn set_vertex_weight(&mut self, label: &str, weight: f64) -> Result<()> {
        let weight = check_weight(weight)?;
        let v = self.add_vertex(label);
        self.vertex_weights[v] = weight;
        Ok(())
    }

    /// Adds `source -> target`. Returns `None` when the pair already exists,
    /// in which case the first weight is kept.
    pub fn add_edge(&mut self, source: &str, target: &str, weight: f64) -> Result<Option<EdgeId>> {
        let weight = check_weight(weight)?;
        let s = self.add_vertex(source);
        let t = self.add_vertex(target);
        Ok(self.push_edge(s, t, weight))
    }

    fn push_edge(&mut self, s: VertexId, t: VertexId, weight: f64) -> Option<EdgeId> {
        if self.lookup.contains_key(&(s, t)) {
            self.duplicates += 1;
            return None;
        }
        let e = self.edges.len();
        self.edges.push(Edge {
            source: s,
            target: t,
            weight,
        });
        self.lookup.insert((s, t), e);
        Some(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn duplicate_count(&self) -> usize {
        self.duplicates
    }

    pub fn contains_edge(&self, source: &str, target: &str) -> bool {
        match (self.index.get(source), self.index.get(target)) {
            (Some(&s), Some(&t)) => self.lookup.contains_key(&(s, t)),
            _ => false,
        }
    }

    pub fn build(self) -> DirectedGraph {
        self.finish().graph
    }

    pub fn finish(self) -> ParsedGraph {
        let duplicates = self.duplicates;
        let graph = DirectedGraph::from_parts(self.labels, self.vertex_weights, self.edges);
        ParsedGraph { graph, duplicates }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn graph_from(edges: &[(&str, &str)]) -> DirectedGraph {
        let list: Vec<_> = edges.iter().map(|&(s, t)| (s, t, None)).collect();
        DirectedGraph::from_edge_list(&list, None).unwrap().graph
    }

    /// The edge set drawn around edge e12 in the worked example: in-edges
    /// of v1 from v3, v4, v9; out-edges of v2 to v7, v8, v9; and the face
    /// v1 -> v6 -> v2 when `with_face` is set.
    pub(crate) fn worked_example(with_face: bool) -> DirectedGraph {
        let mut edges = vec![
            ("v1", "v2"),
            ("v3", "v1"),
            ("v4", "v1"),
            ("v9", "v1"),
            ("v2", "v7"),
            ("v2", "v8"),
            ("v2", "v9"),
        ];
        if with_face {
            edges.extend([("v1", "v6"), ("v6", "v2")]);
        }
        graph_from(&edges)
    }

    fn vid(g: &DirectedGraph, label: &str) -> VertexId {
        g.labels().iter().position(|l| l == label).unwrap()
    }

    fn edge_names(g: &DirectedGraph, es: &[EdgeId]) -> Vec<String> {
        let mut names: Vec<_> = es
            .iter()
            .map(|&e| {
                let edge = g.edges()[e];
                format!("{}{}", g.label(edge.source), g.label(edge.target))
            })
            .collect();
        names.sort();
        names
    }

    #[test]
    fn build_defaults_dedup_and_loops() {
        let g = graph_from(&[("a", "b")]);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.edges()[0].weight, 1.0);
        assert!(g.vertex_weights().iter().all(|&w| w == 1.0));

        let parsed = DirectedGraph::from_edge_list(&[("a", "b", Some(2.0)), ("a", "b", Some(5.0))], None).unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.duplicates, 1);
        assert_eq!(parsed.graph.edges()[0].weight, 2.0);

        let g = graph_from(&[("a", "a")]);
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert!(g.is_self_loop(0));
    }

    #[test]
    fn build_rejects_bad_weights() {
        assert_eq!(
            DirectedGraph::from_edge_list(&[("a", "b", Some(0.0))], None).unwrap_err(),
            Error::InvalidWeight(0.0)
        );
        assert!(DirectedGraph::from_edge_list(&[("a", "b", None)], Some(&[("a", -1.0)])).is_err());
    }

    #[test]
    fn vertex_weight_only_vertices_are_appended() {
        let parsed = DirectedGraph::from_edge_list(&[("a", "b", None)], Some(&[("c", 2.0), ("a", 3.0)])).unwrap();
        let g = parsed.graph;
        assert_eq!(g.labels(), &["a", "b", "c"]);
        assert_eq!(g.vertex_weights(), &[3.0, 1.0, 2.0]);
    }

    #[test]
    fn adjacency_on_worked_example() {
        let g = worked_example(false);
        let v1 = vid(&g, "v1");
        let v2 = vid(&g, "v2");
        assert_eq!(edge_names(&g, &g.in_edges(v1, true).unwrap()), ["v3v1", "v4v1", "v9v1"]);
        assert_eq!(
            edge_names(&g, &g.out_edges(v2, true).unwrap()),
            ["v2v7", "v2v8", "v2v9"]
        );

        let g = graph_from(&[("a", "b")]);
        assert_eq!(g.in_edges(1, true).unwrap(), vec![0]);
        assert_eq!(g.in_edges(0, true).unwrap(), Vec::<EdgeId>::new());
        assert_eq!(g.in_edges(7, true).unwrap_err(), Error::InvalidVertex(7));
        assert_eq!(g.out_edges(7, false).unwrap_err(), Error::InvalidVertex(7));
    }

    #[test]
    fn self_loops_can_be_filtered() {
        let g = graph_from(&[("a", "a"), ("b", "a")]);
        assert_eq!(g.in_edges(0, false).unwrap(), vec![0, 1]);
        assert_eq!(g.in_edges(0, true).unwrap(), vec![1]);
        assert_eq!(g.out_edges(0, true).unwrap(), Vec::<EdgeId>::new());
        assert_eq!(g.in_degree_no_loops(0), 1);
        assert_eq!(g.in_neighbors(0).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn bfs_distances() {
        let g = graph_from(&[("1", "2"), ("2", "3")]);
        assert_eq!(g.shortest_path_lengths(0).unwrap(), vec![Some(0), Some(1), Some(2)]);
        assert_eq!(g.shortest_path_lengths(2).unwrap(), vec![None, None, Some(0)]);
        let cycle = graph_from(&[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(cycle.shortest_path_lengths(0).unwrap(), vec![Some(0), Some(1), Some(2)]);
        assert!(cycle.shortest_path_lengths(3).is_err());
    }

    #[test]
    fn short_hop_distance_matches_bfs() {
        let g = graph_from(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("a", "c")]);
        for s in 0..g.vertex_count() {
            let bfs = g.shortest_path_lengths(s).unwrap();
            for t in 0..g.vertex_count() {
                let expected = bfs[t].filter(|&d| d <= 3);
                assert_eq!(g.hop_distance_within3(s, t), expected, "{s}->{t}");
            }
        }
    }

    #[test]
    fn weak_components() {
        let mut b = GraphBuilder::new();
        b.add_edge("a", "b", 1.0).unwrap();
        b.add_vertex("c");
        let g = b.build();
        assert_eq!(g.weakly_connected_components(), vec![vec![0, 1], vec![2]]);

        let cycle = graph_from(&[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(cycle.weakly_connected_components(), vec![vec![0, 1, 2]]);

        let two = graph_from(&[("a", "b"), ("c", "d")]);
        assert_eq!(two.weakly_connected_components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn retain_and_induce() {
        let g = graph_from(&[("a", "b"), ("b", "c"), ("c", "d")]);
        let (sub, kept) = g.retain_edges(|e| e != 1);
        assert_eq!(sub.vertex_count(), 4);
        assert_eq!(kept, vec![0, 2]);
        assert!(sub.has_edge(2, 3));
        assert!(!sub.has_edge(1, 2));

        let induced = g.edge_induced_subgraph(|e| e == 1);
        assert_eq!(induced.labels(), &["b", "c"]);
        assert_eq!(induced.edges()[0].source, 0);
        assert_eq!(induced.edges()[0].target, 1);
    }
}
