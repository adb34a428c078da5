//! Feed-forward-loop triangles used as the 2-faces of a directed graph.

use super::{DirectedGraph, EdgeId, VertexId};
use crate::error::{Error, Result};

/// Triangle `x -> z -> y` closed by the direct edge `x -> y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleFace {
    pub apex: VertexId,
    pub direct_edge: EdgeId,
    pub first_leg: EdgeId,
    pub second_leg: EdgeId,
    pub weight: f64,
}

impl TriangleFace {
    pub fn edges(&self) -> [EdgeId; 3] {
        [self.direct_edge, self.first_leg, self.second_leg]
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges().contains(&e)
    }
}

/// Every FFL face of `g` with unit weight, ordered by `(direct_edge, apex)`.
pub fn enumerate_ffl_faces(g: &DirectedGraph) -> Vec<TriangleFace> {
    let mut faces = Vec::new();
    for (direct, edge) in g.edges().iter().enumerate() {
        if edge.is_self_loop() {
            continue;
        }
        let (x, y) = (edge.source, edge.target);
        let start = faces.len();
        for &first_leg in g.out_adjacency(x) {
            let z = g.edges()[first_leg].target;
            if z == x || z == y {
                continue;
            }
            if let Some(second_leg) = g.find_edge(z, y) {
                faces.push(TriangleFace {
                    apex: z,
                    direct_edge: direct,
                    first_leg,
                    second_leg,
                    weight: 1.0,
                });
            }
        }
        faces[start..].sort_by_key(|f| f.apex);
    }
    faces
}

/// Faces of a graph with a per-edge membership index.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceIndex {
    faces: Vec<TriangleFace>,
    by_edge: Vec<Vec<usize>>,
}

impl FaceIndex {
    /// Indexes all FFL faces of `g` with unit face weights.
    pub fn new(g: &DirectedGraph) -> Self {
        Self::from_faces(g.edge_count(), enumerate_ffl_faces(g))
    }

    /// Indexes all FFL faces, assigning each face the weight returned by
    /// `weight`. Weights must be finite and strictly positive.
    pub fn with_weights(g: &DirectedGraph, mut weight: impl FnMut(&TriangleFace) -> f64) -> Result<Self> {
        let mut faces = enumerate_ffl_faces(g);
        for face in &mut faces {
            face.weight = super::check_weight(weight(face))?;
        }
        Ok(Self::from_faces(g.edge_count(), faces))
    }

    fn from_faces(edge_count: usize, faces: Vec<TriangleFace>) -> Self {
        let mut by_edge = vec![Vec::new(); edge_count];
        for (i, face) in faces.iter().enumerate() {
            for e in face.edges() {
                by_edge[e].push(i);
            }
        }
        FaceIndex { faces, by_edge }
    }

    pub fn faces(&self) -> &[TriangleFace] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces in which `e` is the direct edge, first leg or second leg.
    pub fn faces_containing_edge(&self, e: EdgeId) -> Result<impl Iterator<Item = &TriangleFace> + '_> {
        let ids = self.by_edge.get(e).ok_or(Error::InvalidEdge(e))?;
        Ok(ids.iter().map(move |&i| &self.faces[i]))
    }

    pub(crate) fn face_ids(&self, e: EdgeId) -> &[usize] {
        &self.by_edge[e]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::graph_from;
    use proptest::prelude::*;

    #[test]
    fn single_ffl() {
        let g = graph_from(&[("x", "y"), ("x", "z"), ("z", "y")]);
        let faces = enumerate_ffl_faces(&g);
        assert_eq!(faces.len(), 1);
        let f = faces[0];
        assert_eq!(g.label(f.apex), "z");
        assert_eq!((f.direct_edge, f.first_leg, f.second_leg), (0, 1, 2));

        let index = FaceIndex::new(&g);
        for e in 0..3 {
            assert_eq!(index.faces_containing_edge(e).unwrap().count(), 1);
        }
        assert!(index.faces_containing_edge(3).is_err());
    }

    #[test]
    fn three_cycle_has_no_faces() {
        let g = graph_from(&[("a", "b"), ("b", "c"), ("c", "a")]);
        assert!(enumerate_ffl_faces(&g).is_empty());
        let index = FaceIndex::new(&g);
        assert!((0..3).all(|e| index.faces_containing_edge(e).unwrap().next().is_none()));
    }

    #[test]
    fn bidirected_triangle_has_six_faces() {
        let mut edges = Vec::new();
        for s in ["a", "b", "c"] {
            for t in ["a", "b", "c"] {
                if s != t {
                    edges.push((s, t));
                }
            }
        }
        let g = graph_from(&edges);
        assert_eq!(enumerate_ffl_faces(&g).len(), 6);
    }

    #[test]
    fn loops_never_form_faces() {
        let g = graph_from(&[("x", "x"), ("x", "y"), ("y", "y")]);
        assert!(enumerate_ffl_faces(&g).is_empty());
    }

    #[test]
    fn face_weights_hook() {
        let g = graph_from(&[("x", "y"), ("x", "z"), ("z", "y")]);
        let index = FaceIndex::with_weights(&g, |_| 2.0).unwrap();
        assert_eq!(index.faces()[0].weight, 2.0);
        assert!(FaceIndex::with_weights(&g, |_| 0.0).is_err());
    }

    fn brute_force_faces(g: &crate::graph::DirectedGraph) -> Vec<(usize, usize, usize)> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        for x in 0..n {
            for z in 0..n {
                for y in 0..n {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    if g.has_edge(x, z) && g.has_edge(z, y) && g.has_edge(x, y) {
                        out.push((g.find_edge(x, y).unwrap(), z, x));
                    }
                }
            }
        }
        out.sort();
        out
    }

    proptest! {
        #[test]
        fn matches_brute_force_triple_scan(
            n in 1usize..=30,
            pairs in proptest::collection::vec((0usize..30, 0usize..30), 0..150),
        ) {
            let names: Vec<String> = (0..n).map(|v| v.to_string()).collect();
            let mut b = crate::graph::GraphBuilder::new();
            for name in &names { b.add_vertex(name); }
            for (s, t) in pairs {
                b.add_edge(&names[s % n], &names[t % n], 1.0).unwrap();
            }
            let g = b.build();
            let got: Vec<_> = enumerate_ffl_faces(&g)
                .iter()
                .map(|f| (f.direct_edge, f.apex, g.edges()[f.direct_edge].source))
                .collect();
            // Already in (direct_edge, apex) order.
            prop_assert_eq!(got, brute_force_faces(&g));
        }
    }
}
