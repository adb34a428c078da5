//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riccinet_core::{DirectedGraph, GraphBuilder, UndirectedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Directed G(n, p) built independently of the library generators;
/// `loops` additionally admits each self-loop with probability `p`.
pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64, loops: bool) -> DirectedGraph {
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_vertex(&v.to_string());
    }
    for s in 0..n {
        for t in 0..n {
            if (s != t || loops) && rng.gen_bool(p) {
                b.add_edge(&s.to_string(), &t.to_string(), 1.0).unwrap();
            }
        }
    }
    b.build()
}

pub fn random_undirected(rng: &mut impl Rng, n: usize, p: f64) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b, 1.0).unwrap();
            }
        }
    }
    g
}

/// Dense adjacency matrix; entry `[s][t]` is true when `s -> t` exists.
pub fn adjacency(g: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for e in g.edges() {
        a[e.source][e.target] = true;
    }
    a
}

/// All-pairs hop distances by Floyd-Warshall.
pub fn all_pairs_hops(g: &DirectedGraph) -> Vec<Vec<Option<u32>>> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let mut d = vec![vec![None; n]; n];
    for s in 0..n {
        d[s][s] = Some(0);
        for t in 0..n {
            if s != t && a[s][t] {
                d[s][t] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].map_or(true, |c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Edge and vertex betweenness by enumerating every shortest path.
pub fn brute_force_betweenness(g: &DirectedGraph) -> (Vec<f64>, Vec<f64>) {
    let n = g.vertex_count();
    let d = all_pairs_hops(g);
    let mut edge = vec![0.0; g.edge_count()];
    let mut vertex = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            let Some(len) = d[s][t] else { continue };
            if s == t {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![(s, Vec::<usize>::new())];
            while let Some((v, path)) = stack.pop() {
                if path.len() as u32 == len {
                    if v == t {
                        paths.push(path);
                    }
                    continue;
                }
                for (id, e) in g.edges().iter().enumerate() {
                    let remaining = len - path.len() as u32 - 1;
                    if e.source == v && e.target != v && d[e.target][t] == Some(remaining) {
                        let mut next = path.clone();
                        next.push(id);
                        stack.push((e.target, next));
                    }
                }
            }
            let share = 1.0 / paths.len() as f64;
            for path in &paths {
                for &id in path {
                    edge[id] += share;
                }
                for &id in &path[..path.len() - 1] {
                    vertex[g.edges()[id].target] += share;
                }
            }
        }
    }
    (edge, vertex)
}

/// Feed-forward-loop faces `(x, z, y)` found by scanning vertex triples.
pub fn brute_force_faces(g: &DirectedGraph) -> Vec<(usize, usize, usize)> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let mut out = Vec::new();
    for x in 0..n {
        for z in 0..n {
            for y in 0..n {
                if x != y && y != z && x != z && a[x][z] && a[z][y] && a[x][y] {
                    out.push((x, z, y));
                }
            }
        }
    }
    out
}

/// Edge ids `[x->y, x->z, z->y]` of every brute-force face.
pub fn brute_force_face_edges(g: &DirectedGraph) -> Vec<[usize; 3]> {
    brute_force_faces(g)
        .into_iter()
        .map(|(x, z, y)| {
            [
                g.find_edge(x, y).unwrap(),
                g.find_edge(x, z).unwrap(),
                g.find_edge(z, y).unwrap(),
            ]
        })
        .collect()
}

/// Unit-weight directed augmented curvature evaluated term by term:
/// faces plus endpoint terms minus neighbours sharing no face with `e`.
pub struct DirectAfr {
    pub afr: i64,
    pub faces: i64,
    pub face_sharing_neighbours: i64,
}

pub fn direct_afr(g: &DirectedGraph, all_faces: &[[usize; 3]], e: usize) -> DirectAfr {
    let (v1, v2) = (g.edges()[e].source, g.edges()[e].target);
    let faces: Vec<&[usize; 3]> = all_faces.iter().filter(|f| f.contains(&e)).collect();
    let shares = |f: usize| faces.iter().any(|face| face.contains(&f));
    let incoming: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(id, x)| *id != e && x.target == v1 && x.source != v1)
        .map(|(id, _)| id)
        .collect();
    let outgoing: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(id, x)| *id != e && x.source == v2 && x.target != v2)
        .map(|(id, _)| id)
        .collect();
    let penalty = incoming.iter().chain(&outgoing).filter(|&&f| !shares(f)).count() as i64;
    let mut sharing: Vec<usize> = incoming
        .iter()
        .chain(&outgoing)
        .copied()
        .filter(|&f| shares(f))
        .collect();
    sharing.sort_unstable();
    sharing.dedup();
    DirectAfr {
        afr: faces.len() as i64 + 2 - penalty,
        faces: faces.len() as i64,
        face_sharing_neighbours: sharing.len() as i64,
    }
}

/// Loop-free in-degree of `v` and out-degree of `v` from the raw edge list.
pub fn loop_free_degrees(g: &DirectedGraph, v: usize) -> (i64, i64) {
    let edges = g.edges();
    let indeg = edges.iter().filter(|e| e.target == v && e.source != v).count() as i64;
    let outdeg = edges.iter().filter(|e| e.source == v && e.target != v).count() as i64;
    (indeg, outdeg)
}

/// Triangles through the undirected edge `e` by scanning all vertices.
pub fn brute_force_triangles(g: &UndirectedGraph, e: usize) -> i64 {
    let (a, b, _) = g.edge(e).unwrap();
    (0..g.vertex_count())
        .filter(|&w| w != a && w != b && g.find_edge(a, w).is_some() && g.find_edge(b, w).is_some())
        .count() as i64
}

/// Curvature of edge `e` from first principles: supports read off the
/// adjacency matrix, distances by Floyd-Warshall, W1 by exact enumeration.
pub fn oracle_kappa(g: &DirectedGraph, e: usize) -> f64 {
    let (x, y) = (g.edges()[e].source, g.edges()[e].target);
    let adj = adjacency(g);
    let n = g.vertex_count();
    let mut sources: Vec<usize> = (0..n).filter(|&v| v != x && adj[v][x]).collect();
    let mut targets: Vec<usize> = (0..n).filter(|&v| v != y && adj[y][v]).collect();
    if sources.is_empty() {
        sources.push(x);
    }
    if targets.is_empty() {
        targets.push(y);
    }
    let d = all_pairs_hops(g);
    let cost: Vec<Vec<u32>> = sources
        .iter()
        .map(|&s| targets.iter().map(|&t| d[s][t].unwrap()).collect())
        .collect();
    1.0 - oracle::to_f64(oracle::exact_uniform_w1(&cost))
}
