mod common;

use common::{all_pairs_hops, brute_force_betweenness, random_digraph, rng};
use rand::Rng;
use riccinet_core::metrics::betweenness;
use riccinet_core::{communication_efficiency, pagerank, spearman};

#[test]
fn brandes_matches_path_enumeration() {
    let mut r = rng(21);
    for _ in 0..80 {
        let n = r.gen_range(1..=10);
        let p = r.gen_range(0.05..0.6);
        let loops = r.gen_bool(0.2);
        let g = random_digraph(&mut r, n, p, loops);
        let b = betweenness(&g);
        let (edge, vertex) = brute_force_betweenness(&g);
        for (a, x) in b.edge.iter().zip(&edge) {
            assert!((a - x).abs() < 1e-9, "{a} vs {x}");
        }
        for (a, x) in b.vertex.iter().zip(&vertex) {
            assert!((a - x).abs() < 1e-9, "{a} vs {x}");
        }
        // Every shortest path of length L crosses L edges.
        let total_distance: u32 = all_pairs_hops(&g).iter().flatten().flatten().sum();
        assert!((edge.iter().sum::<f64>() - total_distance as f64).abs() < 1e-9);
    }
}

#[test]
fn efficiency_matches_floyd_warshall() {
    let mut r = rng(22);
    for _ in 0..40 {
        let n = r.gen_range(2..=12);
        let g = random_digraph(&mut r, n, 0.25, false);
        let d = all_pairs_hops(&g);
        let sum: f64 = (0..n)
            .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
            .filter_map(|(s, t)| d[s][t].map(|l| 1.0 / l as f64))
            .sum();
        let expected = sum / (n * (n - 1)) as f64;
        assert!((communication_efficiency(&g).unwrap() - expected).abs() < 1e-12);
    }
}

/// Stationary vector by dense power iteration with explicit teleport and
/// uniform dangling redistribution.
fn dense_pagerank(adj: &[Vec<bool>], d: f64) -> Vec<f64> {
    let n = adj.len();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..5000 {
        let mut next = vec![(1.0 - d) / n as f64; n];
        for s in 0..n {
            let out: Vec<usize> = (0..n).filter(|&t| adj[s][t]).collect();
            if out.is_empty() {
                next.iter_mut().for_each(|v| *v += d * x[s] / n as f64);
            } else {
                out.iter().for_each(|&t| next[t] += d * x[s] / out.len() as f64);
            }
        }
        x = next;
    }
    x
}

#[test]
fn pagerank_matches_dense_iteration() {
    let mut r = rng(23);
    for _ in 0..30 {
        let n = r.gen_range(1..=15);
        let loops = r.gen_bool(0.3);
        let g = random_digraph(&mut r, n, 0.2, loops);
        let pr = pagerank(&g, 0.85, 1e-12, 10_000).unwrap();
        let dense = dense_pagerank(&common::adjacency(&g), 0.85);
        for (a, b) in pr.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }
}

#[test]
fn spearman_ignores_monotone_transforms() {
    let mut r = rng(24);
    for _ in 0..50 {
        let n = r.gen_range(3..40);
        let x: Vec<f64> = (0..n).map(|_| r.gen_range(-5..5) as f64).collect();
        let y: Vec<f64> = (0..n).map(|_| r.gen_range(-5..5) as f64).collect();
        let (Ok(a), Ok(b)) = (
            spearman(&x, &y),
            spearman(&x.iter().map(|v| v.exp()).collect::<Vec<_>>(), &y),
        ) else {
            continue;
        };
        assert!((a.rho - b.rho).abs() < 1e-12);
    }
}
