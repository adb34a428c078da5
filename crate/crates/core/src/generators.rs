//! Seeded directed Erdős–Rényi and scale-free fitness-model generators.
//!
//! Each call owns a private `ChaCha8Rng` seeded with `seed_from_u64(seed)`.
//! Vertices are labelled `"0"`, `"1"`, ...; the graph's vertex order is first
//! appearance in the generated edge sequence followed by isolated vertices in
//! label order.

use std::collections::HashSet;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, GraphBuilder};

/// Recorded in output metadata so runs can be reproduced.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SfParams {
    pub n: usize,
    pub m: usize,
    pub lambda_in: f64,
    pub lambda_out: f64,
    pub seed: u64,
}

fn assemble(n: usize, edges: &[(usize, usize)]) -> DirectedGraph {
    let names: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    let mut b = GraphBuilder::new();
    for &(s, t) in edges {
        b.add_edge(&names[s], &names[t], 1.0).expect("unit weight is valid");
    }
    for name in &names {
        b.add_vertex(name);
    }
    b.build()
}

/// Each ordered pair `(u, v)`, `u != v`, is kept independently with
/// probability `p`, visiting pairs in lexicographic order.
pub fn generate_er(params: ErParams) -> Result<DirectedGraph> {
    let ErParams { n, p, seed } = params;
    if n == 0 {
        return Err(Error::InvalidParameter("ER needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "ER probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(assemble(n, &edges))
}

/// Static fitness model: vertex `i` has out-fitness `(i+1)^(-1/(lambda_out-1))`
/// and in-fitness `(r_i+1)^(-1/(lambda_in-1))` for a random rank permutation
/// `r`. Pairs are drawn proportionally to fitness until `m` distinct non-loop
/// edges exist.
pub fn generate_sf_fitness(params: SfParams) -> Result<DirectedGraph> {
    let SfParams {
        n,
        m,
        lambda_in,
        lambda_out,
        seed,
    } = params;
    if n == 0 {
        return Err(Error::InvalidParameter("SF needs n >= 1".into()));
    }
    if m > n * (n - 1) {
        return Err(Error::InvalidParameter(format!(
            "SF needs m <= n(n-1) = {}, got {m}",
            n * (n - 1)
        )));
    }
    for (name, lambda) in [("lambda_in", lambda_in), ("lambda_out", lambda_out)] {
        if !(lambda.is_finite() && lambda > 1.0) {
            return Err(Error::InvalidParameter(format!("{name} must exceed 1, got {lambda}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha_out = 1.0 / (lambda_out - 1.0);
    let alpha_in = 1.0 / (lambda_in - 1.0);
    let out_fitness: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-alpha_out)).collect();
    let mut ranks: Vec<usize> = (0..n).collect();
    ranks.shuffle(&mut rng);
    let in_fitness: Vec<f64> = ranks.iter().map(|&r| ((r + 1) as f64).powf(-alpha_in)).collect();

    let mut edges = Vec::with_capacity(m);
    if m > 0 {
        let sources = WeightedIndex::new(&out_fitness).expect("fitness values are positive");
        let targets = WeightedIndex::new(&in_fitness).expect("fitness values are positive");
        let mut seen = HashSet::with_capacity(m);
        let guard = 100 * m;
        let mut rejections = 0;
        while edges.len() < m {
            let (u, v) = (sources.sample(&mut rng), targets.sample(&mut rng));
            if u == v || !seen.insert((u, v)) {
                rejections += 1;
                if rejections >= guard {
                    return Err(Error::GeneratorStalled(guard));
                }
                continue;
            }
            rejections = 0;
            edges.push((u, v));
        }
    }
    Ok(assemble(n, &edges))
}
