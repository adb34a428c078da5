//! Fixtures shared by the criterion benchmarks.

use riccinet_core::{generate_er, generate_sf_fitness, DirectedGraph, ErParams, SfParams};

/// Directed ER graph with `n` vertices and mean out-degree `mean_degree`.
pub fn er(n: usize, mean_degree: f64, seed: u64) -> DirectedGraph {
    generate_er(ErParams {
        n,
        p: mean_degree / (n - 1) as f64,
        seed,
    })
    .expect("valid ER parameters")
}

/// Scale-free fitness-model graph with `3n` edges and exponents 2.1.
pub fn sf(n: usize, seed: u64) -> DirectedGraph {
    generate_sf_fitness(SfParams {
        n,
        m: 3 * n,
        lambda_in: 2.1,
        lambda_out: 2.1,
        seed,
    })
    .expect("valid SF parameters")
}
