//! Exact Wasserstein-1 between finitely supported measures.
//!
//! Solves the balanced transportation problem
//!
//! ```text
//! min  sum_ij c_ij x_ij
//! s.t. sum_j x_ij = s_i,  sum_i x_ij = d_j,  x >= 0
//! ```
//!
//! with the transportation simplex: a northwest-corner starting basis, then
//! MODI potentials `u_i + v_j = c_ij` on the basic cells and pivots along the
//! unique cycle that an entering cell closes in the basis tree. Entering cells
//! are chosen by most negative reduced cost; after a run of degenerate pivots
//! the rule switches to smallest index (Bland) until progress resumes, which
//! rules out cycling. All ties break towards the smallest row-major index, so
//! the output is a deterministic function of the input.
//!
//! The final potentials are returned as an optimality certificate; see
//! [`TransportSolution::certificate`].

use std::collections::VecDeque;

use crate::error::{Error, Result};

const MASS_TOLERANCE: f64 = 1e-12;
const DEGENERATE_STREAK: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct TransportProblem {
    supply: Vec<f64>,
    demand: Vec<f64>,
    cost: Vec<f64>,
}

impl TransportProblem {
    /// Validates and builds a problem from a row-per-supply cost matrix.
    ///
    /// Masses must be strictly positive and each side must sum to 1 within
    /// `1e-12`; they are renormalised to sum exactly.
    pub fn new(supply: Vec<f64>, demand: Vec<f64>, cost: &[Vec<f64>]) -> Result<Self> {
        let cols = cost.first().map_or(0, Vec::len);
        for row in cost {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    rows: cost.len(),
                    cols: row.len(),
                    expected_rows: supply.len(),
                    expected_cols: demand.len(),
                });
            }
        }
        Self::from_flat(supply, demand, cost.concat())
    }

    /// Like [`TransportProblem::new`] with a row-major flattened cost matrix.
    pub fn from_flat(supply: Vec<f64>, demand: Vec<f64>, cost: Vec<f64>) -> Result<Self> {
        let (m, n) = (supply.len(), demand.len());
        if m == 0 || n == 0 || cost.len() != m * n {
            return Err(Error::DimensionMismatch {
                rows: if n == 0 { cost.len() } else { cost.len() / n.max(1) },
                cols: n,
                expected_rows: m,
                expected_cols: n,
            });
        }
        let supply = normalise("supply", supply)?;
        let demand = normalise("demand", demand)?;
        for (k, &c) in cost.iter().enumerate() {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidCost {
                    row: k / n,
                    col: k % n,
                    value: c,
                });
            }
        }
        Ok(TransportProblem { supply, demand, cost })
    }

    pub fn rows(&self) -> usize {
        self.supply.len()
    }

    pub fn cols(&self) -> usize {
        self.demand.len()
    }

    pub fn supply(&self) -> &[f64] {
        &self.supply
    }

    pub fn demand(&self) -> &[f64] {
        &self.demand
    }

    pub fn cost(&self, i: usize, j: usize) -> f64 {
        self.cost[i * self.cols() + j]
    }
}

fn normalise(side: &'static str, mut masses: Vec<f64>) -> Result<Vec<f64>> {
    for (index, &value) in masses.iter().enumerate() {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidMass { side, index, value });
        }
    }
    let sum: f64 = masses.iter().sum();
    if (sum - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::MassMismatch { side, sum });
    }
    if sum != 1.0 {
        masses.iter_mut().for_each(|x| *x /= sum);
    }
    Ok(masses)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportSolution {
    rows: usize,
    cols: usize,
    /// Row-major optimal plan.
    pub plan: Vec<f64>,
    pub cost: f64,
    pub dual_u: Vec<f64>,
    pub dual_v: Vec<f64>,
    pub pivots: usize,
}

/// Residuals of the optimality conditions for a solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    /// Largest violation of a row or column marginal.
    pub marginal_error: f64,
    /// Largest `u_i + v_j - c_ij` (positive means infeasible duals).
    pub dual_violation: f64,
    /// `|primal cost - dual objective|`.
    pub duality_gap: f64,
    /// Smallest plan entry (negative means an infeasible plan).
    pub min_entry: f64,
}

impl Certificate {
    pub fn holds(&self, tol: f64) -> bool {
        self.marginal_error <= tol && self.dual_violation <= tol && self.duality_gap <= tol && self.min_entry >= -tol
    }
}

impl TransportSolution {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn flow(&self, i: usize, j: usize) -> f64 {
        self.plan[i * self.cols + j]
    }

    /// Checks primal feasibility, dual feasibility and strong duality against
    /// `problem`.
    pub fn certificate(&self, problem: &TransportProblem) -> Certificate {
        let (m, n) = (self.rows, self.cols);
        let mut marginal_error: f64 = 0.0;
        for i in 0..m {
            let row: f64 = (0..n).map(|j| self.flow(i, j)).sum();
            marginal_error = marginal_error.max((row - problem.supply[i]).abs());
        }
        for j in 0..n {
            let col: f64 = (0..m).map(|i| self.flow(i, j)).sum();
            marginal_error = marginal_error.max((col - problem.demand[j]).abs());
        }
        let mut dual_violation = f64::NEG_INFINITY;
        for i in 0..m {
            for j in 0..n {
                dual_violation = dual_violation.max(self.dual_u[i] + self.dual_v[j] - problem.cost(i, j));
            }
        }
        let dual_objective: f64 = self.dual_u.iter().zip(&problem.supply).map(|(u, s)| u * s).sum::<f64>()
            + self.dual_v.iter().zip(&problem.demand).map(|(v, d)| v * d).sum::<f64>();
        let primal: f64 = (0..m * n).map(|k| self.plan[k] * problem.cost[k]).sum();
        Certificate {
            marginal_error,
            dual_violation,
            duality_gap: (primal - dual_objective).abs().max((primal - self.cost).abs()),
            min_entry: self.plan.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }
}

struct Simplex<'a> {
    p: &'a TransportProblem,
    m: usize,
    n: usize,
    flow: Vec<f64>,
    basic: Vec<bool>,
    basis: Vec<usize>,
    u: Vec<f64>,
    v: Vec<f64>,
}

impl<'a> Simplex<'a> {
    fn northwest_corner(p: &'a TransportProblem) -> Self {
        let (m, n) = (p.rows(), p.cols());
        let mut flow = vec![0.0; m * n];
        let mut basic = vec![false; m * n];
        let mut basis = Vec::with_capacity(m + n - 1);
        let mut s = p.supply.clone();
        let mut d = p.demand.clone();
        let (mut i, mut j) = (0, 0);
        loop {
            let q = s[i].min(d[j]);
            let k = i * n + j;
            flow[k] = q;
            basic[k] = true;
            basis.push(k);
            let row_done = q == s[i];
            s[i] -= q;
            d[j] -= q;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if j == n - 1 || (row_done && i < m - 1) {
                i += 1;
            } else {
                j += 1;
            }
        }
        Simplex {
            p,
            m,
            n,
            flow,
            basic,
            basis,
            u: vec![0.0; m],
            v: vec![0.0; n],
        }
    }

    /// Node ids: rows are `0..m`, columns are `m..m+n`.
    fn tree_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.m + self.n];
        for &k in &self.basis {
            let (i, j) = (k / self.n, k % self.n);
            adj[i].push((self.m + j, k));
            adj[self.m + j].push((i, k));
        }
        adj
    }

    fn compute_potentials(&mut self, adj: &[Vec<(usize, usize)>]) {
        let mut seen = vec![false; self.m + self.n];
        self.u[0] = 0.0;
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(node) = queue.pop_front() {
            for &(next, k) in &adj[node] {
                if seen[next] {
                    continue;
                }
                seen[next] = true;
                let c = self.p.cost[k];
                if next >= self.m {
                    self.v[next - self.m] = c - self.u[node];
                } else {
                    self.u[next] = c - self.v[node - self.m];
                }
                queue.push_back(next);
            }
        }
    }

    fn entering(&self, bland: bool, eps: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.m {
            for j in 0..self.n {
                let k = i * self.n + j;
                if self.basic[k] {
                    continue;
                }
                let r = self.p.cost[k] - self.u[i] - self.v[j];
                if r >= -eps {
                    continue;
                }
                if bland {
                    return Some(k);
                }
                if best.map_or(true, |(_, b)| r < b) {
                    best = Some((k, r));
                }
            }
        }
        best.map(|(k, _)| k)
    }

    /// Basic cells on the tree path from column `q` back to row `p`, in order.
    fn cycle(&self, adj: &[Vec<(usize, usize)>], p: usize, q: usize) -> Vec<usize> {
        let start = self.m + q;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.m + self.n];
        let mut seen = vec![false; self.m + self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            if node == p {
                break;
            }
            for &(next, k) in &adj[node] {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some((node, k));
                    queue.push_back(next);
                }
            }
        }
        // Walk back from p to q, then reverse so the path starts at q.
        let mut cells = Vec::new();
        let mut node = p;
        while node != start {
            let (prev, k) = parent[node].expect("basis is a spanning tree");
            cells.push(k);
            node = prev;
        }
        cells.reverse();
        cells
    }

    fn solve(mut self) -> Result<TransportSolution> {
        let cmax = self.p.cost.iter().copied().fold(0.0f64, f64::max);
        let eps = 1e-12 * cmax.max(1.0);
        let limit = 50 * self.m * self.n + 1000;
        let mut pivots = 0;
        let mut degenerate_run = 0;
        loop {
            let adj = self.tree_adjacency();
            self.compute_potentials(&adj);
            let bland = degenerate_run >= DEGENERATE_STREAK;
            let Some(enter) = self.entering(bland, eps) else {
                break;
            };
            if pivots == limit {
                return Err(Error::PivotLimit(limit));
            }
            pivots += 1;

            let (p, q) = (enter / self.n, enter % self.n);
            let path = self.cycle(&adj, p, q);
            // path[0], path[2], ... lose flow; path[1], path[3], ... gain it.
            let mut theta = f64::INFINITY;
            for &k in path.iter().step_by(2) {
                theta = theta.min(self.flow[k]);
            }
            let leave = path
                .iter()
                .step_by(2)
                .copied()
                .filter(|&k| self.flow[k] <= theta)
                .min()
                .expect("cycle has a losing cell");

            for (idx, &k) in path.iter().enumerate() {
                if idx % 2 == 0 {
                    self.flow[k] = (self.flow[k] - theta).max(0.0);
                } else {
                    self.flow[k] += theta;
                }
            }
            self.flow[enter] = theta;
            self.flow[leave] = 0.0;
            self.basic[leave] = false;
            self.basic[enter] = true;
            let slot = self
                .basis
                .iter()
                .position(|&k| k == leave)
                .expect("leaving cell is basic");
            self.basis[slot] = enter;

            degenerate_run = if theta > 0.0 { 0 } else { degenerate_run + 1 };
        }
        let cost = self.flow.iter().zip(&self.p.cost).map(|(x, c)| x * c).sum();
        Ok(TransportSolution {
            rows: self.m,
            cols: self.n,
            plan: self.flow,
            cost,
            dual_u: self.u,
            dual_v: self.v,
            pivots,
        })
    }
}

/// Optimal transport plan, cost and dual potentials for `problem`.
pub fn solve_transport(problem: &TransportProblem) -> Result<TransportSolution> {
    Simplex::northwest_corner(problem).solve()
}
