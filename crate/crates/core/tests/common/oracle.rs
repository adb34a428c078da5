//! Exact transport by enumerating vertices of the transportation polytope in
//! rational arithmetic.
//!
//! A basic feasible solution has a forest as support, so it can always be
//! built by repeatedly choosing a cell `(i, j)` and shipping
//! `min(s_i, d_j)`, which exhausts row `i` or column `j` (a leaf of the
//! forest). Enumerating every such choice sequence reaches every vertex, and
//! every sequence yields a feasible plan. Residual states are memoised and
//! branches are cut with a dual lower bound. Rows (columns) with identical
//! cost vectors are merged first, which does not change the optimum.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;

pub type Q = Ratio<i64>;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm_of_denominators(values: &[Q]) -> i64 {
    values.iter().fold(1, |acc, q| acc / gcd(acc, *q.denom()) * q.denom())
}

/// Sums the masses of identical cost rows.
fn merge_rows(masses: &[Q], cost: &[Vec<i64>]) -> (Vec<Q>, Vec<Vec<i64>>) {
    let mut out_m: Vec<Q> = Vec::new();
    let mut out_c: Vec<Vec<i64>> = Vec::new();
    for (m, row) in masses.iter().zip(cost) {
        match out_c.iter().position(|r| r == row) {
            Some(k) => out_m[k] += *m,
            None => {
                out_m.push(*m);
                out_c.push(row.clone());
            }
        }
    }
    (out_m, out_c)
}

fn transpose(cost: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = cost.first().map_or(0, Vec::len);
    (0..cols).map(|j| cost.iter().map(|row| row[j]).collect()).collect()
}

struct Search<'a> {
    rows: usize,
    cost: &'a [Vec<i64>],
    memo: HashMap<Vec<i64>, i64>,
}

impl Search<'_> {
    /// Lower bound on the remaining cost from two greedy dual-feasible
    /// potential pairs (row minima first, or column minima first).
    fn lower_bound(&self, state: &[i64]) -> i64 {
        let r = self.rows;
        let rows: Vec<usize> = (0..r).filter(|&i| state[i] > 0).collect();
        let cols: Vec<usize> = (0..state.len() - r).filter(|&j| state[r + j] > 0).collect();
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        let c = |i: usize, j: usize| self.cost[i][j];
        let objective = |u: &[i64], v: &[i64]| -> i64 {
            rows.iter().zip(u).map(|(&i, x)| x * state[i]).sum::<i64>()
                + cols.iter().zip(v).map(|(&j, x)| x * state[r + j]).sum::<i64>()
        };
        let u: Vec<i64> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| c(i, j)).min().unwrap())
            .collect();
        let v: Vec<i64> = cols
            .iter()
            .map(|&j| rows.iter().zip(&u).map(|(&i, ui)| c(i, j) - ui).min().unwrap())
            .collect();
        let v2: Vec<i64> = cols
            .iter()
            .map(|&j| rows.iter().map(|&i| c(i, j)).min().unwrap())
            .collect();
        let u2: Vec<i64> = rows
            .iter()
            .map(|&i| cols.iter().zip(&v2).map(|(&j, vj)| c(i, j) - vj).min().unwrap())
            .collect();
        objective(&u, &v).max(objective(&u2, &v2))
    }

    /// Exact minimum remaining cost; `state` holds row residuals then column
    /// residuals in scaled integer units. Children that cannot beat the best
    /// value found so far are skipped, so the returned value stays exact.
    fn best(&mut self, state: &mut Vec<i64>) -> i64 {
        if let Some(&v) = self.memo.get(state.as_slice()) {
            return v;
        }
        let r = self.rows;
        let mut children = Vec::new();
        for i in 0..r {
            for j in 0..state.len() - r {
                if state[i] == 0 || state[r + j] == 0 {
                    continue;
                }
                let q = state[i].min(state[r + j]);
                state[i] -= q;
                state[r + j] -= q;
                children.push((self.cost[i][j] * q + self.lower_bound(state), i, j, q));
                state[i] += q;
                state[r + j] += q;
            }
        }
        children.sort_unstable();
        let mut best: Option<i64> = None;
        for (bound, i, j, q) in children {
            if best.is_some_and(|b| bound >= b) {
                break;
            }
            state[i] -= q;
            state[r + j] -= q;
            let total = self.cost[i][j] * q + self.best(state);
            state[i] += q;
            state[r + j] += q;
            if best.map_or(true, |b| total < b) {
                best = Some(total);
            }
        }
        let value = best.unwrap_or(0);
        self.memo.insert(state.clone(), value);
        value
    }
}

/// Exact optimal transport cost for integer costs. Masses must be positive
/// and balanced.
pub fn exact_transport_cost(supply: &[Q], demand: &[Q], cost: &[Vec<i64>]) -> Q {
    let total: Q = supply.iter().sum();
    assert_eq!(total, demand.iter().sum::<Q>(), "unbalanced masses");
    let (supply, cost) = merge_rows(supply, cost);
    let (demand, cost_t) = merge_rows(demand, &transpose(&cost));
    let cost = transpose(&cost_t);

    let (ls, ld) = (lcm_of_denominators(&supply), lcm_of_denominators(&demand));
    let scale = ls / gcd(ls, ld) * ld;
    let mut state: Vec<i64> = supply
        .iter()
        .chain(&demand)
        .map(|m| (*m * scale).to_integer())
        .collect();
    let mut search = Search {
        rows: supply.len(),
        cost: &cost,
        memo: HashMap::new(),
    };
    Q::new(search.best(&mut state), scale)
}

/// Every distinct vertex of the transportation polytope, as row-major
/// plans. Exponential; for tiny problems only.
pub fn basic_feasible_solutions(supply: &[Q], demand: &[Q]) -> BTreeSet<Vec<Q>> {
    fn walk(s: &mut Vec<Q>, d: &mut Vec<Q>, plan: &mut Vec<Q>, out: &mut BTreeSet<Vec<Q>>) {
        let (m, n) = (s.len(), d.len());
        let zero = Q::from_integer(0);
        let mut moved = false;
        for i in 0..m {
            for j in 0..n {
                if s[i] == zero || d[j] == zero {
                    continue;
                }
                moved = true;
                let q = s[i].min(d[j]);
                s[i] -= q;
                d[j] -= q;
                plan[i * n + j] += q;
                walk(s, d, plan, out);
                plan[i * n + j] -= q;
                s[i] += q;
                d[j] += q;
            }
        }
        if !moved {
            out.insert(plan.clone());
        }
    }
    let mut out = BTreeSet::new();
    let mut plan = vec![Q::from_integer(0); supply.len() * demand.len()];
    walk(&mut supply.to_vec(), &mut demand.to_vec(), &mut plan, &mut out);
    out
}

/// Exact `W1` between uniform measures of sizes `rows` and `cols` with
/// integer ground distances.
pub fn exact_uniform_w1(cost: &[Vec<u32>]) -> Q {
    let rows = cost.len();
    let cols = cost[0].len();
    let supply = vec![Q::new(1, rows as i64); rows];
    let demand = vec![Q::new(1, cols as i64); cols];
    let cost: Vec<Vec<i64>> = cost.iter().map(|r| r.iter().map(|&c| c as i64).collect()).collect();
    exact_transport_cost(&supply, &demand, &cost)
}

pub fn to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}
