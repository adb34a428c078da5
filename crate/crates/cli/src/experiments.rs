//! Column lookup over edge and vertex tables, pairwise rank correlations and
//! replicate summaries over generated graphs.

use anyhow::{bail, Context};
use rayon::prelude::*;
use riccinet_core::report::{complete_pairs, EDGE_COLUMNS, VERTEX_COLUMNS};
use riccinet_core::{
    edge_curvature_report, generate_er, generate_sf_fitness, spearman, vertex_curvature_report, DirectedGraph,
    EdgeCurvatureReport, EdgeMeasures, ErParams, Error, FaceMembership, SfParams, VertexCurvatureReport,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Edge,
    Vertex,
}

pub fn column_scope(name: &str) -> anyhow::Result<Scope> {
    if EDGE_COLUMNS.contains(&name) {
        Ok(Scope::Edge)
    } else if VERTEX_COLUMNS.contains(&name) {
        Ok(Scope::Vertex)
    } else {
        bail!(
            "unknown column `{name}`; edge columns: {}; vertex columns: {}",
            EDGE_COLUMNS.join(", "),
            VERTEX_COLUMNS.join(", ")
        )
    }
}

fn needs_or(name: &str) -> bool {
    matches!(name, "or" | "ior" | "oor" | "tor")
}

/// Only the reports, and the measures within them, that `columns` need.
#[derive(Debug, Clone, Default)]
pub struct Tables {
    pub edge: Option<EdgeCurvatureReport>,
    pub vertex: Option<VertexCurvatureReport>,
    computed: Vec<String>,
}

impl Tables {
    pub fn compute(g: &DirectedGraph, columns: &[&str], membership: FaceMembership) -> anyhow::Result<Tables> {
        let mut edge_cols = Vec::new();
        let mut vertex_cols = Vec::new();
        for &c in columns {
            match column_scope(c)? {
                Scope::Edge => edge_cols.push(c),
                Scope::Vertex => vertex_cols.push(c),
            }
        }
        let edge = if edge_cols.is_empty() {
            None
        } else {
            let measures = EdgeMeasures {
                fr: edge_cols.contains(&"fr"),
                afr: edge_cols.contains(&"afr"),
                or: edge_cols.contains(&"or"),
                betweenness: edge_cols.contains(&"ebc"),
            };
            Some(edge_curvature_report(g, measures, membership)?)
        };
        let vertex = if vertex_cols.is_empty() {
            None
        } else {
            let with_or = vertex_cols.iter().any(|c| needs_or(c));
            Some(vertex_curvature_report(g, membership, with_or)?)
        };
        Ok(Tables {
            edge,
            vertex,
            computed: columns.iter().map(|c| c.to_string()).collect(),
        })
    }

    pub fn column(&self, name: &str) -> anyhow::Result<Vec<Option<f64>>> {
        let missing = || anyhow::anyhow!("column `{name}` was not computed");
        if !self.computed.iter().any(|c| c == name) {
            return Err(missing());
        }
        Ok(match column_scope(name)? {
            Scope::Edge => self.edge.as_ref().ok_or_else(missing)?.column(name)?,
            Scope::Vertex => self.vertex.as_ref().ok_or_else(missing)?.column(name)?,
        })
    }
}

/// A pair of column names; both must belong to the same table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pair {
    pub x: String,
    pub y: String,
}

impl Pair {
    pub fn new(x: &str, y: &str) -> Self {
        Pair {
            x: x.to_string(),
            y: y.to_string(),
        }
    }

    /// Parses `x:y`.
    pub fn parse(spec: &str) -> anyhow::Result<Pair> {
        let (x, y) = spec
            .split_once(':')
            .with_context(|| format!("column pair `{spec}` must look like `x:y`"))?;
        if column_scope(x)? != column_scope(y)? {
            bail!("columns `{x}` and `{y}` belong to different tables (edge vs vertex)");
        }
        Ok(Pair::new(x, y))
    }
}

/// Named groups of pairs matching the standard comparisons.
pub const PRESETS: [(&str, &[(&str, &str)]); 6] = [
    ("ollivier-forman", &[("or", "fr"), ("or", "afr")]),
    ("edge-betweenness", &[("ebc", "or"), ("ebc", "fr"), ("ebc", "afr")]),
    (
        "vertex-ollivier-forman",
        &[("ior", "ifr"), ("ior", "iafr"), ("oor", "ofr"), ("oor", "oafr")],
    ),
    (
        "degree",
        &[
            ("in_degree", "ior"),
            ("in_degree", "ifr"),
            ("in_degree", "iafr"),
            ("out_degree", "oor"),
            ("out_degree", "ofr"),
            ("out_degree", "oafr"),
        ],
    ),
    (
        "betweenness",
        &[
            ("betweenness", "ior"),
            ("betweenness", "oor"),
            ("betweenness", "ifr"),
            ("betweenness", "ofr"),
            ("betweenness", "iafr"),
            ("betweenness", "oafr"),
        ],
    ),
    (
        "pagerank",
        &[
            ("pagerank", "ior"),
            ("pagerank", "oor"),
            ("pagerank", "ifr"),
            ("pagerank", "ofr"),
            ("pagerank", "iafr"),
            ("pagerank", "oafr"),
        ],
    ),
];

pub fn preset(name: &str) -> anyhow::Result<Vec<Pair>> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, pairs)| pairs.iter().map(|(x, y)| Pair::new(x, y)).collect())
        .with_context(|| {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            format!("unknown preset `{name}`; known presets: {}", names.join(", "))
        })
}

pub fn pair_columns(pairs: &[Pair]) -> Vec<&str> {
    let mut cols: Vec<&str> = Vec::new();
    for p in pairs {
        for c in [p.x.as_str(), p.y.as_str()] {
            if !cols.contains(&c) {
                cols.push(c);
            }
        }
    }
    cols
}

/// Spearman ρ over rows where both columns are defined, and the number of
/// such rows. `None` when ρ is undefined (fewer than two rows, or a constant
/// column).
pub fn correlate(tables: &Tables, pair: &Pair) -> anyhow::Result<(Option<f64>, usize)> {
    let (x, y) = complete_pairs(&tables.column(&pair.x)?, &tables.column(&pair.y)?);
    if x.len() < 2 {
        return Ok((None, x.len()));
    }
    match spearman(&x, &y) {
        Ok(r) => Ok((Some(r.rho), r.n)),
        Err(Error::CorrelationUndefined(_)) => Ok((None, x.len())),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    Er {
        n: usize,
        p: f64,
    },
    Sf {
        n: usize,
        m: usize,
        lambda_in: f64,
        lambda_out: f64,
    },
}

impl ModelSpec {
    pub fn generate(&self, seed: u64) -> riccinet_core::Result<DirectedGraph> {
        match *self {
            ModelSpec::Er { n, p } => generate_er(ErParams { n, p, seed }),
            ModelSpec::Sf {
                n,
                m,
                lambda_in,
                lambda_out,
            } => generate_sf_fitness(SfParams {
                n,
                m,
                lambda_in,
                lambda_out,
                seed,
            }),
        }
    }
}

/// Mean and standard error of one pair over replicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairSummary {
    pub pair: Pair,
    /// Replicates where ρ was defined.
    pub defined: usize,
    pub mean: Option<f64>,
    /// Sample standard deviation over `sqrt(defined)`; needs two replicates.
    pub se: Option<f64>,
}

pub fn summarise(pair: Pair, values: &[f64]) -> PairSummary {
    let k = values.len();
    let mean = (k > 0).then(|| values.iter().sum::<f64>() / k as f64);
    let se = mean.filter(|_| k > 1).map(|m| {
        let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (k - 1) as f64;
        (var / k as f64).sqrt()
    });
    PairSummary {
        pair,
        defined: k,
        mean,
        se,
    }
}

/// Per-seed ρ for every pair (`rho[seed_index][pair_index]`). Each seed
/// generates one graph and computes its tables once for all pairs.
pub fn replicate_rhos(
    model: &ModelSpec,
    seeds: &[u64],
    pairs: &[Pair],
    membership: FaceMembership,
) -> anyhow::Result<Vec<Vec<Option<f64>>>> {
    let columns = pair_columns(pairs);
    seeds
        .par_iter()
        .map(|&seed| {
            let g = model.generate(seed)?;
            let tables = Tables::compute(&g, &columns, membership)?;
            pairs.iter().map(|p| Ok(correlate(&tables, p)?.0)).collect()
        })
        .collect()
}

pub fn replicate(
    model: &ModelSpec,
    seeds: &[u64],
    pairs: &[Pair],
    membership: FaceMembership,
) -> anyhow::Result<Vec<PairSummary>> {
    let rhos = replicate_rhos(model, seeds, pairs, membership)?;
    Ok(pairs
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let values: Vec<f64> = rhos.iter().filter_map(|r| r[k]).collect();
            summarise(p.clone(), &values)
        })
        .collect())
}
