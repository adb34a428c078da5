//! One function per subcommand.

use std::path::Path;

use anyhow::{bail, Context};
use riccinet_core::report::VERTEX_COLUMNS;
use riccinet_core::{
    compare_strategies, edge_curvature_report, histogram, parse_edge_list, threshold_subnetwork,
    vertex_curvature_report, write_edge_list, DirectedGraph, EdgeMeasures, Family, RankingMode, RemovalConfig,
    RemovalStrategy, StrategyKind,
};

use crate::experiments::{self, column_scope, correlate, ModelSpec, Pair, Scope, Tables};
use crate::format::{fixed, Cell, Table};
use crate::manifest::RunManifest;
use crate::output::{emit, Payload};
use crate::{Cli, Command, FamilyArg, Format, GeneratorArgs, GlobalArgs, Measure, Model, Ranking};

pub fn dispatch(cli: Cli, command_line: Vec<String>) -> anyhow::Result<()> {
    let mut manifest = RunManifest::new(command_line);
    let global = &cli.global;
    let payload = match cli.command {
        Command::Generate { model, params } => generate(global, &mut manifest, model, &params)?,
        Command::Curvature { measures, faces } => {
            let g = load_graph(global, &mut manifest)?;
            curvature(&g, &mut manifest, &measures, faces.into())?
        }
        Command::VertexCurvature { faces, no_or } => {
            let g = load_graph(global, &mut manifest)?;
            vertex_curvature(&g, &mut manifest, faces.into(), !no_or)?
        }
        Command::Correlate {
            pairs,
            preset,
            model,
            params,
            seeds,
            faces,
        } => {
            let mut all: Vec<Pair> = pairs.iter().map(|p| Pair::parse(p)).collect::<anyhow::Result<_>>()?;
            if let Some(name) = preset {
                all.extend(experiments::preset(&name)?);
            }
            if all.is_empty() {
                bail!("no column pairs given; use --pairs x:y or --preset");
            }
            match model {
                Some(model) => {
                    if global.input.is_some() {
                        bail!("--model generates replicates and cannot be combined with --input");
                    }
                    let spec = model_spec(model, &params)?;
                    correlate_replicates(global, &mut manifest, &spec, seeds, &all, faces.into())?
                }
                None => {
                    let g = load_graph(global, &mut manifest)?;
                    correlate_graph(&g, &mut manifest, &all, faces.into())?
                }
            }
        }
        Command::Robustness {
            family,
            strategies,
            step,
            max,
            ranking,
        } => {
            let g = load_graph(global, &mut manifest)?;
            let cfg = RemovalConfig {
                step_fraction: step,
                max_fraction: max,
                mode: match ranking {
                    Ranking::Static => RankingMode::Static,
                    Ranking::Recompute => RankingMode::Recompute,
                },
            };
            robustness(&g, &mut manifest, family, &strategies, global.seed, &cfg)?
        }
        Command::Hist { column, bins, faces } => {
            let g = load_graph(global, &mut manifest)?;
            hist(&g, &mut manifest, &column, bins, faces.into())?
        }
        Command::Subnetwork {
            measure,
            threshold,
            faces,
        } => {
            let g = load_graph(global, &mut manifest)?;
            subnetwork(&g, &mut manifest, &measure, threshold, faces.into())?
        }
    };
    if matches!(payload, Payload::EdgeList(_)) && global.format == Format::Json {
        bail!("this command writes an edge list; --format json is not supported");
    }
    for (key, count) in &manifest.warnings {
        eprintln!("warning: {key}: {count}");
    }
    emit(payload, global.format, global.output.as_deref(), &manifest)
}

fn read_file(path: &Path, manifest: &mut RunManifest) -> anyhow::Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    manifest.record_input(path, &bytes);
    String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
}

pub fn load_graph(global: &GlobalArgs, manifest: &mut RunManifest) -> anyhow::Result<DirectedGraph> {
    let path = global.input.as_deref().context("this command needs --input")?;
    let text = read_file(path, manifest)?;
    let weights = match &global.vertex_weights {
        Some(p) => Some(read_file(p, manifest)?),
        None => None,
    };
    let parsed = parse_edge_list(&text, weights.as_deref()).with_context(|| format!("parsing {}", path.display()))?;
    manifest.warn("duplicate_edges", parsed.duplicates);
    manifest.warn("self_loops", parsed.graph.self_loop_count());
    Ok(parsed.graph)
}

pub fn model_spec(model: Model, params: &GeneratorArgs) -> anyhow::Result<ModelSpec> {
    let n = params.n.context("--n is required")?;
    Ok(match model {
        Model::Er => ModelSpec::Er {
            n,
            p: params.p.context("--p is required for the ER model")?,
        },
        Model::Sf => ModelSpec::Sf {
            n,
            m: params.m.context("--m is required for the SF model")?,
            lambda_in: params.lambda_in,
            lambda_out: params.lambda_out,
        },
    })
}

fn edge_list_bytes(g: &DirectedGraph) -> anyhow::Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf)?;
    Ok(buf)
}

fn generate(
    global: &GlobalArgs,
    manifest: &mut RunManifest,
    model: Model,
    params: &GeneratorArgs,
) -> anyhow::Result<Payload> {
    let spec = model_spec(model, params)?;
    let g = spec.generate(global.seed)?;
    manifest.seeds = vec![global.seed];
    manifest.generator = Some(serde_json::to_value(spec)?);
    Ok(Payload::EdgeList(edge_list_bytes(&g)?))
}

pub const CURVATURE_COLUMNS: [&str; 6] = ["source", "target", "fr", "afr", "or", "or_fallback"];

fn curvature(
    g: &DirectedGraph,
    manifest: &mut RunManifest,
    measures: &[Measure],
    membership: riccinet_core::FaceMembership,
) -> anyhow::Result<Payload> {
    let wanted = EdgeMeasures {
        fr: measures.contains(&Measure::Fr),
        afr: measures.contains(&Measure::Afr),
        or: measures.contains(&Measure::Or),
        betweenness: false,
    };
    let report = edge_curvature_report(g, wanted, membership)?;
    manifest.warn("self_loop_rows_left_empty", report.self_loops);
    let mut table = Table::new(&CURVATURE_COLUMNS);
    for row in &report.rows {
        table.push(vec![
            Cell::Text(g.label(row.source).to_string()),
            Cell::Text(g.label(row.target).to_string()),
            Cell::opt_real(row.fr),
            Cell::opt_real(row.afr),
            Cell::opt_real(row.or),
            row.or_fallback.map_or(Cell::Empty, Cell::Bool),
        ]);
    }
    Ok(Payload::Table(table))
}

fn vertex_curvature(
    g: &DirectedGraph,
    manifest: &mut RunManifest,
    membership: riccinet_core::FaceMembership,
    with_or: bool,
) -> anyhow::Result<Payload> {
    let report = vertex_curvature_report(g, membership, with_or)?;
    if !with_or {
        manifest.warn("or_columns_left_empty", g.vertex_count());
    }
    let mut columns = vec!["vertex"];
    columns.extend(VERTEX_COLUMNS);
    let mut table = Table::new(&columns);
    for r in &report.rows {
        table.push(vec![
            Cell::Text(g.label(r.vertex).to_string()),
            Cell::Int(r.in_degree as u64),
            Cell::Int(r.out_degree as u64),
            Cell::Real(r.ifr),
            Cell::Real(r.ofr),
            Cell::Real(r.tfr),
            Cell::Real(r.iafr),
            Cell::Real(r.oafr),
            Cell::opt_real(r.ior),
            Cell::opt_real(r.oor),
            Cell::opt_real(r.tor),
            Cell::Real(r.betweenness),
            Cell::Real(r.pagerank),
        ]);
    }
    Ok(Payload::Table(table))
}

fn correlate_graph(
    g: &DirectedGraph,
    manifest: &mut RunManifest,
    pairs: &[Pair],
    membership: riccinet_core::FaceMembership,
) -> anyhow::Result<Payload> {
    let tables = Tables::compute(g, &experiments::pair_columns(pairs), membership)?;
    let mut table = Table::new(&["x", "y", "n", "rho"]);
    let mut undefined = 0;
    for p in pairs {
        let (rho, n) = correlate(&tables, p)?;
        undefined += usize::from(rho.is_none());
        table.push(vec![
            Cell::Text(p.x.clone()),
            Cell::Text(p.y.clone()),
            Cell::Int(n as u64),
            rho.map_or(Cell::Text("undefined".into()), Cell::Real),
        ]);
    }
    manifest.warn("undefined_correlations", undefined);
    Ok(Payload::Table(table))
}

fn correlate_replicates(
    global: &GlobalArgs,
    manifest: &mut RunManifest,
    spec: &ModelSpec,
    count: usize,
    pairs: &[Pair],
    membership: riccinet_core::FaceMembership,
) -> anyhow::Result<Payload> {
    if count == 0 {
        bail!("--seeds must be at least 1");
    }
    let seeds: Vec<u64> = (0..count as u64).map(|k| global.seed + k).collect();
    manifest.seeds = seeds.clone();
    manifest.generator = Some(serde_json::to_value(spec)?);
    let summaries = experiments::replicate(spec, &seeds, pairs, membership)?;
    let mut table = Table::new(&["x", "y", "replicates", "mean", "se"]);
    let undefined = |s: Option<String>| Cell::Text(s.unwrap_or_else(|| "undefined".into()));
    for s in summaries {
        manifest.warn("undefined_replicates", count - s.defined);
        table.push(vec![
            Cell::Text(s.pair.x),
            Cell::Text(s.pair.y),
            Cell::Int(s.defined as u64),
            undefined(s.mean.map(|m| fixed(m, 2))),
            undefined(s.se.map(|e| fixed(e, 4))),
        ]);
    }
    Ok(Payload::Table(table))
}

fn robustness(
    g: &DirectedGraph,
    manifest: &mut RunManifest,
    family: FamilyArg,
    names: &[String],
    seed: u64,
    cfg: &RemovalConfig,
) -> anyhow::Result<Payload> {
    let family = match family {
        FamilyArg::Edge => Family::Edge,
        FamilyArg::Vertex => Family::Vertex,
    };
    let kinds: Vec<StrategyKind> = if names.is_empty() {
        StrategyKind::ALL
            .into_iter()
            .filter(|k| k.family().map_or(true, |f| f == family))
            .collect()
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?
    };
    let strategies: Vec<RemovalStrategy> = kinds.into_iter().map(|k| RemovalStrategy::new(k, seed)).collect();
    manifest.seeds = vec![seed];
    let results = compare_strategies(g, &strategies, family, cfg)?;
    let mut table = Table::new(&["strategy", "fraction", "efficiency"]);
    for r in &results {
        for &(fraction, efficiency) in &r.curve.points {
            table.push(vec![
                Cell::Text(r.curve.strategy.kind.name().into()),
                Cell::Real(fraction),
                Cell::Real(efficiency),
            ]);
        }
    }
    Ok(Payload::Table(table))
}

fn hist(
    g: &DirectedGraph,
    manifest: &mut RunManifest,
    column: &str,
    bins: usize,
    membership: riccinet_core::FaceMembership,
) -> anyhow::Result<Payload> {
    let tables = Tables::compute(g, &[column], membership)?;
    let cells = tables.column(column)?;
    let values: Vec<f64> = cells.iter().flatten().copied().collect();
    if values.is_empty() {
        bail!("column `{column}` has no defined values");
    }
    manifest.warn("undefined_rows", cells.len() - values.len());
    let mut table = Table::new(&["bin_lower", "count"]);
    for (lower, count) in histogram(&values, bins)? {
        table.push(vec![Cell::Real(lower), Cell::Int(count as u64)]);
    }
    Ok(Payload::Table(table))
}

fn subnetwork(
    g: &DirectedGraph,
    manifest: &mut RunManifest,
    measure: &str,
    threshold: f64,
    membership: riccinet_core::FaceMembership,
) -> anyhow::Result<Payload> {
    if column_scope(measure)? != Scope::Edge {
        bail!("subnetwork needs an edge measure (fr, afr, or, ebc), got `{measure}`");
    }
    let values = Tables::compute(g, &[measure], membership)?.column(measure)?;
    manifest.warn("self_loops_excluded", g.self_loop_count());
    Ok(Payload::EdgeList(edge_list_bytes(&threshold_subnetwork(
        g, &values, threshold,
    ))?))
}
