//! Discrete Ricci curvature for directed networks.
//!
//! Edge and vertex Forman-Ricci, augmented Forman-Ricci (feed-forward-loop
//! faces) and Ollivier-Ricci curvature, with the transport solver, random
//! graph models, centralities and removal experiments used to study them.

pub mod error;
pub mod forman;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod ollivier;
pub mod report;
pub mod robustness;
pub mod transport;

pub use error::{Error, Result};
pub use forman::{
    afr_edge_directed, afr_edge_undirected, edge_forman, fr_edge_directed, fr_edge_undirected, threshold_subnetwork,
    vertex_forman, EdgeFormanValues, FaceMembership, VertexFormanValues,
};
pub use generators::{generate_er, generate_sf_fitness, ErParams, SfParams, RNG_ALGORITHM};
pub use graph::{
    enumerate_ffl_faces, parse_edge_list, parse_vertex_weights, write_edge_list, DirectedGraph, Edge, EdgeId,
    FaceIndex, GraphBuilder, ParsedGraph, TriangleFace, UndirectedGraph, VertexId,
};
pub use metrics::{
    communication_efficiency, edge_betweenness, histogram, pagerank, spearman, vertex_betweenness, vertex_metrics,
    CorrelationResult, VertexMetricRow,
};
pub use ollivier::{
    build_measures, edge_ollivier, or_edge_directed, vertex_ollivier, DirectedMeasurePair, EdgeOllivierValue,
    VertexOllivierValues,
};
pub use report::{
    edge_curvature_report, vertex_curvature_report, EdgeCurvatureReport, EdgeCurvatureRow, EdgeMeasures,
    VertexCurvatureReport, VertexCurvatureRow,
};
pub use robustness::{
    compare_strategies, run_edge_removal, run_vertex_removal, Family, RankingMode, RemovalConfig, RemovalCurve,
    RemovalStrategy, StrategyComparison, StrategyKind,
};
pub use transport::{solve_transport, Certificate, TransportProblem, TransportSolution};
