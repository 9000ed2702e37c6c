//! Partitioning methods into `k` microservice candidates with NSGA-III.
//!
//! Three objectives drive the search: coupling (minimized), cohesion and
//! semantic similarity (both maximized). Internally the optimizer works on
//! the all-minimized form `(coupling, -cohesion, -semsim)`.

mod hypervolume;
mod nsga3;
mod objectives;
mod operators;
mod optimizer;
mod oracle;
mod solution;

pub use hypervolume::hypervolume;
pub use nsga3::{dominates, nondominated_sort, reference_points, select_next_generation};
pub use objectives::{
    cluster_metrics, cohesion_mean, cohesion_of, coupling_of, coupling_total, semsim_mean,
    semsim_of, ClusterMetrics, ObjectiveContext, ObjectiveVector, SemSimNormalization,
};
pub use operators::{crossover, init_population, inject_cluster, mutate, repair};
pub use optimizer::{
    pick_final_solution, run_optimizer, GenerationStats, OptimizerConfig, OptimizerRun,
};
pub use oracle::{brute_force_pareto, for_each_partition, stirling2, ORACLE_MAX_METHODS};
pub use solution::ClusteringSolution;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusteringError {
    #[error("cannot split {n} methods into {k} non-empty clusters")]
    InfeasibleK { n: usize, k: usize },
    #[error("invalid clustering: {0}")]
    InvalidSolution(String),
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("similarity matrix has {sim} rows but the graph has {graph} nodes")]
    SizeMismatch { graph: usize, sim: usize },
    #[error("exhaustive enumeration is limited to {max} methods, got {n}")]
    OracleTooLarge { n: usize, max: usize },
}
