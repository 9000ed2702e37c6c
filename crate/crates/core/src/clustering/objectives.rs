use serde::{Deserialize, Serialize};

use super::solution::ClusteringSolution;
use super::ClusteringError;
use crate::callgraph::CallGraph;
use crate::semantics::SimilarityMatrix;
use crate::Scalar;

/// Edge counts of one cluster.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterMetrics {
    pub v_cluster: usize,
    pub e_internal: usize,
    /// Edges with exactly one endpoint in the cluster, either direction.
    pub e_external: usize,
}

impl ClusterMetrics {
    pub fn of_members(members: &[usize], edges: &[(usize, usize)], n: usize) -> Self {
        let mut inside = vec![false; n];
        for &m in members {
            inside[m] = true;
        }
        let mut out = Self {
            v_cluster: members.len(),
            ..Self::default()
        };
        for &(a, b) in edges {
            match (inside[a], inside[b]) {
                (true, true) => out.e_internal += 1,
                (true, false) | (false, true) => out.e_external += 1,
                _ => {}
            }
        }
        out
    }

    pub fn coupling<F: Scalar>(&self) -> F {
        let total = self.e_internal + self.e_external;
        if total == 0 {
            F::zero()
        } else {
            F::of_usize(self.e_external) / F::of_usize(total)
        }
    }

    /// Internal edges per member, capped at 1.
    pub fn cohesion<F: Scalar>(&self) -> F {
        if self.v_cluster == 0 {
            return F::zero();
        }
        (F::of_usize(self.e_internal) / F::of_usize(self.v_cluster)).min(F::one())
    }
}

/// Divisor applied to a cluster's ordered-pair similarity sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemSimNormalization {
    /// Divide by the member count `V`; values may exceed 1.
    #[default]
    ClusterSize,
    /// Divide by the ordered pair count `V (V - 1)`; values stay in `[-1, 1]`.
    PairCount,
}

/// Objective values in their natural sense.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector<F> {
    pub coupling: F,
    pub cohesion: F,
    pub semsim: F,
}

impl<F: Scalar> ObjectiveVector<F> {
    /// `(coupling, -cohesion, -semsim)`, all minimized.
    pub fn minimized(&self) -> [F; 3] {
        [self.coupling, -self.cohesion, -self.semsim]
    }

    pub fn from_minimized(v: &[F]) -> Self {
        Self {
            coupling: v[0],
            cohesion: -v[1],
            semsim: -v[2],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coupling.is_finite() && self.cohesion.is_finite() && self.semsim.is_finite()
    }

    pub fn to_f64(&self) -> ObjectiveVector<f64> {
        ObjectiveVector {
            coupling: self.coupling.as_f64(),
            cohesion: self.cohesion.as_f64(),
            semsim: self.semsim.as_f64(),
        }
    }
}

fn semsim_members<F: Scalar>(
    members: &[usize],
    sim: &SimilarityMatrix<F>,
    norm: SemSimNormalization,
) -> F {
    let v = members.len();
    if v < 2 {
        return F::zero();
    }
    let mut sum = F::zero();
    for &i in members {
        for &j in members {
            if i != j {
                sum = sum + sim.get(i, j);
            }
        }
    }
    let denom = match norm {
        SemSimNormalization::ClusterSize => v,
        SemSimNormalization::PairCount => v * (v - 1),
    };
    sum / F::of_usize(denom)
}

/// Evaluates solutions against a fixed graph and similarity matrix.
#[derive(Clone, Debug)]
pub struct ObjectiveContext<'a, F> {
    n: usize,
    edges: &'a [(usize, usize)],
    sim: &'a SimilarityMatrix<F>,
    norm: SemSimNormalization,
}

impl<'a, F: Scalar> ObjectiveContext<'a, F> {
    pub fn new(
        graph: &'a CallGraph,
        sim: &'a SimilarityMatrix<F>,
        norm: SemSimNormalization,
    ) -> Result<Self, ClusteringError> {
        if graph.len() != sim.len() {
            return Err(ClusteringError::SizeMismatch {
                graph: graph.len(),
                sim: sim.len(),
            });
        }
        Ok(Self {
            n: graph.len(),
            edges: graph.edges(),
            sim,
            norm,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn normalization(&self) -> SemSimNormalization {
        self.norm
    }

    pub fn metrics(&self, solution: &ClusteringSolution) -> Vec<ClusterMetrics> {
        let mut out: Vec<ClusterMetrics> = vec![ClusterMetrics::default(); solution.k()];
        let a = solution.assignment();
        for &c in a {
            out[c].v_cluster += 1;
        }
        for &(x, y) in self.edges {
            let (cx, cy) = (a[x], a[y]);
            if cx == cy {
                out[cx].e_internal += 1;
            } else {
                out[cx].e_external += 1;
                out[cy].e_external += 1;
            }
        }
        out
    }

    /// Cluster ids in order of their smallest member. Sums are accumulated in
    /// this order so results do not depend on cluster labels.
    fn canonical_order(solution: &ClusteringSolution) -> Vec<usize> {
        let mut first = vec![usize::MAX; solution.k()];
        for (m, &c) in solution.assignment().iter().enumerate() {
            first[c] = first[c].min(m);
        }
        let mut ids: Vec<usize> = (0..solution.k()).collect();
        ids.sort_by_key(|&c| first[c]);
        ids
    }

    pub fn evaluate(&self, solution: &ClusteringSolution) -> ObjectiveVector<F> {
        debug_assert_eq!(solution.len(), self.n);
        let metrics = self.metrics(solution);
        let clusters = solution.clusters();
        let order = Self::canonical_order(solution);
        let k = F::of_usize(solution.k());
        let mut coupling = F::zero();
        let mut cohesion = F::zero();
        let mut semsim = F::zero();
        for c in order {
            coupling = coupling + metrics[c].coupling::<F>();
            cohesion = cohesion + metrics[c].cohesion::<F>();
            semsim = semsim + semsim_members(&clusters[c], self.sim, self.norm);
        }
        ObjectiveVector {
            coupling,
            cohesion: cohesion / k,
            semsim: semsim / k,
        }
    }
}

pub fn cluster_metrics(solution: &ClusteringSolution, graph: &CallGraph) -> Vec<ClusterMetrics> {
    solution
        .clusters()
        .iter()
        .map(|m| ClusterMetrics::of_members(m, graph.edges(), graph.len()))
        .collect()
}

/// `E_external / (E_internal + E_external)`, 0 for a cluster without edges.
pub fn coupling_of<F: Scalar>(cluster: &[usize], graph: &CallGraph) -> F {
    ClusterMetrics::of_members(cluster, graph.edges(), graph.len()).coupling()
}

pub fn coupling_total<F: Scalar>(solution: &ClusteringSolution, graph: &CallGraph) -> F {
    ordered_clusters(solution)
        .iter()
        .map(|m| coupling_of::<F>(m, graph))
        .fold(F::zero(), |a, b| a + b)
}

/// `min(1, E_internal / V)`.
pub fn cohesion_of<F: Scalar>(cluster: &[usize], graph: &CallGraph) -> F {
    ClusterMetrics::of_members(cluster, graph.edges(), graph.len()).cohesion()
}

pub fn cohesion_mean<F: Scalar>(solution: &ClusteringSolution, graph: &CallGraph) -> F {
    let sum = ordered_clusters(solution)
        .iter()
        .map(|m| cohesion_of::<F>(m, graph))
        .fold(F::zero(), |a, b| a + b);
    sum / F::of_usize(solution.k())
}

/// Sum of `Sim(i, j)` over ordered pairs of distinct members, divided per
/// `norm`. Singletons score 0.
pub fn semsim_of<F: Scalar>(
    cluster: &[usize],
    sim: &SimilarityMatrix<F>,
    norm: SemSimNormalization,
) -> F {
    semsim_members(cluster, sim, norm)
}

pub fn semsim_mean<F: Scalar>(
    solution: &ClusteringSolution,
    sim: &SimilarityMatrix<F>,
    norm: SemSimNormalization,
) -> F {
    let sum = ordered_clusters(solution)
        .iter()
        .map(|m| semsim_of(m, sim, norm))
        .fold(F::zero(), |a, b| a + b);
    sum / F::of_usize(solution.k())
}

fn ordered_clusters(solution: &ClusteringSolution) -> Vec<Vec<usize>> {
    let mut clusters = solution.clusters();
    clusters.sort_by_key(|m| m.first().copied().unwrap_or(usize::MAX));
    clusters
}
