use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::nsga3::{nondominated_sort, reference_points, select_next_generation};
use super::objectives::{ObjectiveContext, ObjectiveVector, SemSimNormalization};
use super::operators::{crossover, init_population, mutate};
use super::solution::ClusteringSolution;
use super::ClusteringError;
use crate::callgraph::CallGraph;
use crate::semantics::SimilarityMatrix;
use crate::Scalar;

/// Number of objectives the optimizer handles.
const OBJECTIVES: usize = 3;
/// Attempts to draw an offspring that is not already in the population.
const DEDUP_ATTEMPTS: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub k: usize,
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub reference_point_divisions: usize,
    pub rng_seed: u64,
    pub semsim_normalization: SemSimNormalization,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            k: 7,
            population_size: 92,
            generations: 100,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            reference_point_divisions: 12,
            rng_seed: 42,
            semsim_normalization: SemSimNormalization::ClusterSize,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), ClusteringError> {
        let bad = |m: &str| Err(ClusteringError::InvalidConfig(m.to_string()));
        if self.k == 0 {
            return bad("k must be at least 1");
        }
        if self.population_size < 4 {
            return bad("population_size must be at least 4");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) || !(0.0..=1.0).contains(&self.mutation_rate)
        {
            return bad("rates must lie in [0, 1]");
        }
        if self.reference_point_divisions == 0 {
            return bad("reference_point_divisions must be at least 1");
        }
        Ok(())
    }
}

/// Population summary for one generation. Values are in the natural sense:
/// best coupling is the minimum, best cohesion and semsim the maximum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats<F> {
    pub generation: usize,
    pub best: ObjectiveVector<F>,
    pub worst: ObjectiveVector<F>,
    pub mean: ObjectiveVector<F>,
    /// Distinct objective vectors of the first front.
    pub front: Vec<ObjectiveVector<F>>,
}

#[derive(Clone, Debug)]
pub struct OptimizerRun<F> {
    /// Distinct partitions of the final first front with their objectives.
    pub pareto_front: Vec<(ClusteringSolution, ObjectiveVector<F>)>,
    /// Index into `pareto_front` of the reported solution.
    pub chosen: usize,
    /// Generation 0 (initial population) through the last generation.
    pub stats: Vec<GenerationStats<F>>,
    pub reference_points: usize,
}

impl<F: Scalar> OptimizerRun<F> {
    pub fn chosen_solution(&self) -> &ClusteringSolution {
        &self.pareto_front[self.chosen].0
    }

    pub fn chosen_objectives(&self) -> &ObjectiveVector<F> {
        &self.pareto_front[self.chosen].1
    }
}

/// Index of the front member closest, in Chebyshev distance, to the ideal
/// point after min-max normalizing each objective over the front. Ties go
/// to the lower index. `None` for an empty front.
pub fn pick_final_solution<F: Scalar>(front: &[ObjectiveVector<F>]) -> Option<usize> {
    let mins: Vec<[F; 3]> = front.iter().map(ObjectiveVector::minimized).collect();
    let lo: Vec<F> = (0..OBJECTIVES)
        .map(|j| mins.iter().map(|p| p[j]).fold(F::infinity(), F::min))
        .collect();
    let hi: Vec<F> = (0..OBJECTIVES)
        .map(|j| mins.iter().map(|p| p[j]).fold(F::neg_infinity(), F::max))
        .collect();
    let score = |p: &[F; 3]| {
        (0..OBJECTIVES)
            .map(|j| {
                let span = hi[j] - lo[j];
                if span > F::zero() {
                    (p[j] - lo[j]) / span
                } else {
                    F::zero()
                }
            })
            .fold(F::zero(), F::max)
    };
    let mut best: Option<(usize, F)> = None;
    for (i, p) in mins.iter().enumerate() {
        let s = score(p);
        if best.is_none_or(|(_, b)| s < b) {
            best = Some((i, s));
        }
    }
    best.map(|(i, _)| i)
}

fn summarize<F: Scalar>(generation: usize, objs: &[ObjectiveVector<F>]) -> GenerationStats<F> {
    let count = F::of_usize(objs.len().max(1));
    let fold = |f: fn(&ObjectiveVector<F>) -> F, pick: fn(F, F) -> F, init: F| {
        objs.iter().map(f).fold(init, pick)
    };
    let best = ObjectiveVector {
        coupling: fold(|o| o.coupling, F::min, F::infinity()),
        cohesion: fold(|o| o.cohesion, F::max, F::neg_infinity()),
        semsim: fold(|o| o.semsim, F::max, F::neg_infinity()),
    };
    let worst = ObjectiveVector {
        coupling: fold(|o| o.coupling, F::max, F::neg_infinity()),
        cohesion: fold(|o| o.cohesion, F::min, F::infinity()),
        semsim: fold(|o| o.semsim, F::min, F::infinity()),
    };
    let mean = ObjectiveVector {
        coupling: objs.iter().map(|o| o.coupling).sum::<F>() / count,
        cohesion: objs.iter().map(|o| o.cohesion).sum::<F>() / count,
        semsim: objs.iter().map(|o| o.semsim).sum::<F>() / count,
    };
    let mins: Vec<[F; 3]> = objs.iter().map(ObjectiveVector::minimized).collect();
    let mut front = Vec::new();
    let mut seen = HashSet::new();
    for i in nondominated_sort(&mins)
        .into_iter()
        .next()
        .unwrap_or_default()
    {
        let bits: Vec<u64> = mins[i].iter().map(|v| v.as_f64().to_bits()).collect();
        if seen.insert(bits) {
            front.push(objs[i]);
        }
    }
    GenerationStats {
        generation,
        best,
        worst,
        mean,
        front,
    }
}

/// Runs NSGA-III for `config.generations` generations. Results are a pure
/// function of the inputs and `config.rng_seed`.
pub fn run_optimizer<F: Scalar>(
    graph: &CallGraph,
    sim: &SimilarityMatrix<F>,
    config: &OptimizerConfig,
) -> Result<OptimizerRun<F>, ClusteringError> {
    config.validate()?;
    let ctx = ObjectiveContext::new(graph, sim, config.semsim_normalization)?;
    run(&ctx, config)
}

fn run<F: Scalar>(
    ctx: &ObjectiveContext<'_, F>,
    config: &OptimizerConfig,
) -> Result<OptimizerRun<F>, ClusteringError> {
    let n = ctx.len();
    let k = config.k;
    if n < k {
        return Err(ClusteringError::InfeasibleK { n, k });
    }
    let refs: Vec<Vec<F>> = reference_points(OBJECTIVES, config.reference_point_divisions);
    if k == 1 {
        let only = ClusteringSolution::new_unchecked(vec![0; n], 1);
        let obj = ctx.evaluate(&only);
        return Ok(OptimizerRun {
            pareto_front: vec![(only, obj)],
            chosen: 0,
            stats: vec![summarize(0, &[obj])],
            reference_points: refs.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let size = config.population_size;
    let mut population = init_population(n, k, size, &mut rng)?;
    let mut objectives: Vec<ObjectiveVector<F>> =
        population.iter().map(|s| ctx.evaluate(s)).collect();
    let mut stats = vec![summarize(0, &objectives)];

    for generation in 1..=config.generations {
        let mut known: HashSet<ClusteringSolution> = population
            .iter()
            .map(ClusteringSolution::canonical)
            .collect();
        let mut offspring = Vec::with_capacity(size);
        for _ in 0..size {
            let mut child = None;
            for _ in 0..DEDUP_ATTEMPTS {
                let a = rng.gen_range(0..size);
                let mut b = rng.gen_range(0..size - 1);
                if b >= a {
                    b += 1;
                }
                let mut c = if rng.gen_bool(config.crossover_rate) {
                    crossover(&population[a], &population[b], &mut rng)
                } else {
                    population[b].clone()
                };
                if rng.gen_bool(config.mutation_rate) {
                    c = mutate(&c, &mut rng);
                }
                let fresh = known.insert(c.canonical());
                child = Some(c);
                if fresh {
                    break;
                }
            }
            offspring.push(child.expect("at least one attempt"));
        }
        let offspring_objs: Vec<ObjectiveVector<F>> =
            offspring.iter().map(|s| ctx.evaluate(s)).collect();

        population.extend(offspring);
        objectives.extend(offspring_objs);
        let mins: Vec<[F; 3]> = objectives.iter().map(ObjectiveVector::minimized).collect();
        let keep = select_next_generation(&mins, size, &refs);
        population = keep.iter().map(|&i| population[i].clone()).collect();
        objectives = keep.iter().map(|&i| objectives[i]).collect();
        stats.push(summarize(generation, &objectives));
    }

    let mins: Vec<[F; 3]> = objectives.iter().map(ObjectiveVector::minimized).collect();
    let mut seen = HashSet::new();
    let pareto_front: Vec<(ClusteringSolution, ObjectiveVector<F>)> = nondominated_sort(&mins)
        .into_iter()
        .next()
        .unwrap_or_default()
        .into_iter()
        .filter(|&i| seen.insert(population[i].canonical()))
        .map(|i| (population[i].clone(), objectives[i]))
        .collect();
    let front_objs: Vec<ObjectiveVector<F>> = pareto_front.iter().map(|(_, o)| *o).collect();
    let chosen = pick_final_solution(&front_objs).expect("non-empty population");
    Ok(OptimizerRun {
        pareto_front,
        chosen,
        stats,
        reference_points: refs.len(),
    })
}
