use mono2rest_core::clustering::{
    brute_force_pareto, hypervolume, run_optimizer, ObjectiveContext, SemSimNormalization,
};
use mono2rest_core::semantics::{
    method_terms, EmbeddingMode, EmbeddingProvider, SimilarityMatrix, TrigramEmbedder,
};
use mono2rest_core::{CallGraph, ClusteringSolution, MethodRef, OptimizerConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: &[&str] = &[
    "owner", "pet", "visit", "vet", "city", "name", "type", "date", "address", "phone",
];
const VERBS: &[&str] = &[
    "get", "set", "find", "save", "delete", "update", "add", "list",
];

fn random_instance(seed: u64, n: usize, p: f64) -> (CallGraph, SimilarityMatrix<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<MethodRef> = (0..n)
        .map(|i| {
            let v = VERBS[rng.gen_range(0..VERBS.len())];
            let w = WORDS[rng.gen_range(0..WORDS.len())];
            MethodRef::new(
                "app.Svc",
                format!("{v}{}{}{i}", w[..1].to_uppercase(), &w[1..]),
                vec![],
            )
            .unwrap()
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let g = CallGraph::new(nodes, edges).unwrap();
    let emb = TrigramEmbedder::default();
    let vecs: Vec<_> = g
        .nodes()
        .iter()
        .map(|m| {
            emb.embed(&method_terms(m, None, EmbeddingMode::NameOnly).unwrap())
                .unwrap()
        })
        .collect();
    (g, SimilarityMatrix::build(&vecs).unwrap())
}

fn planted(seed: u64) -> (CallGraph, SimilarityMatrix<f64>, ClusteringSolution) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 15;
    let nodes: Vec<MethodRef> = (0..n)
        .map(|i| MethodRef::new("app.P", format!("m{i:02}"), vec![]).unwrap())
        .collect();
    let block = |i: usize| i / 5;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && block(a) == block(b) && rng.gen_bool(0.8) {
                edges.push((a, b));
            }
        }
    }
    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        let a = x * 5 + rng.gen_range(0..5);
        let b = y * 5 + rng.gen_range(0..5);
        edges.push(if rng.gen_bool(0.5) { (a, b) } else { (b, a) });
    }
    let g = CallGraph::new(nodes, edges).unwrap();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if block(i) == block(j) { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let truth = ClusteringSolution::new((0..n).map(block).collect(), 3).unwrap();
    (g, SimilarityMatrix::from_rows(&rows).unwrap(), truth)
}

fn minimized_set(front: &[(ClusteringSolution, mono2rest_core::ObjectiveVector)]) -> Vec<[f64; 3]> {
    let mut v: Vec<[f64; 3]> = front.iter().map(|o| o.1.minimized()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
    v
}

#[test]
fn front_matches_exhaustive_enumeration() {
    for seed in 100..103 {
        let (g, sim) = random_instance(seed, 7, 0.3);
        let ctx = ObjectiveContext::new(&g, &sim, SemSimNormalization::ClusterSize).unwrap();
        let oracle = minimized_set(&brute_force_pareto(&ctx, 3).unwrap());
        let cfg = OptimizerConfig {
            k: 3,
            population_size: 40,
            generations: 60,
            rng_seed: seed,
            ..Default::default()
        };
        let got = minimized_set(&run_optimizer(&g, &sim, &cfg).unwrap().pareto_front);
        for p in &got {
            let beaten = oracle
                .iter()
                .any(|o| (0..3).all(|j| o[j] <= p[j]) && (0..3).any(|j| o[j] < p[j]));
            assert!(!beaten, "seed {seed}: {p:?} is dominated");
        }
        let recovered = oracle.iter().filter(|o| got.contains(o)).count();
        assert!(
            recovered * 10 >= oracle.len() * 8,
            "seed {seed}: {recovered}/{}",
            oracle.len()
        );
    }
}

#[test]
fn planted_blocks_are_recovered_with_monotone_hypervolume() {
    for seed in 0..3 {
        let (g, sim, truth) = planted(seed);
        let cfg = OptimizerConfig {
            k: 3,
            population_size: 40,
            generations: 40,
            rng_seed: seed,
            ..Default::default()
        };
        let run = run_optimizer(&g, &sim, &cfg).unwrap();
        assert!(run.chosen_solution().same_partition(&truth), "seed {seed}");
        let reference = run.stats[0].worst.minimized();
        let hv: Vec<f64> = run
            .stats
            .iter()
            .map(|s| {
                let pts: Vec<[f64; 3]> = s.front.iter().map(|o| o.minimized()).collect();
                hypervolume(&pts, &reference)
            })
            .collect();
        assert!(hv.windows(2).all(|w| w[1] >= w[0]), "seed {seed}: {hv:?}");
    }
}

#[test]
fn pair_normalized_semsim_keeps_planted_optimum() {
    let (g, sim, truth) = planted(7);
    let cfg = OptimizerConfig {
        k: 3,
        population_size: 40,
        generations: 40,
        semsim_normalization: SemSimNormalization::PairCount,
        ..Default::default()
    };
    let run = run_optimizer(&g, &sim, &cfg).unwrap();
    assert!(run.chosen_solution().same_partition(&truth));
    assert_eq!(run.chosen_objectives().semsim, 1.0);
}
