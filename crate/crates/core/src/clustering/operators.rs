use rand::seq::index::sample;
use rand::Rng;

use super::solution::ClusteringSolution;
use super::ClusteringError;

/// Random solutions with exactly `k` non-empty clusters: `k` distinct methods
/// seed the clusters, every other method goes to a uniformly random cluster.
pub fn init_population<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    size: usize,
    rng: &mut R,
) -> Result<Vec<ClusteringSolution>, ClusteringError> {
    if k == 0 || n < k {
        return Err(ClusteringError::InfeasibleK { n, k });
    }
    Ok((0..size)
        .map(|_| {
            let mut assignment = vec![usize::MAX; n];
            for (c, m) in sample(rng, n, k).into_iter().enumerate() {
                assignment[m] = c;
            }
            for slot in assignment.iter_mut().filter(|s| **s == usize::MAX) {
                *slot = rng.gen_range(0..k);
            }
            ClusteringSolution::new_unchecked(assignment, k)
        })
        .collect())
}

/// Moves every member of `donor_cluster` (cluster ids from `donor`) to
/// `target` in `child`. No repair is done.
pub fn inject_cluster(child: &mut [usize], donor: &[usize], donor_cluster: usize, target: usize) {
    for (slot, &c) in child.iter_mut().zip(donor) {
        if c == donor_cluster {
            *slot = target;
        }
    }
}

/// Cluster injection: a random cluster of `p1` is copied into a copy of
/// `p2`, landing on the child cluster that already shares the most members
/// with it (ties broken at random). The child is then repaired.
pub fn crossover<R: Rng + ?Sized>(
    p1: &ClusteringSolution,
    p2: &ClusteringSolution,
    rng: &mut R,
) -> ClusteringSolution {
    debug_assert_eq!((p1.len(), p1.k()), (p2.len(), p2.k()));
    let k = p2.k();
    let donor_cluster = rng.gen_range(0..p1.k());
    let mut overlap = vec![0usize; k];
    for (&a, &b) in p1.assignment().iter().zip(p2.assignment()) {
        if a == donor_cluster {
            overlap[b] += 1;
        }
    }
    let best = overlap.iter().copied().max().unwrap_or(0);
    let tied: Vec<usize> = (0..k).filter(|&c| overlap[c] == best).collect();
    let target = tied[rng.gen_range(0..tied.len())];
    let mut child = p2.assignment().to_vec();
    inject_cluster(&mut child, p1.assignment(), donor_cluster, target);
    repair(&mut child, k, rng);
    ClusteringSolution::new_unchecked(child, k)
}

/// Moves one random method to a different random cluster, never emptying
/// its source cluster. Gives up (no-op) after a bounded number of draws.
pub fn mutate<R: Rng + ?Sized>(solution: &ClusteringSolution, rng: &mut R) -> ClusteringSolution {
    let k = solution.k();
    let n = solution.len();
    let mut sizes = vec![0usize; k];
    for &c in solution.assignment() {
        sizes[c] += 1;
    }
    if k < 2 || sizes.iter().all(|&s| s < 2) {
        return solution.clone();
    }
    for _ in 0..4 * n.max(1) {
        let m = rng.gen_range(0..n);
        let src = solution.cluster_of(m);
        if sizes[src] < 2 {
            continue;
        }
        let mut dst = rng.gen_range(0..k - 1);
        if dst >= src {
            dst += 1;
        }
        let mut assignment = solution.assignment().to_vec();
        assignment[m] = dst;
        return ClusteringSolution::new_unchecked(assignment, k);
    }
    solution.clone()
}

/// Fills every empty cluster id by moving a random member out of the
/// largest cluster (lowest id on ties). Requires `n >= k`.
pub fn repair<R: Rng + ?Sized>(assignment: &mut [usize], k: usize, rng: &mut R) {
    let mut sizes = vec![0usize; k];
    for &c in assignment.iter() {
        sizes[c] += 1;
    }
    while let Some(empty) = sizes.iter().position(|&s| s == 0) {
        let (largest, &size) = sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("k >= 1");
        if size < 2 {
            debug_assert!(false, "repair needs n >= k");
            return;
        }
        let pick = rng.gen_range(0..size);
        let m = assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == largest)
            .nth(pick)
            .map(|(m, _)| m)
            .expect("pick < size");
        assignment[m] = empty;
        sizes[largest] -= 1;
        sizes[empty] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn sol(a: &[usize], k: usize) -> ClusteringSolution {
        ClusteringSolution::new(a.to_vec(), k).unwrap()
    }

    #[test]
    fn init_singletons_when_n_equals_k() {
        let pop = init_population(5, 5, 10, &mut rng(1)).unwrap();
        for s in pop {
            assert!(s.clusters().iter().all(|c| c.len() == 1));
        }
    }

    #[test]
    fn init_single_cluster() {
        let pop = init_population(6, 1, 4, &mut rng(1)).unwrap();
        assert!(pop.iter().all(|s| s.assignment() == [0; 6]));
    }

    #[test]
    fn init_is_seeded() {
        let a = init_population(20, 4, 8, &mut rng(9)).unwrap();
        let b = init_population(20, 4, 8, &mut rng(9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
    }

    #[test]
    fn init_infeasible() {
        assert_eq!(
            init_population(2, 3, 4, &mut rng(0)),
            Err(ClusteringError::InfeasibleK { n: 2, k: 3 })
        );
        assert!(init_population(2, 0, 4, &mut rng(0)).is_err());
    }

    #[test]
    fn injection_example() {
        let p1 = [0, 0, 1, 1];
        let mut child = vec![0, 1, 0, 1];
        inject_cluster(&mut child, &p1, 0, 0);
        assert_eq!(child, vec![0, 0, 0, 1]);
    }

    #[test]
    fn crossover_of_identical_parents_is_identity() {
        let p = sol(&[0, 1, 2, 0, 1, 2, 2], 3);
        let mut r = rng(3);
        for _ in 0..50 {
            assert_eq!(crossover(&p, &p, &mut r), p);
        }
    }

    #[test]
    fn mutate_degenerate_cases() {
        let mut r = rng(4);
        let one = sol(&[0, 0, 0], 1);
        assert_eq!(mutate(&one, &mut r), one);
        let pair = sol(&[1, 0], 2);
        assert_eq!(mutate(&pair, &mut r), pair);
    }

    #[test]
    fn mutate_moves_exactly_one_method() {
        let s = sol(&[0, 0, 1, 1, 2, 2], 3);
        let mut r = rng(5);
        for _ in 0..50 {
            let m = mutate(&s, &mut r);
            let diff = m
                .assignment()
                .iter()
                .zip(s.assignment())
                .filter(|(a, b)| a != b)
                .count();
            assert_eq!(diff, 1);
        }
    }

    #[test]
    fn repair_fills_empty_ids() {
        let mut a = vec![0, 0, 0, 0];
        repair(&mut a, 3, &mut rng(6));
        assert!(ClusteringSolution::new(a, 3).is_ok());
    }

    proptest! {
        #[test]
        fn operators_keep_solutions_valid(n in 2usize..14, k_seed in 1usize..6, seed in any::<u64>()) {
            let k = 1 + k_seed % n;
            let mut r = rng(seed);
            let pop = init_population(n, k, 6, &mut r).unwrap();
            for w in pop.windows(2) {
                let child = crossover(&w[0], &w[1], &mut r);
                prop_assert!(ClusteringSolution::new(child.assignment().to_vec(), k).is_ok());
                let mutant = mutate(&child, &mut r);
                prop_assert!(ClusteringSolution::new(mutant.assignment().to_vec(), k).is_ok());
            }
            let mut raw: Vec<usize> = (0..n).map(|_| r.gen_range(0..k)).collect();
            repair(&mut raw, k, &mut r);
            prop_assert!(ClusteringSolution::new(raw, k).is_ok());
        }
    }
}
