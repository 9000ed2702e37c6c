use super::nsga3::nondominated_sort;
use super::objectives::{ObjectiveContext, ObjectiveVector};
use super::solution::ClusteringSolution;
use super::ClusteringError;
use crate::Scalar;

/// Largest instance the exhaustive enumeration accepts.
pub const ORACLE_MAX_METHODS: usize = 12;

/// Stirling number of the second kind: partitions of `n` items into `k`
/// non-empty blocks.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Visits every partition of `n` methods into exactly `k` blocks once, as a
/// restricted growth string (block ids in order of first appearance).
pub fn for_each_partition(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k == 0 || n < k {
        return;
    }
    fn rec(pos: usize, used: usize, k: usize, a: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let n = a.len();
        if n - pos < k - used {
            return;
        }
        if pos == n {
            if used == k {
                visit(a);
            }
            return;
        }
        for c in 0..used.min(k) {
            a[pos] = c;
            rec(pos + 1, used, k, a, visit);
        }
        if used < k {
            a[pos] = used;
            rec(pos + 1, used + 1, k, a, visit);
        }
    }
    let mut a = vec![0usize; n];
    rec(0, 0, k, &mut a, &mut visit);
}

/// Exact Pareto front by exhaustive enumeration of all partitions into `k`
/// blocks. Every partition whose objective vector is non-dominated is
/// returned, so tied vectors appear once per partition.
pub fn brute_force_pareto<F: Scalar>(
    ctx: &ObjectiveContext<'_, F>,
    k: usize,
) -> Result<Vec<(ClusteringSolution, ObjectiveVector<F>)>, ClusteringError> {
    let n = ctx.len();
    if n > ORACLE_MAX_METHODS {
        return Err(ClusteringError::OracleTooLarge {
            n,
            max: ORACLE_MAX_METHODS,
        });
    }
    if k == 0 || n < k {
        return Err(ClusteringError::InfeasibleK { n, k });
    }
    let mut all = Vec::new();
    for_each_partition(n, k, |a| {
        let s = ClusteringSolution::new_unchecked(a.to_vec(), k);
        let o = ctx.evaluate(&s);
        all.push((s, o));
    });
    let mins: Vec<[F; 3]> = all.iter().map(|(_, o)| o.minimized()).collect();
    let front = nondominated_sort(&mins)
        .into_iter()
        .next()
        .unwrap_or_default();
    Ok(front.into_iter().map(|i| all[i].clone()).collect())
}
