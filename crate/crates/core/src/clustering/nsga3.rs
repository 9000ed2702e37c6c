//! Non-dominated sorting, Das-Dennis reference points and NSGA-III
//! environmental selection. All objectives are minimized.

use crate::Scalar;

/// `a` is no worse than `b` everywhere and strictly better somewhere.
pub fn dominates<F: Scalar>(a: &[F], b: &[F]) -> bool {
    let mut strictly = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Fast non-dominated sort. Fronts hold indices in ascending order.
pub fn nondominated_sort<F: Scalar, V: AsRef<[F]>>(points: &[V]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (points[i].as_ref(), points[j].as_ref());
            if dominates(a, b) {
                dominated_by[i].push(j);
                counts[j] += 1;
            } else if dominates(b, a) {
                dominated_by[j].push(i);
                counts[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                counts[j] -= 1;
                if counts[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Das-Dennis lattice on the unit simplex: every point whose `m`
/// coordinates are multiples of `1/divisions` and sum to 1, in
/// lexicographically decreasing order of the first coordinate.
/// There are `C(m + divisions - 1, divisions)` of them.
pub fn reference_points<F: Scalar>(m: usize, divisions: usize) -> Vec<Vec<F>> {
    if m == 0 {
        return Vec::new();
    }
    if divisions == 0 {
        return vec![vec![F::one() / F::of_usize(m); m]];
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; m];
    fn rec(dim: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if dim == current.len() - 1 {
            current[dim] = left;
            out.push(current.clone());
            return;
        }
        for v in (0..=left).rev() {
            current[dim] = v;
            rec(dim + 1, left - v, current, out);
        }
    }
    rec(0, divisions, &mut current, &mut out);
    let p = F::of_usize(divisions);
    out.into_iter()
        .map(|pt| pt.into_iter().map(|c| F::of_usize(c) / p).collect())
        .collect()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve<F: Scalar>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let m = b.len();
    let eps = F::of(1e-12);
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| {
            a[x][col]
                .abs()
                .partial_cmp(&a[y][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].abs() <= eps {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..m {
            if row != col {
                let f = a[row][col] / a[col][col];
                let pivot_row = a[col].clone();
                for (x, &v) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                    *x = *x - f * v;
                }
                b[row] = b[row] - f * b[col];
            }
        }
    }
    let x: Vec<F> = (0..m).map(|i| b[i] / a[i][i]).collect();
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Translated-and-scaled objectives of `members`: subtract the ideal point,
/// divide by the hyperplane intercepts through the extreme points. Falls
/// back to per-objective maxima when the intercepts are degenerate, and to
/// unit denominators for constant columns.
fn normalize<F: Scalar>(points: &[&[F]]) -> Vec<Vec<F>> {
    let m = points.first().map_or(0, |p| p.len());
    let ideal: Vec<F> = (0..m)
        .map(|j| points.iter().map(|p| p[j]).fold(F::infinity(), F::min))
        .collect();
    let translated: Vec<Vec<F>> = points
        .iter()
        .map(|p| p.iter().zip(&ideal).map(|(&v, &z)| v - z).collect())
        .collect();
    let small = F::of(1e-6);
    let extremes: Vec<Vec<F>> = (0..m)
        .map(|axis| {
            let asf = |t: &Vec<F>| {
                t.iter()
                    .enumerate()
                    .map(|(j, &v)| v / if j == axis { F::one() } else { small })
                    .fold(F::neg_infinity(), F::max)
            };
            translated
                .iter()
                .min_by(|a, b| {
                    asf(a)
                        .partial_cmp(&asf(b))
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .cloned()
                .unwrap_or_default()
        })
        .collect();
    let maxima: Vec<F> = (0..m)
        .map(|j| translated.iter().map(|t| t[j]).fold(F::zero(), F::max))
        .collect();
    let tiny = F::of(1e-10);
    let intercepts: Vec<F> = solve(extremes, vec![F::one(); m])
        .map(|w| w.into_iter().map(|x| F::one() / x).collect::<Vec<F>>())
        .filter(|ic| {
            ic.iter()
                .zip(&maxima)
                .all(|(&a, &mx)| a.is_finite() && a > tiny && a >= mx - tiny)
        })
        .unwrap_or(maxima);
    translated
        .into_iter()
        .map(|t| {
            t.into_iter()
                .zip(&intercepts)
                .map(|(v, &a)| if a > tiny { v / a } else { v })
                .collect()
        })
        .collect()
}

/// Index of the closest reference line and the perpendicular distance.
fn associate<F: Scalar>(point: &[F], refs: &[Vec<F>]) -> (usize, F) {
    let mut best = (0, F::infinity());
    for (r, w) in refs.iter().enumerate() {
        let ww: F = w.iter().map(|&x| x * x).sum();
        let wp: F = w.iter().zip(point).map(|(&a, &b)| a * b).sum();
        let scale = if ww > F::zero() { wp / ww } else { F::zero() };
        let d2: F = point
            .iter()
            .zip(w)
            .map(|(&p, &x)| {
                let e = p - scale * x;
                e * e
            })
            .sum();
        let d = d2.sqrt();
        if d < best.1 {
            best = (r, d);
        }
    }
    best
}

/// NSGA-III environmental selection of `capacity` survivors from `points`
/// (minimized objective vectors). Whole fronts are taken while they fit;
/// the splitting front is filled by niching on `refs`.
///
/// Niching picks the reference line with the lowest niche count (ties: the
/// line holding the closest candidate, then the lower line index) and takes
/// its closest candidate (ties: lower index). Candidates repeating an
/// objective vector already selected or queued are only considered once
/// every distinct vector of the front has been placed. Deterministic.
pub fn select_next_generation<F: Scalar, V: AsRef<[F]>>(
    points: &[V],
    capacity: usize,
    refs: &[Vec<F>],
) -> Vec<usize> {
    if capacity >= points.len() {
        return (0..points.len()).collect();
    }
    let fronts = nondominated_sort(points);
    let mut selected: Vec<usize> = Vec::with_capacity(capacity);
    let mut last: Vec<usize> = Vec::new();
    for front in fronts {
        if selected.len() + front.len() <= capacity {
            selected.extend(front);
            if selected.len() == capacity {
                return selected;
            }
        } else {
            last = front;
            break;
        }
    }
    let pool: Vec<usize> = selected.iter().chain(&last).copied().collect();
    let views: Vec<&[F]> = pool.iter().map(|&i| points[i].as_ref()).collect();
    let normalized = normalize(&views);
    let assoc: Vec<(usize, F)> = normalized.iter().map(|p| associate(p, refs)).collect();
    let mut niche = vec![0usize; refs.len()];
    for a in &assoc[..selected.len()] {
        niche[a.0] += 1;
    }

    let bits = |i: usize| -> Vec<u64> {
        points[i]
            .as_ref()
            .iter()
            .map(|v| v.as_f64().to_bits())
            .collect()
    };
    let mut seen: std::collections::HashSet<Vec<u64>> = selected.iter().map(|&i| bits(i)).collect();
    let mut distinct = Vec::new();
    let mut repeats = Vec::new();
    for (off, &i) in last.iter().enumerate() {
        let slot = selected.len() + off;
        if seen.insert(bits(i)) {
            distinct.push(slot);
        } else {
            repeats.push(slot);
        }
    }

    for mut candidates in [distinct, repeats] {
        while selected.len() < capacity && !candidates.is_empty() {
            // lexicographic minimum of (niche count, distance, line, slot)
            let mut best: Option<(usize, F, usize, usize)> = None;
            for &slot in &candidates {
                let (r, d) = assoc[slot];
                let key = (niche[r], d, r, slot);
                let better = best.is_none_or(|b| {
                    (key.0, key.1, key.2, key.3)
                        .partial_cmp(&(b.0, b.1, b.2, b.3))
                        .is_some_and(|o| o.is_lt())
                });
                if better {
                    best = Some(key);
                }
            }
            let (_, _, r, slot) = best.expect("candidates non-empty");
            niche[r] += 1;
            selected.push(pool[slot]);
            candidates.retain(|&s| s != slot);
        }
    }
    selected
}
