use crate::Scalar;

/// Volume dominated by `points` (minimized) and bounded by `reference`.
/// Points not strictly better than the reference in every objective add
/// nothing. Exact, by recursive slicing on the last objective.
pub fn hypervolume<F: Scalar, V: AsRef<[F]>>(points: &[V], reference: &[F]) -> F {
    let inside: Vec<Vec<F>> = points
        .iter()
        .map(|p| p.as_ref().to_vec())
        .filter(|p| p.iter().zip(reference).all(|(&x, &r)| x < r))
        .collect();
    slice(inside, reference)
}

fn slice<F: Scalar>(mut points: Vec<Vec<F>>, reference: &[F]) -> F {
    let m = reference.len();
    if points.is_empty() || m == 0 {
        return F::zero();
    }
    if m == 1 {
        let best = points.iter().map(|p| p[0]).fold(F::infinity(), F::min);
        return reference[0] - best;
    }
    let last = m - 1;
    points.sort_by(|a, b| {
        a[last]
            .partial_cmp(&b[last])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut volume = F::zero();
    for i in 0..points.len() {
        let upper = points.get(i + 1).map_or(reference[last], |p| p[last]);
        let height = upper - points[i][last];
        if height > F::zero() {
            let projected: Vec<Vec<F>> = points[..=i].iter().map(|p| p[..last].to_vec()).collect();
            volume = volume + height * slice(projected, &reference[..last]);
        }
    }
    volume
}
