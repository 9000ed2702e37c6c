use super::embed::EmbeddingVector;
use super::SemanticsError;
use crate::Scalar;

/// Cosine similarity clamped to `[-1, 1]`; 0 when either vector is zero.
pub fn cosine<F: Scalar>(a: &EmbeddingVector<F>, b: &EmbeddingVector<F>) -> F {
    let (na, nb) = (a.norm(), b.norm());
    if na.is_zero() || nb.is_zero() {
        return F::zero();
    }
    let dot: F = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| x * y)
        .sum();
    (dot / (na * nb)).max(-F::one()).min(F::one())
}

/// Symmetric `n x n` cosine similarity table.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityMatrix<F> {
    n: usize,
    cells: Vec<F>,
}

impl<F: Scalar> SimilarityMatrix<F> {
    /// Computes every unordered pair once and mirrors it. The diagonal is 1,
    /// zero vectors included.
    pub fn build(vectors: &[EmbeddingVector<F>]) -> Result<Self, SemanticsError> {
        let n = vectors.len();
        let first = vectors.first().ok_or(SemanticsError::NoVectors)?;
        if let Some(bad) = vectors.iter().find(|v| v.dim() != first.dim()) {
            return Err(SemanticsError::DimensionMismatch {
                expected: first.dim(),
                got: bad.dim(),
            });
        }
        let mut cells = vec![F::zero(); n * n];
        for i in 0..n {
            cells[i * n + i] = F::one();
            for j in i + 1..n {
                let s = cosine(&vectors[i], &vectors[j]);
                cells[i * n + j] = s;
                cells[j * n + i] = s;
            }
        }
        Ok(Self { n, cells })
    }

    /// Wraps precomputed cells; the caller guarantees symmetry and range.
    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self, SemanticsError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(SemanticsError::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Self {
            n,
            cells: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cells[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[f64]) -> EmbeddingVector<f64> {
        EmbeddingVector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn identical_and_orthogonal() {
        let m =
            SimilarityMatrix::build(&[v(&[1.0, 2.0]), v(&[1.0, 2.0]), v(&[-2.0, 1.0])]).unwrap();
        assert!((m.get(0, 1) - 1.0).abs() < 1e-12);
        assert_eq!(m.get(0, 2), 0.0);
        assert_eq!(m.get(2, 2), 1.0);
    }

    #[test]
    fn zero_vector_convention() {
        let m = SimilarityMatrix::build(&[v(&[0.0, 0.0]), v(&[1.0, 0.0])]).unwrap();
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(0, 1), 0.0);
    }

    #[test]
    fn errors() {
        assert_eq!(
            SimilarityMatrix::<f64>::build(&[]).err(),
            Some(SemanticsError::NoVectors)
        );
        assert_eq!(
            SimilarityMatrix::build(&[v(&[1.0]), v(&[1.0, 0.0])]).err(),
            Some(SemanticsError::DimensionMismatch {
                expected: 1,
                got: 2
            })
        );
    }

    proptest! {
        #[test]
        fn symmetric_and_in_range(rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 4), 1..8)) {
            let vecs: Vec<_> = rows.iter().map(|r| v(r)).collect();
            let m = SimilarityMatrix::build(&vecs).unwrap();
            for i in 0..m.len() {
                for j in 0..m.len() {
                    prop_assert_eq!(m.get(i, j).to_bits(), m.get(j, i).to_bits());
                    prop_assert!(m.get(i, j) >= -1.0 - 1e-9 && m.get(i, j) <= 1.0 + 1e-9);
                }
            }
        }
    }
}
