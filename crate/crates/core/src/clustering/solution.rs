use serde::{Deserialize, Serialize};

use super::ClusteringError;

/// Assignment of each of `n` methods to one of `k` non-empty clusters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClusteringSolution {
    assignment: Vec<usize>,
    k: usize,
}

impl ClusteringSolution {
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self, ClusteringError> {
        if k == 0 {
            return Err(ClusteringError::InvalidSolution(
                "k must be at least 1".into(),
            ));
        }
        let mut seen = vec![false; k];
        for &c in &assignment {
            if c >= k {
                return Err(ClusteringError::InvalidSolution(format!(
                    "cluster id {c} out of range for k = {k}"
                )));
            }
            seen[c] = true;
        }
        if let Some(empty) = seen.iter().position(|s| !s) {
            return Err(ClusteringError::InvalidSolution(format!(
                "cluster {empty} is empty"
            )));
        }
        Ok(Self { assignment, k })
    }

    pub(crate) fn new_unchecked(assignment: Vec<usize>, k: usize) -> Self {
        debug_assert!(
            Self::new(assignment.clone(), k).is_ok(),
            "invalid {assignment:?} for k={k}"
        );
        Self { assignment, k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, method: usize) -> usize {
        self.assignment[method]
    }

    /// Members of each cluster, ascending, indexed by cluster id.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (m, &c) in self.assignment.iter().enumerate() {
            out[c].push(m);
        }
        out
    }

    /// Relabels clusters in order of first appearance, so two assignments
    /// describing the same partition become identical.
    pub fn canonical(&self) -> Self {
        let mut map = vec![usize::MAX; self.k];
        let mut next = 0;
        let assignment = self
            .assignment
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Self {
            assignment,
            k: self.k,
        }
    }

    pub fn same_partition(&self, other: &Self) -> bool {
        self.k == other.k && self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ClusteringSolution::new(vec![0, 1, 1], 2).is_ok());
        assert!(ClusteringSolution::new(vec![0, 0], 2).is_err());
        assert!(ClusteringSolution::new(vec![0, 2], 2).is_err());
        assert!(ClusteringSolution::new(vec![], 0).is_err());
    }

    #[test]
    fn canonical_relabeling() {
        let a = ClusteringSolution::new(vec![2, 0, 2, 1], 3).unwrap();
        assert_eq!(a.canonical().assignment(), &[0, 1, 0, 2]);
        let b = ClusteringSolution::new(vec![1, 2, 1, 0], 3).unwrap();
        assert!(a.same_partition(&b));
        assert_eq!(a.clusters(), vec![vec![1], vec![3], vec![0, 2]]);
    }
}
