//! Comparison of identified clusters with a reference decomposition.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::callgraph::MethodRef;
use crate::restify::MethodSignature;
use crate::semantics::{
    cosine, method_terms, tokenize_identifier, EmbeddingMode, EmbeddingProvider, EmbeddingVector,
    SemanticsError,
};
use crate::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum EvaluationError {
    #[error("cannot aggregate an empty cluster")]
    EmptyCluster,
    #[error("embedding dimensions differ: {expected} vs {got}")]
    ProviderMismatch { expected: usize, got: usize },
    #[error("nothing to match: {0}")]
    NothingToMatch(&'static str),
    #[error("reference service {0:?} has no methods")]
    EmptyService(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// One service of the reference decomposition. Entries are method keys;
/// entries that do not parse as keys are treated as raw term lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceService {
    pub name: String,
    pub methods: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceFile {
    pub services: Vec<ReferenceService>,
}

impl ReferenceFile {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        file.validate().map_err(|e| e.to_string())?;
        Ok(file)
    }

    pub fn validate(&self) -> Result<(), EvaluationError> {
        if self.services.is_empty() {
            return Err(EvaluationError::NothingToMatch("no reference services"));
        }
        match self.services.iter().find(|s| s.methods.is_empty()) {
            Some(s) => Err(EvaluationError::EmptyService(s.name.clone())),
            None => Ok(()),
        }
    }
}

/// Mean of the vectors, L2-normalized.
pub fn aggregate_embedding<F: Scalar>(
    members: &[EmbeddingVector<F>],
) -> Result<EmbeddingVector<F>, EvaluationError> {
    let first = members.first().ok_or(EvaluationError::EmptyCluster)?;
    let dim = first.dim();
    let mut sum = vec![F::zero(); dim];
    for v in members {
        if v.dim() != dim {
            return Err(EvaluationError::ProviderMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
        for (s, &x) in sum.iter_mut().zip(v.values()) {
            *s = *s + x;
        }
    }
    let n = F::of_usize(members.len());
    let mean = EmbeddingVector::new(sum.into_iter().map(|s| s / n).collect())?;
    Ok(mean.normalized())
}

/// Embeds every entry of a reference service and aggregates them. Keys
/// carry no listing, so full-context terms come from the key's own types.
pub fn embed_reference_service<F: Scalar>(
    service: &ReferenceService,
    provider: &dyn EmbeddingProvider<F>,
    mode: EmbeddingMode,
) -> Result<EmbeddingVector<F>, EvaluationError> {
    if service.methods.is_empty() {
        return Err(EvaluationError::EmptyService(service.name.clone()));
    }
    let vectors = service
        .methods
        .iter()
        .map(|entry| match MethodRef::parse_key(entry) {
            Ok(m) => {
                let stand_in = MethodSignature::from_method(&m);
                provider.embed(&method_terms(&m, Some(&stand_in), mode)?)
            }
            Err(_) => {
                let terms: Vec<String> = entry
                    .split_whitespace()
                    .flat_map(tokenize_identifier)
                    .collect();
                provider.embed_text(&terms)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    aggregate_embedding(&vectors)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchStrategy {
    /// Repeatedly fix the globally highest remaining score.
    #[default]
    Greedy,
    /// Assignment with the maximum total score.
    Optimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchPair<F> {
    pub cluster: usize,
    pub reference: String,
    pub score: F,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchResult<F> {
    pub strategy: MatchStrategy,
    /// Sorted by cluster id.
    pub pairs: Vec<MatchPair<F>>,
    pub unmatched_clusters: Vec<usize>,
    pub unmatched_references: Vec<String>,
    /// Cluster ids in row order of `scores`, ascending.
    pub cluster_ids: Vec<usize>,
    /// Reference names in column order of `scores`, ascending.
    pub reference_names: Vec<String>,
    pub scores: Vec<Vec<F>>,
}

/// Matches clusters to reference services one-to-one by cosine similarity
/// of their aggregated embeddings. Greedy ties go to the smaller
/// (cluster id, reference name).
pub fn match_clusters<F: Scalar>(
    clusters: &[(usize, EmbeddingVector<F>)],
    references: &[(String, EmbeddingVector<F>)],
    strategy: MatchStrategy,
) -> Result<MatchResult<F>, EvaluationError> {
    if clusters.is_empty() {
        return Err(EvaluationError::NothingToMatch("no clusters"));
    }
    if references.is_empty() {
        return Err(EvaluationError::NothingToMatch("no reference services"));
    }
    let dim = clusters[0].1.dim();
    for v in clusters
        .iter()
        .map(|c| &c.1)
        .chain(references.iter().map(|r| &r.1))
    {
        if v.dim() != dim {
            return Err(EvaluationError::ProviderMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
    }
    let mut rows: Vec<&(usize, EmbeddingVector<F>)> = clusters.iter().collect();
    rows.sort_by_key(|c| c.0);
    let mut cols: Vec<&(String, EmbeddingVector<F>)> = references.iter().collect();
    cols.sort_by(|a, b| a.0.cmp(&b.0));
    let scores: Vec<Vec<F>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| cosine(&r.1, &c.1)).collect())
        .collect();

    let assignment = match strategy {
        MatchStrategy::Greedy => greedy(&scores),
        MatchStrategy::Optimal => optimal(&scores),
    };
    let mut pairs = Vec::new();
    let mut row_used = vec![false; rows.len()];
    let mut col_used = vec![false; cols.len()];
    for (i, j) in assignment {
        row_used[i] = true;
        col_used[j] = true;
        pairs.push(MatchPair {
            cluster: rows[i].0,
            reference: cols[j].0.clone(),
            score: scores[i][j],
        });
    }
    pairs.sort_by_key(|p| p.cluster);
    Ok(MatchResult {
        strategy,
        pairs,
        unmatched_clusters: rows
            .iter()
            .zip(&row_used)
            .filter(|(_, &u)| !u)
            .map(|(r, _)| r.0)
            .collect(),
        unmatched_references: cols
            .iter()
            .zip(&col_used)
            .filter(|(_, &u)| !u)
            .map(|(c, _)| c.0.clone())
            .collect(),
        cluster_ids: rows.iter().map(|r| r.0).collect(),
        reference_names: cols.iter().map(|c| c.0.clone()).collect(),
        scores,
    })
}

fn greedy<F: Scalar>(scores: &[Vec<F>]) -> Vec<(usize, usize)> {
    let (n, m) = (scores.len(), scores[0].len());
    let mut row_free = vec![true; n];
    let mut col_free = vec![true; m];
    let mut out = Vec::new();
    for _ in 0..n.min(m) {
        let mut best: Option<(usize, usize)> = None;
        for i in (0..n).filter(|&i| row_free[i]) {
            for j in (0..m).filter(|&j| col_free[j]) {
                if best.is_none_or(|(bi, bj)| scores[i][j] > scores[bi][bj]) {
                    best = Some((i, j));
                }
            }
        }
        let (i, j) = best.expect("free cells remain");
        row_free[i] = false;
        col_free[j] = false;
        out.push((i, j));
    }
    out
}

/// Hungarian algorithm on the padded square cost matrix `-score`.
fn optimal<F: Scalar>(scores: &[Vec<F>]) -> Vec<(usize, usize)> {
    let (n, m) = (scores.len(), scores[0].len());
    let size = n.max(m);
    let cost = |i: usize, j: usize| -> f64 {
        if i < n && j < m {
            -scores[i][j].as_f64()
        } else {
            0.0
        }
    };
    // potentials and matching are 1-based; index 0 is the virtual start
    let mut u = vec![0.0; size + 1];
    let mut v = vec![0.0; size + 1];
    let mut p = vec![0usize; size + 1];
    let mut way = vec![0usize; size + 1];
    for i in 1..=size {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; size + 1];
        let mut used = vec![false; size + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=size {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=size {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out: Vec<(usize, usize)> = (1..=size)
        .filter(|&j| p[j] != 0 && p[j] - 1 < n && j - 1 < m)
        .map(|j| (p[j] - 1, j - 1))
        .collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub common: usize,
    pub only_monolith: usize,
    pub only_reference: usize,
    pub common_methods: Vec<String>,
}

/// Package-free identity `SimpleClass.method`; raw entries pass through.
pub fn cross_codebase_identity(entry: &str) -> String {
    match MethodRef::parse_key(entry) {
        Ok(m) => format!("{}.{}", m.simple_class_name(), m.method_name),
        Err(_) => entry.trim().to_string(),
    }
}

pub fn method_overlap_report(monolith: &[String], reference: &[String]) -> OverlapReport {
    let a: BTreeSet<String> = monolith
        .iter()
        .map(|k| cross_codebase_identity(k))
        .collect();
    let b: BTreeSet<String> = reference
        .iter()
        .map(|k| cross_codebase_identity(k))
        .collect();
    let common: Vec<String> = a.intersection(&b).cloned().collect();
    OverlapReport {
        common: common.len(),
        only_monolith: a.len() - common.len(),
        only_reference: b.len() - common.len(),
        common_methods: common,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn v(x: &[f64]) -> EmbeddingVector<f64> {
        EmbeddingVector::from_f64(x).unwrap()
    }

    #[test]
    fn aggregate_examples() {
        let a = aggregate_embedding(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        assert_abs_diff_eq!(
            a.values()[0],
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            a.values()[1],
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        let b = aggregate_embedding(&[v(&[3.0, 4.0]), v(&[3.0, 4.0])]).unwrap();
        assert_abs_diff_eq!(b.values()[0], 0.6, epsilon = 1e-12);
        assert_eq!(
            aggregate_embedding::<f64>(&[]).unwrap_err(),
            EvaluationError::EmptyCluster
        );
    }

    #[test]
    fn two_clusters_one_reference() {
        let r = match_clusters(
            &[(0, v(&[1.0, 0.0])), (1, v(&[0.0, 1.0]))],
            &[("svc".into(), v(&[0.1, 1.0]))],
            MatchStrategy::Greedy,
        )
        .unwrap();
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(r.pairs[0].cluster, 1);
        assert_eq!(r.unmatched_clusters, vec![0]);
        assert!(r.unmatched_references.is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        let e = match_clusters(
            &[(0, v(&[1.0, 0.0]))],
            &[("s".into(), v(&[1.0, 0.0, 0.0]))],
            MatchStrategy::Greedy,
        )
        .unwrap_err();
        assert_eq!(
            e,
            EvaluationError::ProviderMismatch {
                expected: 2,
                got: 3
            }
        );
    }

    #[test]
    fn greedy_versus_optimal() {
        // greedy takes 0.9 first and is left with 0.1; optimal takes 0.8 + 0.8
        let rows = [(0, v(&[1.0, 0.0])), (1, v(&[0.6, 0.8]))];
        let cols = [
            ("a".into(), v(&[0.9, 0.435_889_894_354_067_4])),
            ("b".into(), v(&[0.8, -0.6])),
        ];
        let g = match_clusters(&rows, &cols, MatchStrategy::Greedy).unwrap();
        let o = match_clusters(&rows, &cols, MatchStrategy::Optimal).unwrap();
        let total = |r: &MatchResult<f64>| r.pairs.iter().map(|p| p.score).sum::<f64>();
        assert!(total(&o) >= total(&g));
        assert_eq!(g.pairs[0].reference, "a");
        assert_eq!(o.pairs[0].reference, "b");
    }

    #[test]
    fn ties_prefer_smaller_ids() {
        let x = v(&[1.0, 0.0]);
        let r = match_clusters(
            &[(5, x.clone()), (2, x.clone())],
            &[("b".into(), x.clone()), ("a".into(), x.clone())],
            MatchStrategy::Greedy,
        )
        .unwrap();
        assert_eq!(r.pairs[0].cluster, 2);
        assert_eq!(r.pairs[0].reference, "a");
        assert_eq!(r.pairs[1].reference, "b");
    }

    #[test]
    fn overlap_examples() {
        let mono = vec![
            "a.x.Owner:getCity()".to_string(),
            "a.x.Pet:getName()".to_string(),
        ];
        let refs = vec![
            "b.Owner:getCity(int)".to_string(),
            "b.Vet:list()".to_string(),
        ];
        let r = method_overlap_report(&mono, &refs);
        assert_eq!((r.common, r.only_monolith, r.only_reference), (1, 1, 1));
        let same = method_overlap_report(&mono, &mono);
        assert_eq!((same.only_monolith, same.only_reference), (0, 0));
        let none = method_overlap_report(&mono, &["c.Z:q()".to_string()]);
        assert_eq!(none.common, 0);
    }

    #[test]
    fn reference_file_validation() {
        assert!(ReferenceFile::from_json(r#"{"services": []}"#).is_err());
        assert!(
            ReferenceFile::from_json(r#"{"services": [{"name": "s", "methods": []}]}"#).is_err()
        );
        assert!(ReferenceFile::from_json(
            r#"{"services": [{"name": "s", "methods": ["a.B:c()"]}]}"#
        )
        .is_ok());
    }

    fn score_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
        proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, 3), 2..11)
    }

    type Sides = (
        Vec<(usize, EmbeddingVector<f64>)>,
        Vec<(String, EmbeddingVector<f64>)>,
    );

    fn split(raw: &[Vec<f64>], n: usize) -> Sides {
        let rows = raw[..n]
            .iter()
            .enumerate()
            .map(|(i, x)| (i, v(x)))
            .collect();
        let cols = raw[n..]
            .iter()
            .enumerate()
            .map(|(j, x)| (format!("s{j}"), v(x)))
            .collect();
        (rows, cols)
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn greedy_certificate(raw in score_strategy(), cut in 1usize..5) {
            let n = cut.min(raw.len() - 1);
            let (rows, cols) = split(&raw, n);
            let r = match_clusters(&rows, &cols, MatchStrategy::Greedy).unwrap();
            prop_assert_eq!(r.pairs.len(), n.min(raw.len() - n));
            // replay the selection order: by descending score
            let mut order = r.pairs.clone();
            order.sort_by(|a, b| b.score.partial_cmp(&a.score).unwrap());
            let mut rows_left: BTreeSet<usize> = r.cluster_ids.iter().copied().collect();
            let mut cols_left: BTreeSet<String> = r.reference_names.iter().cloned().collect();
            for p in &order {
                let i = r.cluster_ids.iter().position(|&c| c == p.cluster).unwrap();
                let j = r.reference_names.iter().position(|c| *c == p.reference).unwrap();
                for (jj, name) in r.reference_names.iter().enumerate() {
                    if cols_left.contains(name) {
                        prop_assert!(p.score >= r.scores[i][jj]);
                    }
                }
                for (ii, id) in r.cluster_ids.iter().enumerate() {
                    if rows_left.contains(id) {
                        prop_assert!(p.score >= r.scores[ii][j]);
                    }
                }
                rows_left.remove(&p.cluster);
                cols_left.remove(&p.reference);
            }
        }

        #[test]
        fn optimal_matches_brute_force(raw in proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, 3), 2..9), cut in 1usize..5) {
            let n = cut.min(raw.len() - 1);
            let (rows, cols) = split(&raw, n);
            let r = match_clusters(&rows, &cols, MatchStrategy::Optimal).unwrap();
            let total: f64 = r.pairs.iter().map(|p| p.score).sum();
            let (small, large) = (n.min(cols.len()), n.max(cols.len()));
            let mut best = f64::NEG_INFINITY;
            for perm in permutations(large) {
                let s: f64 = (0..small)
                    .map(|a| if n <= cols.len() { r.scores[a][perm[a]] } else { r.scores[perm[a]][a] })
                    .sum();
                best = best.max(s);
            }
            prop_assert!((total - best).abs() < 1e-9);
        }

        #[test]
        fn relabeling_clusters_relabels_result(raw in proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, 3), 2..9), cut in 1usize..5, shift in 1usize..50) {
            let n = cut.min(raw.len() - 1);
            let (rows, cols) = split(&raw, n);
            let relabeled: Vec<_> = rows.iter().rev().map(|(i, x)| (i + shift, x.clone())).collect();
            let a = match_clusters(&rows, &cols, MatchStrategy::Greedy).unwrap();
            let b = match_clusters(&relabeled, &cols, MatchStrategy::Greedy).unwrap();
            let mapped: Vec<_> = a.pairs.iter().map(|p| (p.cluster + shift, p.reference.clone())).collect();
            let got: Vec<_> = b.pairs.iter().map(|p| (p.cluster, p.reference.clone())).collect();
            prop_assert_eq!(mapped, got);
        }

        #[test]
        fn self_match_is_identity(raw in proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, 4), 1..8)) {
            let rows: Vec<_> = raw.iter().enumerate().map(|(i, x)| (i, v(x))).collect();
            let cols: Vec<_> = raw.iter().enumerate().map(|(i, x)| (format!("s{i:02}"), v(x))).collect();
            for strategy in [MatchStrategy::Greedy, MatchStrategy::Optimal] {
                let r = match_clusters(&rows, &cols, strategy).unwrap();
                prop_assert_eq!(r.pairs.len(), raw.len());
                for p in &r.pairs {
                    prop_assert_eq!(&p.reference, &format!("s{:02}", p.cluster));
                    prop_assert!((p.score - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}
