use serde::{Deserialize, Serialize};

use super::segment::kebab_case;
use crate::semantics::{
    cosine, tokenize_identifier, EmbeddingProvider, EmbeddingVector, SemanticsError,
};
use crate::Scalar;

pub const DEFAULT_GROUP_THRESHOLD: f64 = 0.8;

/// Class names sharing one URI segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroup {
    pub members: Vec<String>,
    pub segment: String,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Single-link grouping of simple class names whose embeddings have cosine
/// at least `threshold`.
///
/// A group of one keeps its own name in kebab case. A larger group is named
/// after the token, drawn from all member names, with the highest mean
/// cosine to the members' name embeddings (earliest token on ties). Groups
/// come out ordered by their first member; members are sorted.
pub fn group_class_segments<F: Scalar>(
    class_names: &[String],
    provider: &dyn EmbeddingProvider<F>,
    threshold: f64,
) -> Result<Vec<ClassGroup>, SemanticsError> {
    let mut names: Vec<String> = class_names.to_vec();
    names.sort();
    names.dedup();
    let embeddings: Vec<EmbeddingVector<F>> = names
        .iter()
        .map(|n| provider.embed_text(&tokenize_identifier(n)))
        .collect::<Result<_, _>>()?;
    let threshold = F::of(threshold);
    let mut parent: Vec<usize> = (0..names.len()).collect();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            if cosine(&embeddings[i], &embeddings[j]) >= threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; names.len()];
    for i in 0..names.len() {
        let r = find(&mut parent, i);
        if slot_of_root[r] == usize::MAX {
            slot_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot_of_root[r]].push(i);
    }

    groups
        .into_iter()
        .map(|members| {
            let segment = if members.len() == 1 {
                kebab_case(&names[members[0]])
            } else {
                let mut tokens: Vec<String> = Vec::new();
                for &m in &members {
                    for t in tokenize_identifier(&names[m]) {
                        if !tokens.contains(&t) {
                            tokens.push(t);
                        }
                    }
                }
                let mut best: Option<(F, &String)> = None;
                for t in &tokens {
                    let v = provider.embed_text(std::slice::from_ref(t))?;
                    let mean = members
                        .iter()
                        .map(|&m| cosine(&v, &embeddings[m]))
                        .sum::<F>()
                        / F::of_usize(members.len());
                    if best.is_none_or(|(b, _)| mean > b) {
                        best = Some((mean, t));
                    }
                }
                best.map_or_else(|| kebab_case(&names[members[0]]), |(_, t)| kebab_case(t))
            };
            Ok(ClassGroup {
                members: members.iter().map(|&m| names[m].clone()).collect(),
                segment,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{TermList, TrigramEmbedder};
    use std::collections::HashMap;

    /// Fixed vectors for a handful of texts.
    struct Table(HashMap<&'static str, Vec<f64>>);

    impl EmbeddingProvider<f64> for Table {
        fn id(&self) -> String {
            "table".into()
        }
        fn dim(&self) -> usize {
            3
        }
        fn embed(&self, terms: &TermList) -> Result<EmbeddingVector<f64>, SemanticsError> {
            self.embed_text(&terms.terms)
        }
        fn embed_text(&self, terms: &[String]) -> Result<EmbeddingVector<f64>, SemanticsError> {
            let key = terms.join(" ");
            self.0
                .get(key.as_str())
                .map(|v| EmbeddingVector::new(v.clone()).unwrap())
                .ok_or(SemanticsError::UnknownText(key))
        }
    }

    fn table() -> Table {
        Table(
            [
                ("pet", vec![1.0, 0.0, 0.0]),
                ("pet request", vec![0.9, 0.3, 0.0]),
                ("pet type", vec![0.9, 0.0, 0.3]),
                ("request", vec![0.2, 1.0, 0.0]),
                ("type", vec![0.2, 0.0, 1.0]),
                ("owner", vec![0.0, 0.0, 1.0]),
            ]
            .into_iter()
            .collect(),
        )
    }

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn pet_classes_share_a_segment() {
        let groups =
            group_class_segments(&names(&["PetRequest", "Pet", "PetType"]), &table(), 0.8).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].segment, "pet");
        assert_eq!(groups[0].members, names(&["Pet", "PetRequest", "PetType"]));
    }

    #[test]
    fn single_class() {
        let groups = group_class_segments(&names(&["Owner"]), &table(), 0.8).unwrap();
        assert_eq!(
            groups,
            vec![ClassGroup {
                members: names(&["Owner"]),
                segment: "owner".into()
            }]
        );
    }

    #[test]
    fn dissimilar_classes_stay_apart_under_fallback() {
        let fallback = TrigramEmbedder::default();
        let owner: EmbeddingVector<f64> = fallback.embed_str("owner").unwrap();
        let visit: EmbeddingVector<f64> = fallback.embed_str("visit").unwrap();
        assert!(cosine(&owner, &visit) < 0.8);
        let groups =
            group_class_segments::<f64>(&names(&["Owner", "Visit"]), &fallback, 0.8).unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[1].segment, "visit");
    }

    #[test]
    fn missing_embeddings_propagate() {
        assert!(group_class_segments(&names(&["Vet"]), &table(), 0.8).is_err());
    }
}
