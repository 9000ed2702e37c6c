use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::terms::TermList;
use super::SemanticsError;
use crate::Scalar;

/// Dimension of the built-in trigram embedder.
pub const FALLBACK_DIM: usize = 256;
/// Hash seed of the built-in trigram embedder.
pub const FALLBACK_SEED: u64 = 0x6d6f_6e6f_3272_6573;

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingVector<F> {
    values: Vec<F>,
}

impl<F: Scalar> EmbeddingVector<F> {
    pub fn new(values: Vec<F>) -> Result<Self, SemanticsError> {
        if values.is_empty() {
            return Err(SemanticsError::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SemanticsError::NonFinite);
        }
        Ok(Self { values })
    }

    pub fn from_f64(values: &[f64]) -> Result<Self, SemanticsError> {
        Self::new(values.iter().map(|&v| F::of(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn norm(&self) -> F {
        self.values.iter().map(|&v| v * v).sum::<F>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Unit-length copy; zero vectors are returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        if norm.is_zero() {
            return self.clone();
        }
        Self {
            values: self.values.iter().map(|&v| v / norm).collect(),
        }
    }
}

/// Source of method embeddings.
pub trait EmbeddingProvider<F: Scalar> {
    /// Identifier recorded in output artifacts.
    fn id(&self) -> String;

    fn dim(&self) -> usize;

    fn embed(&self, terms: &TermList) -> Result<EmbeddingVector<F>, SemanticsError>;

    /// Embeds free text given as terms, e.g. the tokens of a class name.
    fn embed_text(&self, terms: &[String]) -> Result<EmbeddingVector<F>, SemanticsError>;
}

/// Hashed character-trigram term-frequency vectors, L2-normalized.
///
/// The term text is the terms joined by single spaces and padded with one
/// space on each side; every window of three characters is hashed with
/// seeded FNV-1a into one of `dim` buckets.
#[derive(Clone, Debug)]
pub struct TrigramEmbedder {
    dim: usize,
    seed: u64,
}

impl Default for TrigramEmbedder {
    fn default() -> Self {
        Self {
            dim: FALLBACK_DIM,
            seed: FALLBACK_SEED,
        }
    }
}

impl TrigramEmbedder {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim > 0, "embedding dimension must be positive");
        Self { dim, seed }
    }

    fn bucket(&self, trigram: &[char]) -> usize {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ self.seed;
        let mut buf = [0u8; 4];
        for c in trigram {
            for b in c.encode_utf8(&mut buf).bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        (h % self.dim as u64) as usize
    }

    pub fn embed_str<F: Scalar>(&self, text: &str) -> Result<EmbeddingVector<F>, SemanticsError> {
        let words: Vec<&str> = text.split_whitespace().collect();
        if words.is_empty() {
            return Err(SemanticsError::ZeroVector);
        }
        let padded: Vec<char> = format!(" {} ", words.join(" ")).chars().collect();
        let mut counts = vec![0u32; self.dim];
        for w in padded.windows(3) {
            counts[self.bucket(w)] += 1;
        }
        let values = counts.into_iter().map(|c| F::of(f64::from(c))).collect();
        Ok(EmbeddingVector::new(values)?.normalized())
    }
}

impl<F: Scalar> EmbeddingProvider<F> for TrigramEmbedder {
    fn id(&self) -> String {
        format!("trigram-fnv1a-{}-{:x}", self.dim, self.seed)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, terms: &TermList) -> Result<EmbeddingVector<F>, SemanticsError> {
        self.embed_str(&terms.text())
    }

    fn embed_text(&self, terms: &[String]) -> Result<EmbeddingVector<F>, SemanticsError> {
        self.embed_str(&terms.join(" "))
    }
}

/// On-disk embeddings: `{"model": .., "dim": .., "vectors": {key: [..]}}`.
///
/// Keys are method identity keys. Free-text entries (class names, reference
/// term lists) use the key `text:<terms joined by spaces>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingsFile {
    pub model: String,
    pub dim: usize,
    #[serde(default)]
    pub vectors: BTreeMap<String, Vec<f64>>,
}

impl EmbeddingsFile {
    pub fn text_key(terms: &[String]) -> String {
        format!("text:{}", terms.join(" "))
    }
}

/// Looks up precomputed vectors by method key.
#[derive(Clone, Debug)]
pub struct FileEmbeddings<F> {
    model: String,
    dim: usize,
    vectors: BTreeMap<String, EmbeddingVector<F>>,
}

impl<F: Scalar> FileEmbeddings<F> {
    pub fn from_file(file: EmbeddingsFile) -> Result<Self, SemanticsError> {
        let mut vectors = BTreeMap::new();
        for (key, v) in file.vectors {
            if v.len() != file.dim {
                return Err(SemanticsError::DimensionMismatch {
                    expected: file.dim,
                    got: v.len(),
                });
            }
            vectors.insert(key, EmbeddingVector::from_f64(&v)?);
        }
        Ok(Self {
            model: file.model,
            dim: file.dim,
            vectors,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: EmbeddingsFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        Self::from_file(file).map_err(|e| e.to_string())
    }

    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn contains(&self, key: &str) -> bool {
        self.vectors.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&EmbeddingVector<F>> {
        self.vectors.get(key)
    }
}

impl<F: Scalar> EmbeddingProvider<F> for FileEmbeddings<F> {
    fn id(&self) -> String {
        format!("file:{}", self.model)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, terms: &TermList) -> Result<EmbeddingVector<F>, SemanticsError> {
        let key = terms.method.key();
        self.vectors
            .get(&key)
            .cloned()
            .ok_or(SemanticsError::UnknownMethod(key))
    }

    fn embed_text(&self, terms: &[String]) -> Result<EmbeddingVector<F>, SemanticsError> {
        let key = EmbeddingsFile::text_key(terms);
        self.vectors
            .get(&key)
            .cloned()
            .ok_or(SemanticsError::UnknownText(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::callgraph::MethodRef;
    use crate::semantics::{cosine, method_terms, EmbeddingMode};
    use proptest::prelude::*;

    fn terms(name: &str) -> TermList {
        let m = MethodRef::new("a.X", name, vec![]).unwrap();
        method_terms(&m, None, EmbeddingMode::NameOnly).unwrap()
    }

    #[test]
    fn fallback_is_deterministic_and_unit_norm() {
        let e = TrigramEmbedder::default();
        let a: EmbeddingVector<f64> = e.embed(&terms("findPetById")).unwrap();
        let b: EmbeddingVector<f64> = e.embed(&terms("findPetById")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), FALLBACK_DIM);
        assert!((a.norm() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn fallback_rejects_empty_text() {
        let e = TrigramEmbedder::default();
        let r: Result<EmbeddingVector<f64>, _> = e.embed_text(&[]);
        assert_eq!(r, Err(SemanticsError::ZeroVector));
        let r: Result<EmbeddingVector<f64>, _> = e.embed_str("   ");
        assert_eq!(r, Err(SemanticsError::ZeroVector));
    }

    #[test]
    fn fallback_works_in_f32() {
        let e = TrigramEmbedder::default();
        let v: EmbeddingVector<f32> = e.embed_str("get city").unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn file_provider_lookup() {
        let json =
            r#"{"model":"m","dim":2,"vectors":{"a.X:get()":[1.0,0.0],"text:pet":[0.0,1.0]}}"#;
        let p: FileEmbeddings<f64> = FileEmbeddings::from_json(json).unwrap();
        assert_eq!(p.embed(&terms("get")).unwrap().values(), &[1.0, 0.0]);
        assert!(matches!(
            p.embed(&terms("put")),
            Err(SemanticsError::UnknownMethod(_))
        ));
        assert_eq!(
            p.embed_text(&["pet".to_string()]).unwrap().values(),
            &[0.0, 1.0]
        );
        assert_eq!(EmbeddingProvider::<f64>::id(&p), "file:m");
    }

    #[test]
    fn file_provider_rejects_bad_dims_and_nan() {
        let json = r#"{"model":"m","dim":3,"vectors":{"k":[1.0,0.0]}}"#;
        assert!(FileEmbeddings::<f64>::from_json(json).is_err());
        let file = EmbeddingsFile {
            model: "m".into(),
            dim: 1,
            vectors: [("k".to_string(), vec![f64::NAN])].into_iter().collect(),
        };
        assert_eq!(
            FileEmbeddings::<f64>::from_file(file).err(),
            Some(SemanticsError::NonFinite)
        );
    }

    proptest! {
        #[test]
        fn fallback_self_cosine_is_one(name in "[a-z][a-zA-Z0-9]{0,20}") {
            let e = TrigramEmbedder::default();
            let v: EmbeddingVector<f64> = e.embed(&terms(&name)).unwrap();
            prop_assert!((cosine(&v, &v) - 1.0).abs() <= 1e-9);
            prop_assert!((v.norm() - 1.0).abs() <= 1e-9);
        }
    }
}
