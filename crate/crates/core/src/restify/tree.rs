use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::classify::{Classification, ClassificationSource};
use super::grouping::group_class_segments;
use super::javap::MethodSignature;
use super::openapi::is_url_primitive;
use super::pos::PosTagger;
use super::segment::method_segment;
use super::{HttpVerb, RestifyError};
use crate::semantics::EmbeddingProvider;
use crate::Scalar;

/// A method to expose together with its verb.
#[derive(Clone, Debug, PartialEq)]
pub struct ExposedOperation {
    pub signature: MethodSignature,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiOperation {
    pub verb: HttpVerb,
    pub method_key: String,
    pub signature: String,
    pub return_type: String,
    pub param_types: Vec<String>,
    /// Names of trailing `{name}` path templates; other parameters travel
    /// in the request body.
    pub path_params: Vec<String>,
    pub confidence: f64,
    pub source: ClassificationSource,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fallback: bool,
}

impl ApiOperation {
    fn from_exposed(op: &ExposedOperation) -> Self {
        let sig = &op.signature;
        let verb = op.classification.verb;
        let templated = matches!(verb, HttpVerb::Get | HttpVerb::Delete)
            && !sig.param_types.is_empty()
            && sig.param_types.iter().all(|t| is_url_primitive(t));
        let path_params = if templated {
            (1..=sig.param_types.len())
                .map(|i| format!("param{i}"))
                .collect()
        } else {
            Vec::new()
        };
        Self {
            verb,
            method_key: sig.key(),
            signature: sig.text(),
            return_type: sig.return_type.clone(),
            param_types: sig.param_types.clone(),
            path_params,
            confidence: op.classification.confidence,
            source: op.classification.source,
            fallback: op.classification.fallback,
        }
    }

    fn path_suffix(&self) -> String {
        self.path_params
            .iter()
            .map(|p| format!("/{{{p}}}"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiNode {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operations: Vec<ApiOperation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ApiNode>,
}

impl ApiNode {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            operations: Vec::new(),
            children: Vec::new(),
        }
    }

    fn sort(&mut self) {
        self.operations
            .sort_by(|a, b| (a.verb, &a.method_key).cmp(&(b.verb, &b.method_key)));
        self.children.sort_by(|a, b| a.name.cmp(&b.name));
        for c in &mut self.children {
            c.sort();
        }
    }
}

/// URI tree of one cluster; the root is named after the cluster.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiTree {
    pub root: ApiNode,
}

impl ApiTree {
    /// Every operation with its full path `/<root>/<segments...>[/{param}...]`,
    /// in tree order.
    pub fn operations(&self) -> Vec<(String, &ApiOperation)> {
        fn walk<'a>(node: &'a ApiNode, prefix: &str, out: &mut Vec<(String, &'a ApiOperation)>) {
            let path = format!("{prefix}/{}", node.name);
            for op in &node.operations {
                out.push((format!("{path}{}", op.path_suffix()), op));
            }
            for c in &node.children {
                walk(c, &path, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, "", &mut out);
        out
    }

    /// All node names except the root.
    pub fn segments(&self) -> Vec<&str> {
        fn walk<'a>(node: &'a ApiNode, out: &mut Vec<&'a str>) {
            for c in &node.children {
                out.push(&c.name);
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// Operations attached to nodes that have children.
    pub fn interior_operations(&self) -> usize {
        fn walk(node: &ApiNode) -> usize {
            let own = if node.children.is_empty() {
                0
            } else {
                node.operations.len()
            };
            own + node.children.iter().map(walk).sum::<usize>()
        }
        walk(&self.root)
    }
}

/// Raw tree: root / ClassSimpleName / methodName, with verbs on the leaves.
pub fn init_api_tree(cluster_name: &str, exposed: &[ExposedOperation]) -> ApiTree {
    let mut classes: BTreeMap<String, BTreeMap<String, Vec<ApiOperation>>> = BTreeMap::new();
    for op in exposed {
        let m = &op.signature.method;
        classes
            .entry(m.simple_class_name().to_string())
            .or_default()
            .entry(m.method_name.clone())
            .or_default()
            .push(ApiOperation::from_exposed(op));
    }
    let mut root = ApiNode::new(cluster_name);
    for (class, leaves) in classes {
        let mut node = ApiNode::new(class);
        for (leaf, ops) in leaves {
            let mut l = ApiNode::new(leaf);
            l.operations = ops;
            node.children.push(l);
        }
        root.children.push(node);
    }
    root.sort();
    ApiTree { root }
}

/// Full URI tree: method leaves renamed to verb-free kebab segments, class
/// nodes merged by semantic grouping, and `(path, verb)` collisions
/// resolved by suffixing `-2`, `-3`... to the later method's segment.
pub fn build_api_tree<F: Scalar>(
    cluster_name: &str,
    exposed: &[ExposedOperation],
    tagger: &PosTagger,
    class_embedder: &dyn EmbeddingProvider<F>,
    group_threshold: f64,
) -> Result<ApiTree, RestifyError> {
    let raw = init_api_tree(cluster_name, exposed);
    let class_names: Vec<String> = raw.root.children.iter().map(|c| c.name.clone()).collect();
    let groups = group_class_segments(&class_names, class_embedder, group_threshold)?;
    let mut segment_of: BTreeMap<&str, &str> = BTreeMap::new();
    for g in &groups {
        for m in &g.members {
            segment_of.insert(m.as_str(), g.segment.as_str());
        }
    }

    // group segment -> leaf segment -> operations
    let mut merged: BTreeMap<String, BTreeMap<String, Vec<ApiOperation>>> = BTreeMap::new();
    for class in &raw.root.children {
        let group = segment_of[class.name.as_str()].to_string();
        for leaf in &class.children {
            let seg = method_segment(&leaf.name, tagger);
            merged
                .entry(group.clone())
                .or_default()
                .entry(seg)
                .or_default()
                .extend(leaf.operations.iter().cloned());
        }
    }

    let mut root = ApiNode::new(cluster_name);
    for (group, leaves) in merged {
        let mut ops: Vec<(String, ApiOperation)> = leaves
            .into_iter()
            .flat_map(|(seg, ops)| ops.into_iter().map(move |op| (seg.clone(), op)))
            .collect();
        ops.sort_by(|a, b| a.1.method_key.cmp(&b.1.method_key));
        let mut used: HashSet<(String, String, HttpVerb)> = HashSet::new();
        let mut placed: BTreeMap<String, Vec<ApiOperation>> = BTreeMap::new();
        for (seg, op) in ops {
            let suffix = op.path_suffix();
            let mut name = seg.clone();
            let mut n = 1;
            while !used.insert((name.clone(), suffix.clone(), op.verb)) {
                n += 1;
                name = format!("{seg}-{n}");
            }
            placed.entry(name).or_default().push(op);
        }
        let mut node = ApiNode::new(group);
        for (leaf, ops) in placed {
            let mut l = ApiNode::new(leaf);
            l.operations = ops;
            node.children.push(l);
        }
        root.children.push(node);
    }
    root.sort();
    Ok(ApiTree { root })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::callgraph::MethodRef;
    use crate::restify::{is_kebab_segment, Classifier, LexiconClassifier};
    use crate::semantics::TrigramEmbedder;

    fn exposed(class: &str, name: &str, params: &[&str], ret: &str) -> ExposedOperation {
        let m = MethodRef::new(class, name, params.iter().map(|s| s.to_string()).collect())
            .unwrap()
            .with_return_type(ret);
        let signature = MethodSignature::from_method(&m);
        let classification = LexiconClassifier.classify(&signature);
        ExposedOperation {
            signature,
            classification,
        }
    }

    #[test]
    fn raw_tree_shape() {
        let t = init_api_tree(
            "c1",
            &[exposed("a.Owner", "getCity", &[], "java.lang.String")],
        );
        let ops = t.operations();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].0, "/c1/Owner/getCity");
        assert_eq!(ops[0].1.verb, HttpVerb::Get);
    }

    #[test]
    fn raw_tree_groups_methods_by_class() {
        let t = init_api_tree(
            "c1",
            &[
                exposed("a.Owner", "getCity", &[], "java.lang.String"),
                exposed("a.Owner", "setCity", &["java.lang.String"], "void"),
            ],
        );
        assert_eq!(t.root.children.len(), 1);
        assert_eq!(t.root.children[0].children.len(), 2);
    }

    #[test]
    fn empty_cluster_is_root_only() {
        let t = init_api_tree("c1", &[]);
        assert!(t.root.children.is_empty());
        assert!(t.operations().is_empty());
    }

    #[test]
    fn built_tree_uses_segments() {
        let t = build_api_tree::<f64>(
            "c1",
            &[exposed("a.Owner", "getCity", &[], "java.lang.String")],
            &PosTagger::new(),
            &TrigramEmbedder::default(),
            0.8,
        )
        .unwrap();
        assert_eq!(t.operations()[0].0, "/c1/owner/city");
    }

    #[test]
    fn path_params_for_primitive_get_and_delete_only() {
        let ops = [
            exposed("a.Owner", "findOwner", &["int"], "a.Owner"),
            exposed("a.Owner", "deleteOwner", &["a.Owner"], "void"),
            exposed("a.Owner", "updateOwner", &["int"], "void"),
        ];
        let t = build_api_tree::<f64>(
            "c1",
            &ops,
            &PosTagger::new(),
            &TrigramEmbedder::default(),
            0.8,
        )
        .unwrap();
        let paths: Vec<(String, HttpVerb)> = t
            .operations()
            .iter()
            .map(|(p, o)| (p.clone(), o.verb))
            .collect();
        assert!(paths.contains(&("/c1/owner/owner/{param1}".to_string(), HttpVerb::Get)));
        assert!(paths.contains(&("/c1/owner/owner".to_string(), HttpVerb::Delete)));
        assert!(paths.contains(&("/c1/owner/owner".to_string(), HttpVerb::Put)));
    }

    #[test]
    fn collisions_get_numeric_suffixes() {
        let ops = [
            exposed("a.Owner", "getOwner", &[], "a.Owner"),
            exposed("a.Owner", "findOwner", &[], "a.Owner"),
            exposed("a.Owner", "fetchOwner", &[], "a.Owner"),
        ];
        let t = build_api_tree::<f64>(
            "c1",
            &ops,
            &PosTagger::new(),
            &TrigramEmbedder::default(),
            0.8,
        )
        .unwrap();
        let mut paths: Vec<String> = t.operations().into_iter().map(|(p, _)| p).collect();
        paths.sort();
        assert_eq!(
            paths,
            vec!["/c1/owner/owner", "/c1/owner/owner-2", "/c1/owner/owner-3"]
        );
        // stable order: method keys sorted, fetchOwner < findOwner < getOwner
        let first = t
            .operations()
            .into_iter()
            .find(|(p, _)| p == "/c1/owner/owner")
            .unwrap()
            .1
            .method_key
            .clone();
        assert_eq!(first, "a.Owner:fetchOwner()");
        assert!(t.segments().iter().all(|s| is_kebab_segment(s)));
        assert_eq!(t.interior_operations(), 0);
    }

    #[test]
    fn overloads_are_disambiguated() {
        let ops = [
            exposed("a.Owner", "save", &["a.Owner"], "void"),
            exposed("a.Owner", "save", &["a.Pet"], "void"),
        ];
        let t = build_api_tree::<f64>(
            "c1",
            &ops,
            &PosTagger::new(),
            &TrigramEmbedder::default(),
            0.8,
        )
        .unwrap();
        let ops = t.operations();
        assert_eq!(ops.len(), 2);
        assert_ne!(ops[0].0, ops[1].0);
    }
}
