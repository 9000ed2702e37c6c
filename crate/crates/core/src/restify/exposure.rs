use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::javap::{MethodSignature, Visibility};
use super::RestifyError;
use crate::callgraph::CallGraph;
use crate::clustering::ClusteringSolution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExposureReason {
    /// Called from a method in another cluster.
    ExternalCaller,
    /// Public method with no caller in the application at all.
    Root,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExposedMethod {
    pub node: usize,
    pub reason: ExposureReason,
}

/// Per cluster, the methods other clusters call. With `roots`, public
/// methods (per the listing) that nothing in the application calls are
/// added too. Constructors are never exposed.
pub fn select_exposed_methods(
    graph: &CallGraph,
    clustering: &ClusteringSolution,
    roots: Option<&BTreeMap<String, MethodSignature>>,
) -> Result<Vec<Vec<ExposedMethod>>, RestifyError> {
    if clustering.len() != graph.len() {
        return Err(RestifyError::ClusteringMismatch {
            expected: graph.len(),
            got: clustering.len(),
        });
    }
    let mut external = vec![false; graph.len()];
    let mut called = vec![false; graph.len()];
    for &(caller, callee) in graph.edges() {
        called[callee] = true;
        if clustering.cluster_of(caller) != clustering.cluster_of(callee) {
            external[callee] = true;
        }
    }
    let mut out = vec![Vec::new(); clustering.k()];
    for (node, m) in graph.nodes().iter().enumerate() {
        if m.is_constructor() {
            continue;
        }
        let reason = if external[node] {
            Some(ExposureReason::ExternalCaller)
        } else if !called[node]
            && roots
                .and_then(|sigs| sigs.get(&m.key()))
                .is_some_and(|s| s.visibility == Visibility::Public)
        {
            Some(ExposureReason::Root)
        } else {
            None
        };
        if let Some(reason) = reason {
            out[clustering.cluster_of(node)].push(ExposedMethod { node, reason });
        }
    }
    Ok(out)
}
