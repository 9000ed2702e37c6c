use std::collections::{BTreeMap, HashSet};

use super::graph::CallGraph;
use super::method::MethodRef;
use super::parse::RawRecord;
use super::CallGraphError;

const JDK_PREFIXES: [&str; 4] = ["java.", "javax.", "jdk.", "sun."];

pub fn is_jdk_class(class_fqn: &str) -> bool {
    JDK_PREFIXES.iter().any(|p| class_fqn.starts_with(p))
}

/// True when `class_fqn` lies in one of the application packages and is not
/// a JDK class. Prefixes match whole package segments, so `a.b` matches
/// `a.b.C` but not `a.bc.C`.
pub fn is_app_class(class_fqn: &str, app_prefixes: &[String]) -> bool {
    if is_jdk_class(class_fqn) {
        return false;
    }
    app_prefixes.iter().any(|p| {
        let p = p.trim_end_matches('.');
        !p.is_empty()
            && class_fqn.starts_with(p)
            && matches!(
                class_fqn.as_bytes().get(p.len()),
                None | Some(b'.') | Some(b'$')
            )
    })
}

/// Record-level refinement: keeps method edges between application methods,
/// drops class edges, JDK calls and self-calls, and collapses duplicate
/// caller/callee pairs to their first occurrence.
pub fn refine_records(
    records: &[RawRecord],
    app_prefixes: &[String],
) -> Result<Vec<RawRecord>, CallGraphError> {
    if app_prefixes
        .iter()
        .all(|p| p.trim_end_matches('.').is_empty())
    {
        return Err(CallGraphError::NoAppPrefixes);
    }
    let mut seen = HashSet::new();
    Ok(records
        .iter()
        .filter(|r| match r {
            RawRecord::ClassEdge { .. } => false,
            RawRecord::MethodEdge(e) => {
                is_app_class(&e.caller.class_fqn, app_prefixes)
                    && is_app_class(&e.callee.class_fqn, app_prefixes)
                    && e.caller != e.callee
                    && seen.insert((e.caller.key(), e.callee.key()))
            }
        })
        .cloned()
        .collect())
}

/// Builds the refined call graph. `declared` methods (typically from the
/// signature listing) inside the application packages become nodes even
/// when no surviving edge touches them.
pub fn refine_graph(
    records: &[RawRecord],
    app_prefixes: &[String],
    declared: &[MethodRef],
) -> Result<CallGraph, CallGraphError> {
    let refined = refine_records(records, app_prefixes)?;
    let mut nodes: BTreeMap<String, MethodRef> = BTreeMap::new();
    let mut add = |m: &MethodRef| {
        nodes
            .entry(m.key())
            .and_modify(|existing| {
                if existing.return_type.is_none() {
                    existing.return_type = m.return_type.clone();
                }
            })
            .or_insert_with(|| m.clone());
    };
    let mut pairs = Vec::with_capacity(refined.len());
    for r in &refined {
        if let RawRecord::MethodEdge(e) = r {
            add(&e.caller);
            add(&e.callee);
            pairs.push((e.caller.key(), e.callee.key()));
        }
    }
    for m in declared {
        if is_app_class(&m.class_fqn, app_prefixes) {
            add(m);
        }
    }
    if nodes.is_empty() {
        return Err(CallGraphError::EmptyGraph);
    }
    let index: BTreeMap<&str, usize> = nodes
        .keys()
        .enumerate()
        .map(|(i, k)| (k.as_str(), i))
        .collect();
    let edges = pairs
        .iter()
        .map(|(a, b)| (index[a.as_str()], index[b.as_str()]))
        .collect();
    CallGraph::new(nodes.into_values().collect(), edges)
}
