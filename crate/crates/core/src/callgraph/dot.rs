use std::fmt::Write;

use super::graph::CallGraph;
use super::CallGraphError;
use crate::clustering::ClusteringSolution;

const PALETTE: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
    "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
];

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the graph as a DOT digraph. With a clustering, nodes are grouped
/// into one `subgraph cluster_<id>` per cluster, filled with a per-cluster
/// color.
pub fn export_dot(
    graph: &CallGraph,
    clustering: Option<&ClusteringSolution>,
) -> Result<String, CallGraphError> {
    if let Some(c) = clustering {
        if c.len() != graph.len() {
            return Err(CallGraphError::ClusteringMismatch {
                expected: graph.len(),
                got: c.len(),
            });
        }
    }
    let mut out =
        String::from("digraph callgraph {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n");
    let node_line = |out: &mut String, indent: &str, i: usize| {
        let m = &graph.nodes()[i];
        let label = format!(
            "{}.{}({})",
            m.simple_class_name(),
            m.method_name,
            m.param_types.len()
        );
        let _ = writeln!(
            out,
            "{indent}n{i} [label=\"{}\", tooltip=\"{}\"];",
            escape(&label),
            escape(&m.key())
        );
    };
    match clustering {
        None => {
            for i in 0..graph.len() {
                node_line(&mut out, "  ", i);
            }
        }
        Some(c) => {
            for (id, members) in c.clusters().iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{id} {{");
                let _ = writeln!(out, "    label=\"c{id}\";");
                let _ = writeln!(
                    out,
                    "    style=filled; color=\"{}\"; node [style=filled, fillcolor=white];",
                    PALETTE[id % PALETTE.len()]
                );
                for &i in members {
                    node_line(&mut out, "    ", i);
                }
                out.push_str("  }\n");
            }
        }
    }
    for &(a, b) in graph.edges() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    Ok(out)
}
