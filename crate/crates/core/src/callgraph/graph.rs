use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::method::MethodRef;
use super::CallGraphError;

/// Directed, unweighted method call graph. Nodes are sorted by identity key;
/// edges are deduplicated `(caller, callee)` index pairs without self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct CallGraph {
    nodes: Vec<MethodRef>,
    edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    nodes: Vec<MethodRef>,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for CallGraph {
    type Error = CallGraphError;
    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        CallGraph::new(raw.nodes, raw.edges)
    }
}

impl From<CallGraph> for RawGraph {
    fn from(g: CallGraph) -> Self {
        RawGraph {
            nodes: g.nodes,
            edges: g.edges,
        }
    }
}

impl CallGraph {
    /// Builds a graph, re-sorting nodes by key and remapping edges. Duplicate
    /// edges are collapsed; self-loops and dangling endpoints are errors.
    pub fn new(nodes: Vec<MethodRef>, edges: Vec<(usize, usize)>) -> Result<Self, CallGraphError> {
        let n = nodes.len();
        let mut order: Vec<usize> = (0..n).collect();
        let keys: Vec<String> = nodes.iter().map(MethodRef::key).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut new_id = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let mut index = HashMap::with_capacity(n);
        for (new, &old) in order.iter().enumerate() {
            if index.insert(keys[old].clone(), new).is_some() {
                return Err(CallGraphError::DuplicateNode(keys[old].clone()));
            }
        }
        let mut set = BTreeSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(CallGraphError::EdgeOutOfRange(a, b));
            }
            if a == b {
                return Err(CallGraphError::SelfLoop(a));
            }
            set.insert((new_id[a], new_id[b]));
        }
        let mut slots: Vec<Option<MethodRef>> = nodes.into_iter().map(Some).collect();
        let nodes = order
            .iter()
            .map(|&old| slots[old].take().expect("each node moved once"))
            .collect();
        Ok(Self {
            nodes,
            edges: set.into_iter().collect(),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[MethodRef] {
        &self.nodes
    }

    /// Sorted edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(_, b)| b == node).count()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(a, _)| a == node).count()
    }

    /// A node with neither callers nor callees. Such nodes only exist when
    /// they were supplied by a signature listing.
    pub fn is_isolated(&self, node: usize) -> bool {
        !self.edges.iter().any(|&(a, b)| a == node || b == node)
    }

    pub fn isolated_nodes(&self) -> Vec<usize> {
        let mut touched = vec![false; self.len()];
        for &(a, b) in &self.edges {
            touched[a] = true;
            touched[b] = true;
        }
        (0..self.len()).filter(|&i| !touched[i]).collect()
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.len();
        let mut cells = vec![0u8; n * n];
        for &(a, b) in &self.edges {
            cells[a * n + b] = 1;
        }
        AdjacencyMatrix { n, cells }
    }
}

/// Row-major binary adjacency matrix; row = caller, column = callee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    cells: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    pub fn ones(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 1).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }
}
