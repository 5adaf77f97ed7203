use std::collections::BTreeSet;

use crate::automata::ActiveMachine;

/// Directed graph without self-loops or parallel edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiGraph {
    nodes: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DiGraph {
    pub fn new(nodes: usize) -> Self {
        DiGraph { nodes, edges: BTreeSet::new() }
    }

    pub fn from_edges(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = DiGraph::new(nodes);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `u -> v`. Self-loops and repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.nodes && v < self.nodes, "edge ({u}, {v}) out of range");
        u != v && self.edges.insert((u, v))
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.edges.range((u, 0)..=(u, usize::MAX)).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, t)| t == v).count()
    }
}

/// Disjoint node sets covering a graph. Blocks are sorted and ordered by
/// their smallest member.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition(Vec<Vec<usize>>);

impl Partition {
    pub fn new(blocks: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Partition(blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Renames every node through `map`.
    pub fn relabel(&self, map: &[usize]) -> Partition {
        Partition::new(self.0.iter().map(|b| b.iter().map(|&u| map[u]).collect()))
    }
}

/// Graph of the active machine: one node per non-sink state, an edge for
/// every pair joined by at least one defined transition. Also returns the
/// state id of each node.
pub fn state_graph(active: &ActiveMachine) -> (DiGraph, Vec<usize>) {
    let states: Vec<usize> = active.states().collect();
    let mut node = vec![usize::MAX; active.machine.num_states()];
    for (k, &q) in states.iter().enumerate() {
        node[q] = k;
    }
    let mut g = DiGraph::new(states.len());
    for &q in &states {
        for i in active.machine.inputs().ids() {
            if let Some((t, _)) = active.machine.step(q, i) {
                g.add_edge(node[q], node[t]);
            }
        }
    }
    (g, states)
}
