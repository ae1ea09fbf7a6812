//! Edge-colored directed graph with weighted, string-keyed nodes.
//!
//! This is the shared carrier for both the ice-model crystal and the tableau
//! crystal, and the input type of the regularity verifier. Edges are stored
//! as a plain set of (source, color, target) triples so that graphs read
//! from files can violate functionality and still be inspected.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::crystal_ops::Weight;

#[derive(Clone, Debug)]
pub struct NodeData {
    pub key: String,
    pub weight: Weight,
}

/// Finite directed graph with edges colored by 1..=rank.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    /// Length of the weight vectors; colors run over 1..=weight_len−1.
    weight_len: usize,
    nodes: Vec<NodeData>,
    index: BTreeMap<String, usize>,
    edges: BTreeSet<(usize, usize, usize)>,
}

impl CrystalGraph {
    pub fn new(weight_len: usize) -> CrystalGraph {
        CrystalGraph {
            weight_len,
            nodes: Vec::new(),
            index: BTreeMap::new(),
            edges: BTreeSet::new(),
        }
    }

    pub fn weight_len(&self) -> usize {
        self.weight_len
    }

    /// Number of edge colors: one less than the weight length.
    pub fn rank(&self) -> usize {
        self.weight_len.saturating_sub(1)
    }

    pub fn colors(&self) -> impl Iterator<Item = usize> {
        1..=self.rank()
    }

    /// Inserts a node, or returns the existing index when the key is known.
    pub fn add_node(&mut self, key: String, weight: Weight) -> usize {
        if let Some(&idx) = self.index.get(&key) {
            return idx;
        }
        let idx = self.nodes.len();
        self.index.insert(key.clone(), idx);
        self.nodes.push(NodeData { key, weight });
        idx
    }

    pub fn add_edge(&mut self, src: usize, color: usize, dst: usize) {
        assert!(src < self.nodes.len() && dst < self.nodes.len());
        self.edges.insert((src, color, dst));
    }

    pub fn remove_edge(&mut self, src: usize, color: usize, dst: usize) -> bool {
        self.edges.remove(&(src, color, dst))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node(&self, idx: usize) -> &NodeData {
        &self.nodes[idx]
    }

    pub fn key(&self, idx: usize) -> &str {
        &self.nodes[idx].key
    }

    pub fn weight(&self, idx: usize) -> &Weight {
        &self.nodes[idx].weight
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, &NodeData)> {
        self.nodes.iter().enumerate()
    }

    /// Edges in (source, color, target) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn out_targets(&self, src: usize, color: usize) -> Vec<usize> {
        self.edges
            .range((src, color, 0)..=(src, color, usize::MAX))
            .map(|&(_, _, dst)| dst)
            .collect()
    }

    pub fn in_sources(&self, dst: usize, color: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|&&(_, c, d)| c == color && d == dst)
            .map(|&(s, _, _)| s)
            .collect()
    }

    /// Target of the unique outgoing edge of this color, if the graph is
    /// functional there. `Err` reports branching.
    pub fn f_image(&self, src: usize, color: usize) -> Result<Option<usize>, Branching> {
        let targets = self.out_targets(src, color);
        match targets.len() {
            0 => Ok(None),
            1 => Ok(Some(targets[0])),
            _ => Err(Branching {
                node: src,
                color,
                out: true,
            }),
        }
    }

    /// Source of the unique incoming edge of this color, if any.
    pub fn e_image(&self, dst: usize, color: usize) -> Result<Option<usize>, Branching> {
        let sources = self.in_sources(dst, color);
        match sources.len() {
            0 => Ok(None),
            1 => Ok(Some(sources[0])),
            _ => Err(Branching {
                node: dst,
                color,
                out: false,
            }),
        }
    }

    /// Nodes with no incoming edge of any color.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.nodes.len()];
        for &(_, _, dst) in &self.edges {
            has_in[dst] = true;
        }
        (0..self.nodes.len()).filter(|&i| !has_in[i]).collect()
    }

    /// Weak connectivity, ignoring colors and directions.
    pub fn is_weakly_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(s, _, d) in &self.edges {
            adj[s].push(d);
            adj[d].push(s);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == self.nodes.len()
    }
}

/// More than one edge of one color at a node, in the reported direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Branching {
    pub node: usize,
    pub color: usize,
    pub out: bool,
}
