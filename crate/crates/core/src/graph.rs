//! Weighted-graph data model and cut/gain arithmetic.
//!
//! Graphs are undirected, deduplicated, and frozen after construction: the
//! edge list and the per-node adjacency index are built once and never
//! mutated, so a `&WeightedGraph` is freely shareable.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// One undirected edge `u < v` with real weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Undirected weighted graph with per-node volumes.
///
/// Volumes count how many finest-level nodes each node aggregates; all
/// ingestion and generation paths start them at 1 and coarsening sums them.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<Edge>,
    volumes: Vec<u64>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    /// Builds a graph from an edge list. Duplicate unordered pairs merge by
    /// weight summation; self-loops are rejected.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut b = GraphBuilder::new(node_count);
        for &(u, v, w) in edges {
            b.add(u, v, w)?;
        }
        Ok(b.finish())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn volumes(&self) -> &[u64] {
        &self.volumes
    }

    pub fn volume(&self, node: usize) -> u64 {
        self.volumes[node]
    }

    pub(crate) fn set_volumes(&mut self, volumes: Vec<u64>) {
        assert_eq!(volumes.len(), self.node_count);
        assert!(volumes.iter().all(|&v| v >= 1), "volumes must be >= 1");
        self.volumes = volumes;
    }

    /// Neighbors of `node` with edge weights.
    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// Sum of all edge weights.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Largest absolute edge weight (0 for edgeless graphs).
    pub fn max_abs_weight(&self) -> f64 {
        self.edges.iter().fold(0.0, |m, e| m.max(e.w.abs()))
    }

    /// Copy with every weight multiplied by `factor`. Volumes are preserved.
    pub fn scaled(&self, factor: f64) -> WeightedGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.w *= factor;
        }
        for adj in &mut g.adjacency {
            for (_, w) in adj.iter_mut() {
                *w *= factor;
            }
        }
        g
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.node_count];
        let mut out = Vec::new();
        for start in 0..self.node_count {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, _) in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.node_count <= 1 || self.components().len() == 1
    }
}

/// Accumulating constructor: weights of repeated unordered pairs sum, which
/// is exactly the `P^T A P` accumulation used by coarsening and subproblem
/// aggregation.
#[derive(Debug)]
pub struct GraphBuilder {
    node_count: usize,
    weights: BTreeMap<(usize, usize), f64>,
}

impl GraphBuilder {
    pub fn new(node_count: usize) -> Self {
        GraphBuilder {
            node_count,
            weights: BTreeMap::new(),
        }
    }

    /// Adds `w` to the weight of the unordered pair `{u, v}`.
    pub fn add(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        if u >= self.node_count {
            return Err(Error::NodeOutOfRange {
                node: u,
                count: self.node_count,
            });
        }
        if v >= self.node_count {
            return Err(Error::NodeOutOfRange {
                node: v,
                count: self.node_count,
            });
        }
        if u == v {
            return Err(Error::InvalidParam(format!("self-loop at node {u}")));
        }
        let key = (u.min(v), u.max(v));
        *self.weights.entry(key).or_insert(0.0) += w;
        Ok(())
    }

    pub fn finish(self) -> WeightedGraph {
        self.finish_with(false)
    }

    /// Like [`finish`](Self::finish) but drops edges whose accumulated weight
    /// is exactly zero.
    pub fn finish_dropping_zeros(self) -> WeightedGraph {
        self.finish_with(true)
    }

    fn finish_with(self, drop_zeros: bool) -> WeightedGraph {
        let mut edges = Vec::with_capacity(self.weights.len());
        let mut adjacency = vec![Vec::new(); self.node_count];
        for (&(u, v), &w) in &self.weights {
            if drop_zeros && w == 0.0 {
                continue;
            }
            edges.push(Edge { u, v, w });
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        WeightedGraph {
            node_count: self.node_count,
            edges,
            volumes: vec![1; self.node_count],
            adjacency,
        }
    }
}

/// One side label (0 or 1) per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutAssignment {
    side: Vec<u8>,
}

impl CutAssignment {
    pub fn new(side: Vec<u8>) -> Self {
        assert!(side.iter().all(|&s| s <= 1), "sides must be 0 or 1");
        CutAssignment { side }
    }

    pub fn zeros(n: usize) -> Self {
        CutAssignment { side: vec![0; n] }
    }

    /// Assignment read off the low `n` bits of `bits` (bit i = side of node i).
    pub fn from_bits(bits: u64, n: usize) -> Self {
        CutAssignment {
            side: (0..n).map(|i| ((bits >> i) & 1) as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    pub fn side(&self, node: usize) -> u8 {
        self.side[node]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }

    pub fn flip(&mut self, node: usize) {
        self.side[node] ^= 1;
    }

    pub fn complement(&self) -> CutAssignment {
        CutAssignment {
            side: self.side.iter().map(|s| s ^ 1).collect(),
        }
    }
}

/// Per-node cut-value change if that node alone flips sides.
#[derive(Debug, Clone, PartialEq)]
pub struct GainVector {
    gain: Vec<f64>,
}

impl GainVector {
    pub fn gain(&self, node: usize) -> f64 {
        self.gain[node]
    }

    pub fn gains(&self) -> &[f64] {
        &self.gain
    }

    pub fn len(&self) -> usize {
        self.gain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gain.is_empty()
    }
}

fn check_len(g: &WeightedGraph, x: &CutAssignment) {
    assert_eq!(
        g.node_count(),
        x.len(),
        "assignment length {} does not match node count {}",
        x.len(),
        g.node_count()
    );
}

/// Total weight of edges whose endpoints lie on different sides.
pub fn cut_value(g: &WeightedGraph, x: &CutAssignment) -> f64 {
    check_len(g, x);
    g.edges()
        .iter()
        .filter(|e| x.side(e.u) != x.side(e.v))
        .map(|e| e.w)
        .sum()
}

/// Gain of every node: uncut incident weight minus cut incident weight,
/// i.e. the exact cut delta from flipping that node alone.
pub fn gain_vector(g: &WeightedGraph, x: &CutAssignment) -> GainVector {
    check_len(g, x);
    let mut gain = vec![0.0; g.node_count()];
    for e in g.edges() {
        if x.side(e.u) != x.side(e.v) {
            gain[e.u] -= e.w;
            gain[e.v] -= e.w;
        } else {
            gain[e.u] += e.w;
            gain[e.v] += e.w;
        }
    }
    GainVector { gain }
}

/// Flips `node` in place and patches the gain vector in `O(deg(node))`.
///
/// The flipped node's gain negates; each neighbor's gain moves by `±2w`
/// depending on whether the shared edge just entered or left the cut.
pub fn apply_flip(g: &WeightedGraph, x: &mut CutAssignment, gains: &mut GainVector, node: usize) {
    check_len(g, x);
    assert!(
        node < g.node_count(),
        "node {node} out of range for {} nodes",
        g.node_count()
    );
    x.flip(node);
    gains.gain[node] = -gains.gain[node];
    let side = x.side(node);
    for &(nb, w) in g.neighbors(node) {
        if x.side(nb) != side {
            // Edge entered the cut: flipping the neighbor now un-cuts it.
            gains.gain[nb] -= 2.0 * w;
        } else {
            gains.gain[nb] += 2.0 * w;
        }
    }
}
