//! Dense weighted undirected graphs, node partitions, and community-level
//! contraction.

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyVector;

/// Undirected graph stored as a dense symmetric matrix of nonnegative
/// weights. The same type serves adjacency, synergy, and blended matrices.
///
/// Conventions: `total_weight` is `sum_ij w(i,j)` with both triangle copies
/// and each self-loop counted once on the diagonal (the `2m` convention);
/// `degree(i)` is the row sum, so a self-loop contributes its diagonal
/// value once. Contraction preserves modularity under these rules.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    w: Vec<f64>,
    degree: Vec<f64>,
    total: f64,
}

impl WeightedGraph {
    /// Builds a graph from a row-major `n * n` matrix, validating shape,
    /// symmetry, and nonnegativity.
    pub fn from_flat(n: usize, w: Vec<f64>) -> Result<Self> {
        if w.len() != n * n {
            return Err(Error::DimensionMismatch(w.len(), n * n));
        }
        for i in 0..n {
            for j in i..n {
                let wij = w[i * n + j];
                if !wij.is_finite() || wij < 0.0 {
                    return Err(Error::NegativeWeight(i, j, wij));
                }
                if wij != w[j * n + i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self::from_flat_unchecked(n, w))
    }

    /// Internal constructor for matrices symmetric by construction.
    pub(crate) fn from_flat_unchecked(n: usize, w: Vec<f64>) -> Self {
        debug_assert_eq!(w.len(), n * n);
        let degree: Vec<f64> = (0..n).map(|i| w[i * n..(i + 1) * n].iter().sum()).collect();
        let total = w.iter().sum();
        Self {
            n,
            w,
            degree,
            total,
        }
    }

    /// Builds a graph from `(u, v, weight)` triples. Off-diagonal entries
    /// are mirrored; `(u, u, w)` sets the diagonal once. Repeated pairs
    /// accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut w = vec![0.0; n * n];
        for &(u, v, weight) in edges {
            if u >= n {
                return Err(Error::NodeOutOfRange(u, n));
            }
            if v >= n {
                return Err(Error::NodeOutOfRange(v, n));
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(Error::NegativeWeight(u, v, weight));
            }
            if u == v {
                w[u * n + u] += weight;
            } else {
                w[u * n + v] += weight;
                w[v * n + u] += weight;
            }
        }
        Ok(Self::from_flat_unchecked(n, w))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.w[i * self.n..(i + 1) * self.n]
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degree[i]
    }

    pub fn total_weight(&self) -> f64 {
        self.total
    }

    /// Nodes `j != i` with `w(i,j) > 0`, paired with the weight.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(move |&(j, &w)| j != i && w > 0.0)
            .map(|(j, &w)| (j, w))
    }

    pub fn flat(&self) -> &[f64] {
        &self.w
    }
}

/// Assignment of every node to exactly one community.
///
/// Community ids are always normalized to `0..K-1` in order of first
/// appearance along the node indices, which makes the representation
/// canonical: relabeling communities in the input leaves the normalized
/// assignment bit-identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    communities: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from arbitrary per-node community labels,
    /// relabeling them densely by first appearance.
    pub fn from_assignment(raw: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        let mut communities: Vec<Vec<usize>> = Vec::new();
        for (node, &label) in raw.iter().enumerate() {
            let next = communities.len();
            let id = *remap.entry(label).or_insert(next);
            if id == communities.len() {
                communities.push(Vec::new());
            }
            assignment.push(id);
            communities[id].push(node);
        }
        Self {
            assignment,
            communities,
        }
    }

    /// Every node alone in its own community.
    pub fn singletons(n: usize) -> Self {
        let raw: Vec<usize> = (0..n).collect();
        Self::from_assignment(&raw)
    }

    /// All nodes in one community.
    pub fn single_community(n: usize) -> Self {
        Self::from_assignment(&vec![0; n])
    }

    pub fn n_nodes(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_communities(&self) -> usize {
        self.communities.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn communities(&self) -> &[Vec<usize>] {
        &self.communities
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    /// Community sizes in id order.
    pub fn sizes(&self) -> Vec<usize> {
        self.communities.iter().map(|c| c.len()).collect()
    }
}

/// Collapses each community of `p` into one node. The off-diagonal weight
/// between two community nodes is the sum of all cross weights; the
/// diagonal accumulates every ordered intra-community pair, so
/// `total_weight` is preserved and modularity is invariant.
pub fn contract(g: &WeightedGraph, p: &Partition) -> WeightedGraph {
    let n = g.n();
    debug_assert_eq!(p.n_nodes(), n);
    let k = p.num_communities();
    let mut w = vec![0.0; k * k];
    // Accumulate only into cells with ci <= cj, then mirror: both triangle
    // copies of the coarse matrix come from the same additions in the same
    // order, keeping it exactly symmetric.
    for i in 0..n {
        let ci = p.community_of(i);
        let row = g.row(i);
        for (j, &wij) in row.iter().enumerate() {
            let cj = p.community_of(j);
            if ci <= cj {
                w[ci * k + cj] += wij;
            }
        }
    }
    for c in 0..k {
        for d in (c + 1)..k {
            w[d * k + c] = w[c * k + d];
        }
    }
    WeightedGraph::from_flat_unchecked(k, w)
}

/// A crisp graph carrying `r` fuzzy attribute vectors, one scaling
/// parameter per vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyAttributedGraph {
    graph: WeightedGraph,
    fuzzy_vectors: Vec<FuzzyVector>,
    ps: Vec<f64>,
}

impl FuzzyAttributedGraph {
    pub fn new(
        graph: WeightedGraph,
        fuzzy_vectors: Vec<FuzzyVector>,
        ps: Vec<f64>,
    ) -> Result<Self> {
        if fuzzy_vectors.is_empty() {
            return Err(Error::NoCharacteristics);
        }
        if fuzzy_vectors.len() != ps.len() {
            return Err(Error::DimensionMismatch(fuzzy_vectors.len(), ps.len()));
        }
        for v in &fuzzy_vectors {
            if v.len() != graph.n() {
                return Err(Error::DimensionMismatch(v.len(), graph.n()));
            }
        }
        for &p in &ps {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::POutOfRange(p));
            }
        }
        Ok(Self {
            graph,
            fuzzy_vectors,
            ps,
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn fuzzy_vectors(&self) -> &[FuzzyVector] {
        &self.fuzzy_vectors
    }

    pub fn ps(&self) -> &[f64] {
        &self.ps
    }
}
