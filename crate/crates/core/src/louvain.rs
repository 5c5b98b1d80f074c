//! Modularity, local-move gains, and the dual-matrix Louvain optimizer:
//! candidate moves come from neighborhoods in one matrix (A) while gains
//! are scored on another (M). The end-to-end detection drivers that build M
//! from fuzzy attributes live here too.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fuzzy::Defuzzifier;
use crate::graph::{contract, FuzzyAttributedGraph, Partition, WeightedGraph};
use crate::measure::SugenoLambdaMeasure;
use crate::synergy::{
    aggregate_matrices, combine, synergy_matrix_additive, synergy_matrix_general, Aggregator,
};

/// Smallest gain treated as an improvement. Strictly positive so that
/// rounding noise in the gain formula can never drive an endless cycle of
/// moves; far below any structurally meaningful modularity change.
pub const MIN_GAIN: f64 = 1e-12;

/// Modularity of `p` on `g`:
///
/// `Q = sum_C [ W(C)/T - (K(C)/T)^2 ]`
///
/// where `T` is the total weight (2m convention), `W(C)` sums all ordered
/// intra-community entries including the diagonal, and `K(C)` sums member
/// degrees. Equivalent to the usual pairwise form and invariant under
/// community contraction.
pub fn modularity(g: &WeightedGraph, p: &Partition) -> Result<f64> {
    let t = g.total_weight();
    if t <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let k = p.num_communities();
    let mut internal = vec![0.0f64; k];
    let mut degree_mass = vec![0.0f64; k];
    for i in 0..g.n() {
        let ci = p.community_of(i);
        degree_mass[ci] += g.degree(i);
        let row = g.row(i);
        for (j, &wij) in row.iter().enumerate() {
            if p.community_of(j) == ci {
                internal[ci] += wij;
            }
        }
    }
    let mut q = 0.0;
    for c in 0..k {
        let frac = degree_mass[c] / t;
        q += internal[c] / t - frac * frac;
    }
    Ok(q)
}

/// Mutable view of one local-moving phase on a single graph: tracks the
/// community of every node and each community's total degree, and prices
/// single-node moves in O(row).
#[derive(Debug)]
pub struct LocalMoveState<'g> {
    m: &'g WeightedGraph,
    assignment: Vec<usize>,
    community_degree: Vec<f64>,
    total: f64,
}

impl<'g> LocalMoveState<'g> {
    /// Starts from the all-singletons partition (community ids = node ids).
    pub fn new(m: &'g WeightedGraph) -> Result<Self> {
        let total = m.total_weight();
        if total <= 0.0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self {
            m,
            assignment: (0..m.n()).collect(),
            community_degree: (0..m.n()).map(|i| m.degree(i)).collect(),
            total,
        })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    /// Exact modularity change from moving `node` into community `target`
    /// (0 for its own community):
    ///
    /// `dQ = 2/T (w(u,Y) - w(u,X')) - 2 k_u/T^2 (K(Y) - K(X'))`
    ///
    /// with `X'` the node's community without it and `Y` the target. The
    /// node's self-loop appears in neither term because it moves with the
    /// node.
    pub fn delta_q(&self, node: usize, target: usize) -> f64 {
        let current = self.assignment[node];
        if target == current {
            return 0.0;
        }
        let t = self.total;
        let k_node = self.m.degree(node);
        let mut w_own = 0.0;
        let mut w_target = 0.0;
        for (j, w) in self.m.neighbors(node) {
            let cj = self.assignment[j];
            if cj == current {
                w_own += w;
            } else if cj == target {
                w_target += w;
            }
        }
        let k_own_without = self.community_degree[current] - k_node;
        2.0 / t * (w_target - w_own)
            - 2.0 * k_node / (t * t) * (self.community_degree[target] - k_own_without)
    }

    /// Applies the move priced by [`Self::delta_q`].
    pub fn move_node(&mut self, node: usize, target: usize) {
        let current = self.assignment[node];
        if target == current {
            return;
        }
        let k_node = self.m.degree(node);
        self.community_degree[current] -= k_node;
        self.community_degree[target] += k_node;
        self.assignment[node] = target;
    }
}

/// Options for [`duo_louvain_with`].
#[derive(Debug, Clone)]
pub struct DuoLouvainOptions {
    /// Draw a fresh node order before every sweep instead of keeping one
    /// order per level (the literal algorithm draws a single order).
    pub shuffle_each_pass: bool,
    /// Hard cap on sweeps per level; a safety net on top of [`MIN_GAIN`].
    pub max_sweeps: usize,
}

impl Default for DuoLouvainOptions {
    fn default() -> Self {
        Self {
            shuffle_each_pass: false,
            max_sweeps: 1_000,
        }
    }
}

/// Dual-matrix Louvain with default options. See [`duo_louvain_with`].
pub fn duo_louvain(a: &WeightedGraph, m: &WeightedGraph, seed: u64) -> Result<Partition> {
    duo_louvain_with(a, m, seed, &DuoLouvainOptions::default())
}

/// Dual-matrix Louvain: phase 1 sweeps a seeded random permutation of the
/// nodes, moving each node into the neighboring community (neighbors read
/// from `a`) with the largest positive modularity gain computed on `m`,
/// until a full sweep makes no move; phase 2 contracts both matrices by the
/// found communities and recurses while the node count keeps shrinking.
///
/// Ties on the gain go to the smallest community id. Nodes with no
/// neighbors in `a` never move and end as singletons.
pub fn duo_louvain_with(
    a: &WeightedGraph,
    m: &WeightedGraph,
    seed: u64,
    opts: &DuoLouvainOptions,
) -> Result<Partition> {
    if a.n() != m.n() {
        return Err(Error::DimensionMismatch(a.n(), m.n()));
    }
    if m.total_weight() <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a_level = a.clone();
    let mut m_level = m.clone();
    // flat[v] = current-level node holding original node v.
    let mut flat: Vec<usize> = (0..a.n()).collect();
    loop {
        let n = a_level.n();
        let mut state = LocalMoveState::new(&m_level)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut sweeps = 0;
        loop {
            if opts.shuffle_each_pass && sweeps > 0 {
                order.shuffle(&mut rng);
            }
            let mut moved = false;
            let mut candidates: Vec<usize> = Vec::new();
            for &u in &order {
                let current = state.community_of(u);
                candidates.clear();
                candidates.extend(
                    a_level
                        .neighbors(u)
                        .map(|(v, _)| state.community_of(v))
                        .filter(|&c| c != current),
                );
                candidates.sort_unstable();
                candidates.dedup();
                let mut best_community = current;
                let mut best_gain = 0.0;
                for &c in &candidates {
                    let gain = state.delta_q(u, c);
                    if gain > best_gain {
                        best_gain = gain;
                        best_community = c;
                    }
                }
                if best_community != current && best_gain > MIN_GAIN {
                    state.move_node(u, best_community);
                    moved = true;
                }
            }
            sweeps += 1;
            if !moved || sweeps >= opts.max_sweeps {
                break;
            }
        }
        let level_partition = Partition::from_assignment(state.assignment());
        if level_partition.num_communities() == n {
            break;
        }
        for v in flat.iter_mut() {
            *v = level_partition.community_of(*v);
        }
        a_level = contract(&a_level, &level_partition);
        m_level = contract(&m_level, &level_partition);
    }
    Ok(Partition::from_assignment(&flat))
}

/// End-to-end detection on a graph with `r` crisp attribute vectors
/// (additive measures): per-vector synergy matrices via the closed-form
/// Shapley shares, aggregated with `cap_phi`, blended with the adjacency as
/// `M = gamma A + (1 - gamma) F`, then dual-matrix Louvain.
pub fn md_additive_sugeno_louvain(
    a: &WeightedGraph,
    vectors_d: &[Vec<f64>],
    phi: Aggregator,
    cap_phi: Aggregator,
    gamma: f64,
    seed: u64,
) -> Result<Partition> {
    if vectors_d.is_empty() {
        return Err(Error::NoCharacteristics);
    }
    for v in vectors_d {
        if v.len() != a.n() {
            return Err(Error::DimensionMismatch(v.len(), a.n()));
        }
    }
    let mats: Vec<WeightedGraph> = vectors_d
        .iter()
        .map(|d| synergy_matrix_additive(d, phi))
        .collect::<Result<_>>()?;
    let f = aggregate_matrices(&mats, cap_phi)?;
    let m = combine(a, &f, gamma)?;
    duo_louvain(a, &m, seed)
}

/// End-to-end detection on a fuzzy-attributed graph. Vectors with
/// `p == 1` take the closed-form additive route; vectors with `p < 1`
/// build the full measure and pay the exact-Shapley cost, so they error
/// with `GroundSetTooLarge` beyond 16 nodes. Defuzzification is centroid.
pub fn md_fuzzy_sugeno_louvain(
    g: &FuzzyAttributedGraph,
    phi: Aggregator,
    cap_phi: Aggregator,
    gamma: f64,
    seed: u64,
) -> Result<Partition> {
    let a = g.graph();
    let mut mats = Vec::with_capacity(g.fuzzy_vectors().len());
    for (vector, &p) in g.fuzzy_vectors().iter().zip(g.ps()) {
        let d_values = vector.defuzzify(Defuzzifier::Centroid)?;
        let mat = if p == 1.0 {
            synergy_matrix_additive(&d_values, phi)?
        } else {
            let measure = SugenoLambdaMeasure::from_values(&d_values, p)?;
            synergy_matrix_general(&measure, phi)?
        };
        mats.push(mat);
    }
    let f = aggregate_matrices(&mats, cap_phi)?;
    let m = combine(a, &f, gamma)?;
    duo_louvain(a, &m, seed)
}
