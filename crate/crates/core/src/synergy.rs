//! Pairwise synergy matrices from Shapley marginals, element-wise
//! aggregation across characteristics, and the adjacency blend.
//!
//! The synergy between nodes i and j is how much each one's Shapley share
//! shrinks when the other leaves the ground set: removing a player inflates
//! everyone else's share, so the raw marginals `Sh_i - Sh_i^j` are
//! nonpositive and the standard pipeline combines their absolute values
//! with a bivariate aggregator (default min).

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::measure::{SugenoLambdaMeasure, MAX_EXACT_GROUND};

/// Order-insensitive aggregation operator used both pairwise (phi) and
/// across the r characteristic matrices (Phi).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregator {
    Min,
    Max,
    Mean,
}

impl Aggregator {
    pub fn apply2(self, x: f64, y: f64) -> f64 {
        match self {
            Aggregator::Min => x.min(y),
            Aggregator::Max => x.max(y),
            Aggregator::Mean => 0.5 * (x + y),
        }
    }

    /// Aggregates a nonempty slice.
    pub fn apply(self, values: &[f64]) -> f64 {
        debug_assert!(!values.is_empty());
        match self {
            Aggregator::Min => values.iter().copied().fold(f64::INFINITY, f64::min),
            Aggregator::Max => values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Aggregator::Mean => values.iter().sum::<f64>() / values.len() as f64,
        }
    }
}

impl std::str::FromStr for Aggregator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "min" => Ok(Aggregator::Min),
            "max" => Ok(Aggregator::Max),
            "mean" => Ok(Aggregator::Mean),
            other => Err(format!("unknown aggregator '{other}' (use min, max, or mean)")),
        }
    }
}

impl std::fmt::Display for Aggregator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Aggregator::Min => "min",
            Aggregator::Max => "max",
            Aggregator::Mean => "mean",
        })
    }
}

/// Synergy matrix for the additive (`p == 1`) measure, using the
/// closed-form shares `Sh_i = D_i / S` and `Sh_i^j = D_i / (S - D_j)`:
///
/// `F(i,j) = phi(|Sh_i - Sh_i^j|, |Sh_j - Sh_j^i|)`, zero diagonal.
pub fn synergy_matrix_additive(d_values: &[f64], phi: Aggregator) -> Result<WeightedGraph> {
    let n = d_values.len();
    if n < 2 {
        return Err(Error::TooFewNodes { need: 2, got: n });
    }
    for (index, &value) in d_values.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveDensity { index, value });
        }
    }
    let s: f64 = d_values.iter().sum();
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        let sh_i = d_values[i] / s;
        for j in (i + 1)..n {
            let sh_j = d_values[j] / s;
            let drop_i = (sh_i - d_values[i] / (s - d_values[j])).abs();
            let drop_j = (sh_j - d_values[j] / (s - d_values[i])).abs();
            let f = phi.apply2(drop_i, drop_j);
            w[i * n + j] = f;
            w[j * n + i] = f;
        }
    }
    Ok(WeightedGraph::from_flat_unchecked(n, w))
}

/// Synergy matrix for an arbitrary measure: `Sh_i` comes from the exact
/// Shapley value on the full ground set, and `Sh_i^j` from the exact
/// Shapley value of the measure rebuilt on the ground set without `j`
/// (remaining weights rescaled to the same p, lambda re-solved). Capped at
/// [`MAX_EXACT_GROUND`] nodes.
pub fn synergy_matrix_general(m: &SugenoLambdaMeasure, phi: Aggregator) -> Result<WeightedGraph> {
    let (n, sh, sh_without) = shapley_marginals(m)?;
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let drop_i = (sh[i] - sh_without[j][i]).abs();
            let drop_j = (sh[j] - sh_without[i][j]).abs();
            let f = phi.apply2(drop_i, drop_j);
            w[i * n + j] = f;
            w[j * n + i] = f;
        }
    }
    Ok(WeightedGraph::from_flat_unchecked(n, w))
}

/// Raw signed variant of [`synergy_matrix_general`]: applies `phi` to the
/// signed marginals `Sh_i - Sh_i^j` without taking absolute values.
/// Entries can be negative, so the result is a plain row-major matrix
/// rather than a [`WeightedGraph`]. Diagonal is zero.
pub fn synergy_matrix_general_signed(
    m: &SugenoLambdaMeasure,
    phi: Aggregator,
) -> Result<Vec<f64>> {
    let (n, sh, sh_without) = shapley_marginals(m)?;
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let f = phi.apply2(sh[i] - sh_without[j][i], sh[j] - sh_without[i][j]);
            w[i * n + j] = f;
            w[j * n + i] = f;
        }
    }
    Ok(w)
}

/// Full-ground Shapley values plus, for every j, the Shapley values of the
/// measure rebuilt without j (`sh_without[j][i]` = share of i when j is
/// absent; `sh_without[j][j]` is unused and left 0).
fn shapley_marginals(m: &SugenoLambdaMeasure) -> Result<(usize, Vec<f64>, Vec<Vec<f64>>)> {
    let n = m.n();
    if n < 2 {
        return Err(Error::TooFewNodes { need: 2, got: n });
    }
    if n > MAX_EXACT_GROUND {
        return Err(Error::GroundSetTooLarge(n, MAX_EXACT_GROUND));
    }
    let full: Vec<usize> = (0..n).collect();
    let sh = m.shapley_exact(&full)?;
    let mut sh_without = vec![vec![0.0; n]; n];
    for j in 0..n {
        let reduced = m.without(j)?;
        let ground: Vec<usize> = (0..n - 1).collect();
        let sh_red = reduced.shapley_exact(&ground)?;
        for (k, &v) in sh_red.iter().enumerate() {
            let original = if k < j { k } else { k + 1 };
            sh_without[j][original] = v;
        }
    }
    Ok((n, sh, sh_without))
}

/// Element-wise aggregation of `r >= 1` equally sized matrices.
pub fn aggregate_matrices(mats: &[WeightedGraph], op: Aggregator) -> Result<WeightedGraph> {
    let first = mats.first().ok_or(Error::NoMatrices)?;
    let n = first.n();
    for m in mats {
        if m.n() != n {
            return Err(Error::DimensionMismatch(m.n(), n));
        }
    }
    let mut w = vec![0.0; n * n];
    let mut cell = Vec::with_capacity(mats.len());
    for (idx, slot) in w.iter_mut().enumerate() {
        cell.clear();
        cell.extend(mats.iter().map(|m| m.flat()[idx]));
        *slot = op.apply(&cell);
    }
    Ok(WeightedGraph::from_flat_unchecked(n, w))
}

/// Convex blend `gamma * a + (1 - gamma) * f`. The endpoints are exact:
/// `gamma == 1` returns `a` bit-for-bit and `gamma == 0` returns `f`.
pub fn combine(a: &WeightedGraph, f: &WeightedGraph, gamma: f64) -> Result<WeightedGraph> {
    if !(0.0..=1.0).contains(&gamma) || gamma.is_nan() {
        return Err(Error::GammaOutOfRange(gamma));
    }
    if a.n() != f.n() {
        return Err(Error::DimensionMismatch(a.n(), f.n()));
    }
    if gamma == 1.0 {
        return Ok(a.clone());
    }
    if gamma == 0.0 {
        return Ok(f.clone());
    }
    let n = a.n();
    let w: Vec<f64> = a
        .flat()
        .iter()
        .zip(f.flat())
        .map(|(&wa, &wf)| gamma * wa + (1.0 - gamma) * wf)
        .collect();
    Ok(WeightedGraph::from_flat_unchecked(n, w))
}
