//! Sugeno lambda-measures built from crisp node weights, coalition
//! evaluation, and Shapley values (exact for small ground sets, closed form
//! in the additive case).

use crate::error::{Error, Result};
use crate::fuzzy::{Defuzzifier, FuzzyVector};

/// Largest ground set accepted by [`SugenoLambdaMeasure::shapley_exact`];
/// the subset-sum formulation walks all `2^n` coalitions.
pub const MAX_EXACT_GROUND: usize = 16;

/// Absolute residual allowed on the lambda normalization constraint
/// `prod(1 + lambda mu_i) = 1 + lambda` after construction.
pub const LAMBDA_RESIDUAL_TOL: f64 = 1e-10;

/// Non-additive set function over `n` nodes, determined by per-node
/// densities `mu_i` and a parameter `lambda` with
/// `1 + lambda = prod_i (1 + lambda mu_i)`.
///
/// Densities come from crisp node weights `D_i` scaled so they sum to `p`:
/// `mu_i = p D_i / sum_k D_k`. `p == 1` gives the plain additive measure
/// (`lambda == 0` exactly); `p < 1` forces a unique `lambda > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SugenoLambdaMeasure {
    densities: Vec<f64>,
    lambda: f64,
    p: f64,
}

impl SugenoLambdaMeasure {
    /// Builds the measure from raw positive node weights.
    pub fn from_values(d_values: &[f64], p: f64) -> Result<Self> {
        if d_values.len() < 2 {
            return Err(Error::TooFewNodes {
                need: 2,
                got: d_values.len(),
            });
        }
        Self::from_values_any_size(d_values, p)
    }

    /// Builds the measure from one fuzzy set per node, defuzzified with the
    /// given operator.
    pub fn from_fuzzy_vector(v: &FuzzyVector, p: f64, defuzz: Defuzzifier) -> Result<Self> {
        Self::from_values(&v.defuzzify(defuzz)?, p)
    }

    /// Like [`Self::from_values`] but also accepts a single node. A
    /// single-node measure has density `p` and `lambda == 0`; its grand
    /// value is `p`, so normalization to 1 only holds at `p == 1`. This
    /// degenerate shape exists solely so that [`Self::without`] works on
    /// two-node measures.
    fn from_values_any_size(d_values: &[f64], p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::POutOfRange(p));
        }
        for (index, &value) in d_values.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveDensity { index, value });
            }
        }
        let total: f64 = d_values.iter().sum();
        let densities: Vec<f64> = d_values.iter().map(|&v| p * v / total).collect();
        let lambda = if p == 1.0 || densities.len() == 1 {
            0.0
        } else {
            solve_lambda(&densities)?
        };
        Ok(Self {
            densities,
            lambda,
            p,
        })
    }

    pub fn n(&self) -> usize {
        self.densities.len()
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Measure of the coalition `s` (node indices, no duplicates):
    /// `(prod_{i in s} (1 + lambda mu_i) - 1) / lambda`, or the plain sum
    /// when `lambda == 0`. Empty set gives exactly 0.
    pub fn coalition_value(&self, s: &[usize]) -> f64 {
        if self.lambda == 0.0 {
            s.iter().map(|&i| self.densities[i]).sum()
        } else {
            let prod: f64 = s
                .iter()
                .map(|&i| 1.0 + self.lambda * self.densities[i])
                .product();
            (prod - 1.0) / self.lambda
        }
    }

    /// Measure of the full node set; 1 within 1e-9 by construction
    /// (for n >= 2).
    pub fn grand_value(&self) -> f64 {
        let all: Vec<usize> = (0..self.n()).collect();
        self.coalition_value(&all)
    }

    /// Classical Shapley value of every node of `ground` for the game
    /// `(ground, coalition_value)`. Output order follows `ground`.
    ///
    /// Uses the subset-sum form with a bitmask DP over coalition values, so
    /// `|ground|` is capped at [`MAX_EXACT_GROUND`].
    pub fn shapley_exact(&self, ground: &[usize]) -> Result<Vec<f64>> {
        let k = ground.len();
        if k > MAX_EXACT_GROUND {
            return Err(Error::GroundSetTooLarge(k, MAX_EXACT_GROUND));
        }
        if k == 0 {
            return Ok(Vec::new());
        }
        let size = 1usize << k;
        let mut value = vec![0.0f64; size];
        if self.lambda == 0.0 {
            for mask in 1..size {
                let low = mask.trailing_zeros() as usize;
                value[mask] = value[mask & (mask - 1)] + self.densities[ground[low]];
            }
        } else {
            let mut prod = vec![1.0f64; size];
            for mask in 1..size {
                let low = mask.trailing_zeros() as usize;
                prod[mask] =
                    prod[mask & (mask - 1)] * (1.0 + self.lambda * self.densities[ground[low]]);
                value[mask] = (prod[mask] - 1.0) / self.lambda;
            }
        }
        // w[s] = s! (k-s-1)! / k!  -- exact in f64 for k <= 16.
        let mut fact = vec![1.0f64; k + 1];
        for i in 1..=k {
            fact[i] = fact[i - 1] * i as f64;
        }
        let weights: Vec<f64> = (0..k).map(|s| fact[s] * fact[k - 1 - s] / fact[k]).collect();
        let mut shapley = vec![0.0f64; k];
        for (t, sh) in shapley.iter_mut().enumerate() {
            let bit = 1usize << t;
            let mut acc = 0.0;
            for mask in 0..size {
                if mask & bit != 0 {
                    continue;
                }
                acc += weights[(mask as u32).count_ones() as usize] * (value[mask | bit] - value[mask]);
            }
            *sh = acc;
        }
        Ok(shapley)
    }

    /// Rebuilds the measure on the ground set without node `j`: the
    /// remaining weights keep their ratios and are rescaled to sum to the
    /// same `p`, and lambda is re-solved. Node `k` of the result maps to
    /// node `k` if `k < j`, else `k + 1`.
    pub fn without(&self, j: usize) -> Result<Self> {
        if j >= self.n() {
            return Err(Error::NodeOutOfRange(j, self.n()));
        }
        let reduced: Vec<f64> = self
            .densities
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &m)| m)
            .collect();
        Self::from_values_any_size(&reduced, self.p)
    }
}

/// Shapley value of node `i` under the additive (`p == 1`) measure, in
/// closed form: `D_i / sum_k D_k`, with the sum taken over all nodes or,
/// when `excluded` names a node `j != i`, over all nodes but `j`.
pub fn shapley_additive(d_values: &[f64], i: usize, excluded: Option<usize>) -> f64 {
    debug_assert!(excluded != Some(i), "cannot exclude the target node");
    debug_assert!(d_values.iter().all(|&v| v > 0.0));
    let total: f64 = d_values
        .iter()
        .enumerate()
        .filter(|&(k, _)| Some(k) != excluded)
        .map(|(_, &v)| v)
        .sum();
    d_values[i] / total
}

/// Solves `prod(1 + lambda mu_i) = 1 + lambda` for the unique positive root
/// given `sum mu_i < 1`: bracket by doubling, bisect, then Newton-polish.
fn solve_lambda(densities: &[f64]) -> Result<f64> {
    let g = |l: f64| -> f64 {
        densities.iter().map(|&m| 1.0 + l * m).product::<f64>() - 1.0 - l
    };
    let g_prime = |l: f64| -> f64 {
        let prod: f64 = densities.iter().map(|&m| 1.0 + l * m).product();
        let ratio_sum: f64 = densities.iter().map(|&m| m / (1.0 + l * m)).sum();
        prod * ratio_sum - 1.0
    };

    // g(0) = 0 and g'(0) = sum(mu) - 1 < 0, so g is negative just right of
    // zero and eventually positive (degree-n growth); the sign change
    // brackets the root.
    let mut lo = 1e-12;
    if g(lo) > 0.0 {
        return Err(Error::RootNotFound);
    }
    let mut hi = 1.0;
    while g(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e18 {
            return Err(Error::RootNotFound);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let mut lambda = 0.5 * (lo + hi);
    for _ in 0..8 {
        let derivative = g_prime(lambda);
        if derivative == 0.0 {
            break;
        }
        let next = lambda - g(lambda) / derivative;
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        lambda = next;
    }
    if g(lambda).abs() > LAMBDA_RESIDUAL_TOL {
        return Err(Error::RootNotFound);
    }
    Ok(lambda)
}
