//! Seeded benchmark instances: planted-partition adjacency, low/high
//! inverse-CDF value samplers, per-characteristic attribute vectors, and
//! the reference synergy matrix built from them.
//!
//! An instance is fully determined by a [`BenchmarkSpec`]. Generation draws
//! from one `ChaCha8Rng` stream in a fixed order (adjacency first, then
//! attribute vectors row by row), so equal specs yield identical instances.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Partition, WeightedGraph};
use crate::io;

/// Edge probabilities (alpha, beta) for preset networks 1 through 9,
/// from densest communities to faintest.
pub fn network_params(network: u8) -> Result<(f64, f64)> {
    const ALPHA: [f64; 9] = [0.45, 0.4, 0.35, 0.325, 0.3, 0.275, 0.25, 0.225, 0.2];
    const BETA: [f64; 9] = [0.016, 0.033, 0.05, 0.058, 0.066, 0.075, 0.083, 0.091, 0.1];
    match network {
        1..=9 => {
            let i = (network - 1) as usize;
            Ok((ALPHA[i], BETA[i]))
        }
        other => Err(Error::UnknownNetwork(other)),
    }
}

/// Sampler shapes (a, b, c, d) for preset cases 1 through 9, from widest
/// low/high separation to narrowest.
pub fn case_params(case: u8) -> Result<(f64, f64, f64, f64)> {
    const A: [f64; 9] = [0.0, 0.0, 0.0, 0.1, 0.1, 0.1, 0.2, 0.2, 0.2];
    const B: [f64; 9] = [0.1, 0.1, 0.1, 0.2, 0.2, 0.2, 0.3, 0.3, 0.3];
    const C: [f64; 9] = [0.9, 0.8, 0.7, 0.9, 0.8, 0.7, 0.9, 0.8, 0.7];
    const D: [f64; 9] = [1.0, 0.9, 0.8, 1.0, 0.9, 0.8, 1.0, 0.9, 0.8];
    match case {
        1..=9 => {
            let i = (case - 1) as usize;
            Ok((A[i], B[i], C[i], D[i]))
        }
        other => Err(Error::UnknownCase(other)),
    }
}

/// Planted block sizes for one preset model: adjacency communities and
/// attribute communities over the same 256 nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelPreset {
    pub adjacency_sizes: Vec<usize>,
    pub attribute_sizes: Vec<usize>,
}

pub fn model_preset(model: u8) -> Result<ModelPreset> {
    let (adjacency_sizes, attribute_sizes): (Vec<usize>, Vec<usize>) = match model {
        1 => (vec![128, 128], vec![64, 64, 64, 64]),
        2 => (vec![64, 64, 64, 64], vec![32; 8]),
        3 => (vec![128, 128], vec![43, 42, 43, 96, 32]),
        4 => (vec![64, 64, 64, 64], vec![24, 40, 64, 21, 22, 21, 32, 32]),
        other => return Err(Error::UnknownModel(other)),
    };
    Ok(ModelPreset {
        adjacency_sizes,
        attribute_sizes,
    })
}

/// Inverse CDF of the low-value density: flat at height 2/(a+b) on [0,a],
/// descending linearly to 0 at b. The radicand is clamped at 0 so p=1
/// returns exactly b instead of NaN from rounding.
pub fn low_inverse_cdf(a: f64, b: f64, p: f64) -> f64 {
    debug_assert!(0.0 <= a && a < b);
    debug_assert!((0.0..=1.0).contains(&p));
    let thresh = 2.0 * a / (a + b);
    if p <= thresh {
        (a + b) * p / 2.0
    } else {
        let radicand = (p - thresh) * (a + b) * (a - b) + (a - b) * (a - b);
        b - radicand.max(0.0).sqrt()
    }
}

/// Inverse CDF of the high-value density: rising linearly from 0 at c,
/// flat at height 2/((1-c)+(1-d)) on [d,1].
pub fn high_inverse_cdf(c: f64, d: f64, p: f64) -> f64 {
    debug_assert!(0.0 <= c && c < d && d <= 1.0);
    debug_assert!((0.0..=1.0).contains(&p));
    let s = (1.0 - c) + (1.0 - d);
    let thresh = (d - c) / s;
    if p <= thresh {
        c + (p * (d - c) * s).sqrt()
    } else {
        (p * s + c + d) / 2.0
    }
}

/// Analytic CDF of the low-value density, for distribution tests.
pub fn low_cdf(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x <= a {
        2.0 * x / (a + b)
    } else if x < b {
        2.0 * a / (a + b) + ((x - b) * (x - b) - (a - b) * (a - b)) / ((a + b) * (a - b))
    } else {
        1.0
    }
}

/// Analytic CDF of the high-value density, for distribution tests.
pub fn high_cdf(c: f64, d: f64, x: f64) -> f64 {
    let s = (1.0 - c) + (1.0 - d);
    if x <= c {
        0.0
    } else if x <= d {
        (x - c) * (x - c) / (s * (d - c))
    } else if x < 1.0 {
        ((x - d) + (x - c)) / s
    } else {
        1.0
    }
}

pub fn sample_low(a: f64, b: f64, rng: &mut impl Rng) -> f64 {
    low_inverse_cdf(a, b, rng.gen::<f64>())
}

pub fn sample_high(c: f64, d: f64, rng: &mut impl Rng) -> f64 {
    high_inverse_cdf(c, d, rng.gen::<f64>())
}

fn block_of(sizes: &[usize]) -> Vec<usize> {
    let mut block = Vec::with_capacity(sizes.iter().sum());
    for (idx, &size) in sizes.iter().enumerate() {
        block.extend(std::iter::repeat(idx).take(size));
    }
    block
}

/// Partition of 0..n-1 into consecutive blocks of the given sizes.
pub fn blocks_partition(sizes: &[usize]) -> Partition {
    Partition::from_assignment(&block_of(sizes))
}

/// Planted-partition graph: each unordered pair {i,j}, i < j, gets one
/// uniform draw and an edge of weight 1 with probability `alpha` when both
/// endpoints share a block, `beta` otherwise. No self-loops.
pub fn generate_adjacency(
    sizes: &[usize],
    alpha: f64,
    beta: f64,
    rng: &mut impl Rng,
) -> WeightedGraph {
    debug_assert!((0.0..=1.0).contains(&alpha) && (0.0..=1.0).contains(&beta));
    let block = block_of(sizes);
    let n = block.len();
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let p = if block[i] == block[j] { alpha } else { beta };
            // One draw per pair regardless of p, so edge patterns for
            // different (alpha, beta) under the same seed stay aligned.
            let u: f64 = rng.gen();
            if u < p {
                w[i * n + j] = 1.0;
                w[j * n + i] = 1.0;
            }
        }
    }
    WeightedGraph::from_flat_unchecked(n, w)
}

/// One value row per attribute block: entry (l, i) is high-sampled when
/// node i belongs to block l and low-sampled otherwise. Rows are generated
/// in block order with the node index innermost.
pub fn generate_vectors(
    f_sizes: &[usize],
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    rng: &mut impl Rng,
) -> Vec<Vec<f64>> {
    let block = block_of(f_sizes);
    let n = block.len();
    (0..f_sizes.len())
        .map(|l| {
            (0..n)
                .map(|i| {
                    if block[i] == l {
                        sample_high(c, d, rng)
                    } else {
                        sample_low(a, b, rng)
                    }
                })
                .collect()
        })
        .collect()
}

/// Reference synergy matrix for a fresh set of attribute vectors: per row,
/// the proportional share of each node is x_i / total, losing node j
/// changes it to x_i / (total - x_j); each pair scores the smaller of the
/// two absolute changes, and the final matrix keeps the largest score any
/// row produced. Written as plain loops on purpose so it can cross-check
/// the measure-based construction.
pub fn build_benchmark_f(
    f_sizes: &[usize],
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    rng: &mut impl Rng,
) -> WeightedGraph {
    let vectors = generate_vectors(f_sizes, a, b, c, d, rng);
    let n: usize = f_sizes.iter().sum();
    let mut f = vec![0.0; n * n];
    for row in &vectors {
        let total: f64 = row.iter().sum();
        for i in 0..n {
            for j in (i + 1)..n {
                let change_i = (row[i] / total - row[i] / (total - row[j])).abs();
                let change_j = (row[j] / total - row[j] / (total - row[i])).abs();
                let score = change_i.min(change_j);
                if score > f[i * n + j] {
                    f[i * n + j] = score;
                    f[j * n + i] = score;
                }
            }
        }
    }
    WeightedGraph::from_flat_unchecked(n, f)
}

/// Everything needed to regenerate one benchmark instance. `model`,
/// `network`, and `case` record the preset ids for provenance (0 marks a
/// hand-built spec); the numeric fields are what generation actually uses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkSpec {
    pub model: u8,
    pub network: u8,
    pub case: u8,
    pub n: usize,
    pub adjacency_sizes: Vec<usize>,
    pub attribute_sizes: Vec<usize>,
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub seed: u64,
}

impl BenchmarkSpec {
    /// Assembles a preset spec: block sizes from the model, (alpha, beta)
    /// from the network column, (a, b, c, d) from the case column.
    pub fn from_ids(model: u8, network: u8, case: u8, seed: u64) -> Result<Self> {
        let preset = model_preset(model)?;
        let (alpha, beta) = network_params(network)?;
        let (a, b, c, d) = case_params(case)?;
        let n = preset.adjacency_sizes.iter().sum();
        let spec = Self {
            model,
            network,
            case,
            n,
            adjacency_sizes: preset.adjacency_sizes,
            attribute_sizes: preset.attribute_sizes,
            alpha,
            beta,
            a,
            b,
            c,
            d,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Block sizes must cover n exactly, probabilities must be in [0,1],
    /// and the sampler supports [0,b] and [c,1] must be disjoint (b < c)
    /// so low and high values never mix.
    pub fn validate(&self) -> Result<()> {
        let sum_a: usize = self.adjacency_sizes.iter().sum();
        let sum_f: usize = self.attribute_sizes.iter().sum();
        if self.adjacency_sizes.is_empty() || self.adjacency_sizes.contains(&0) || sum_a != self.n
        {
            return Err(Error::Config(format!(
                "adjacency sizes {:?} must be positive and sum to {}",
                self.adjacency_sizes, self.n
            )));
        }
        if self.attribute_sizes.is_empty() || self.attribute_sizes.contains(&0) || sum_f != self.n
        {
            return Err(Error::Config(format!(
                "attribute sizes {:?} must be positive and sum to {}",
                self.attribute_sizes, self.n
            )));
        }
        for (name, p) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name}={p} outside [0,1]")));
            }
        }
        if !(0.0 <= self.a && self.a < self.b && self.b <= 1.0) {
            return Err(Error::Config(format!(
                "low shape needs 0 <= a < b <= 1, got a={}, b={}",
                self.a, self.b
            )));
        }
        if !(0.0 <= self.c && self.c < self.d && self.d <= 1.0) {
            return Err(Error::Config(format!(
                "high shape needs 0 <= c < d <= 1, got c={}, d={}",
                self.c, self.d
            )));
        }
        if self.b >= self.c {
            return Err(Error::Config(format!(
                "low support [0,{}] overlaps high support [{},1]",
                self.b, self.c
            )));
        }
        Ok(())
    }
}

/// A generated benchmark: binary adjacency, defuzzified attribute rows,
/// and the two planted partitions they were built from.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkInstance {
    pub adjacency: WeightedGraph,
    pub vectors: Vec<Vec<f64>>,
    pub truth_adjacency: Partition,
    pub truth_attributes: Partition,
}

pub fn generate_instance(spec: &BenchmarkSpec) -> Result<BenchmarkInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let adjacency = generate_adjacency(&spec.adjacency_sizes, spec.alpha, spec.beta, &mut rng);
    let vectors = generate_vectors(
        &spec.attribute_sizes,
        spec.a,
        spec.b,
        spec.c,
        spec.d,
        &mut rng,
    );
    Ok(BenchmarkInstance {
        adjacency,
        vectors,
        truth_adjacency: blocks_partition(&spec.adjacency_sizes),
        truth_attributes: blocks_partition(&spec.attribute_sizes),
    })
}

/// Writes an instance directory: `adjacency.edges`, `vectors.csv`,
/// `truth_A.part`, `truth_F.part`, and `spec.json`.
pub fn write_bundle(dir: &Path, spec: &BenchmarkSpec, instance: &BenchmarkInstance) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    io::write_edge_list(&dir.join("adjacency.edges"), &instance.adjacency)?;
    io::write_vectors_csv(&dir.join("vectors.csv"), &instance.vectors)?;
    io::write_partition(&dir.join("truth_A.part"), &instance.truth_adjacency)?;
    io::write_partition(&dir.join("truth_F.part"), &instance.truth_attributes)?;
    let spec_path = dir.join("spec.json");
    let json = serde_json::to_string_pretty(spec).map_err(|e| Error::Format {
        path: spec_path.display().to_string(),
        msg: e.to_string(),
    })?;
    fs::write(&spec_path, json + "\n").map_err(|e| Error::Io {
        path: spec_path.display().to_string(),
        source: e,
    })
}

pub fn read_bundle(dir: &Path) -> Result<(BenchmarkSpec, BenchmarkInstance)> {
    let spec_path = dir.join("spec.json");
    let json = fs::read_to_string(&spec_path).map_err(|e| Error::Io {
        path: spec_path.display().to_string(),
        source: e,
    })?;
    let spec: BenchmarkSpec = serde_json::from_str(&json).map_err(|e| Error::Format {
        path: spec_path.display().to_string(),
        msg: e.to_string(),
    })?;
    spec.validate()?;
    let instance = BenchmarkInstance {
        adjacency: io::read_edge_list(&dir.join("adjacency.edges"))?,
        vectors: io::read_vectors_csv(&dir.join("vectors.csv"))?,
        truth_adjacency: io::read_partition(&dir.join("truth_A.part"))?,
        truth_attributes: io::read_partition(&dir.join("truth_F.part"))?,
    };
    Ok((spec, instance))
}
