//! Independent oracles shared by the integration suites: numeric
//! integration for centroids, permutation enumeration for Shapley values,
//! exhaustive partition enumeration, a Kolmogorov-Smirnov statistic, and a
//! direct pairwise modularity sum.
#![allow(dead_code)]

use fuzzycom::graph::{Partition, WeightedGraph};
use fuzzycom::measure::SugenoLambdaMeasure;
use fuzzycom::TrapezoidalFuzzySet;
use rand::Rng;

/// Composite Simpson rule. Exact for quadratics, which covers x times a
/// piecewise-linear membership on each segment.
fn simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, intervals: usize) -> f64 {
    let n = intervals.max(2) + intervals % 2;
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for k in 1..n {
        let x = lo + h * k as f64;
        s += f(x) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Centroid by numeric integration of the membership function, one Simpson
/// pass per linear segment.
pub fn numeric_centroid(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let fs = TrapezoidalFuzzySet::new(a, b, c, d).unwrap();
    let mu = move |x: f64| fs.membership(x);
    let xmu = move |x: f64| x * fs.membership(x);
    let mut num = 0.0;
    let mut den = 0.0;
    for (lo, hi) in [(a, b), (b, c), (c, d)] {
        if hi > lo {
            num += simpson(&xmu, lo, hi, 64);
            den += simpson(&mu, lo, hi, 64);
        }
    }
    num / den
}

fn permute(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if rest.is_empty() {
        visit(prefix);
        return;
    }
    for k in 0..rest.len() {
        let x = rest.swap_remove(k);
        prefix.push(x);
        permute(prefix, rest, visit);
        prefix.pop();
        rest.push(x);
        let last = rest.len() - 1;
        rest.swap(k, last);
    }
}

/// Shapley values by full permutation enumeration: average the marginal
/// contribution of each node over every arrival order, with the coalition
/// value tracked incrementally along each permutation.
pub fn shapley_by_permutations(m: &SugenoLambdaMeasure) -> Vec<f64> {
    let n = m.n();
    let lambda = m.lambda();
    let densities = m.densities().to_vec();
    let mut acc = vec![0.0; n];
    let mut count = 0u64;
    let mut prefix = Vec::with_capacity(n);
    let mut rest: Vec<usize> = (0..n).collect();
    permute(&mut prefix, &mut rest, &mut |perm| {
        count += 1;
        let mut prod = 1.0;
        let mut sum = 0.0;
        let mut prev = 0.0;
        for &i in perm {
            let value = if lambda == 0.0 {
                sum += densities[i];
                sum
            } else {
                prod *= 1.0 + lambda * densities[i];
                (prod - 1.0) / lambda
            };
            acc[i] += value - prev;
            prev = value;
        }
    });
    acc.iter().map(|a| a / count as f64).collect()
}

/// Every partition of 0..n-1, one restricted-growth assignment per set
/// partition. Bell(8) = 4140.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=used {
            cur[i] = c;
            rec(i + 1, used.max(c + 1), cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, 0, &mut vec![0; n], &mut out);
    out
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against an analytic
/// CDF. Sorts the sample in place.
pub fn ks_statistic(draws: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = draws.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in draws.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((f - i as f64 / n).abs());
    }
    d
}

/// Modularity as the direct double sum over ordered same-community pairs.
pub fn naive_modularity(g: &WeightedGraph, p: &Partition) -> f64 {
    let t = g.total_weight();
    let mut q = 0.0;
    for i in 0..g.n() {
        for j in 0..g.n() {
            if p.community_of(i) == p.community_of(j) {
                q += g.weight(i, j) / t - g.degree(i) * g.degree(j) / (t * t);
            }
        }
    }
    q
}

/// Random symmetric nonnegative graph with the given edge density, a
/// sprinkle of self-loops, and at least one edge.
pub fn random_graph(n: usize, density: f64, rng: &mut impl Rng) -> WeightedGraph {
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let p = if i == j { density / 4.0 } else { density };
            if rng.gen::<f64>() < p {
                edges.push((i, j, rng.gen_range(0.25..4.0)));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, n - 1, 1.0));
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

pub fn random_partition(n: usize, max_communities: usize, rng: &mut impl Rng) -> Partition {
    let k = rng.gen_range(1..=max_communities.min(n));
    let assignment: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_assignment(&assignment)
}
