//! Partition-comparison scoring: Shannon entropy, mutual information, and
//! normalized mutual information.

use crate::error::{Error, Result};
use crate::graph::Partition;

/// Node co-occurrence counts between the communities of two partitions
/// over the same node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<Vec<usize>>,
    row_marginals: Vec<usize>,
    col_marginals: Vec<usize>,
    n: usize,
}

impl ContingencyTable {
    pub fn new(x: &Partition, y: &Partition) -> Result<Self> {
        let n = x.n_nodes();
        if n != y.n_nodes() || n == 0 {
            return Err(Error::NodeSetMismatch(n, y.n_nodes()));
        }
        let kx = x.num_communities();
        let ky = y.num_communities();
        let mut counts = vec![vec![0usize; ky]; kx];
        for node in 0..n {
            counts[x.community_of(node)][y.community_of(node)] += 1;
        }
        let row_marginals: Vec<usize> = counts.iter().map(|r| r.iter().sum()).collect();
        let mut col_marginals = vec![0usize; ky];
        for row in &counts {
            for (j, &c) in row.iter().enumerate() {
                col_marginals[j] += c;
            }
        }
        Ok(Self {
            counts,
            row_marginals,
            col_marginals,
            n,
        })
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn row_marginals(&self) -> &[usize] {
        &self.row_marginals
    }

    pub fn col_marginals(&self) -> &[usize] {
        &self.col_marginals
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True when the two partitions are identical up to community
    /// relabeling: every nonzero cell spans its whole row and column.
    pub fn is_relabeling(&self) -> bool {
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c > 0 && (c != self.row_marginals[i] || c != self.col_marginals[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Mutual information in nats, with `0 log 0 := 0`. The log argument is
    /// formed as the integer ratio `c n / (n_x n_y)` so independent cells
    /// whose ratio is exactly 1 contribute exactly 0.
    pub fn mutual_information(&self) -> f64 {
        let n = self.n as f64;
        let mut mi = 0.0;
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let joint = c as f64;
                let ratio =
                    joint * n / (self.row_marginals[i] as f64 * self.col_marginals[j] as f64);
                mi += joint / n * ratio.ln();
            }
        }
        mi
    }
}

/// Shannon entropy of the community-size distribution, in nats.
pub fn entropy(p: &Partition) -> f64 {
    let n = p.n_nodes() as f64;
    p.communities()
        .iter()
        .map(|c| {
            let frac = c.len() as f64 / n;
            -frac * frac.ln()
        })
        .sum()
}

/// Normalized mutual information `2 MI / (H(X) + H(Y))`, natural log,
/// clamped to `[0, 1]`.
///
/// Conventions: partitions identical up to relabeling score exactly 1
/// (this covers the degenerate case of two single-community partitions,
/// where the formula would be 0/0); when exactly one side is a single
/// community the formula itself yields 0 and is kept.
///
/// The computation is orientation-canonical: the pair is ordered by the
/// normalized assignment vectors before building the table, so
/// `nmi(x, y)` and `nmi(y, x)` run the identical float computation and
/// agree bit-for-bit.
pub fn nmi(x: &Partition, y: &Partition) -> Result<f64> {
    let (first, second) = if x.assignment() <= y.assignment() {
        (x, y)
    } else {
        (y, x)
    };
    let table = ContingencyTable::new(first, second)?;
    if table.is_relabeling() {
        return Ok(1.0);
    }
    let hx = entropy(first);
    let hy = entropy(second);
    let denom = hx + hy;
    if denom == 0.0 {
        // Unreachable: both entropies zero means both partitions are single
        // communities, which the relabeling check already returned as 1.
        return Ok(1.0);
    }
    Ok((2.0 * table.mutual_information() / denom).clamp(0.0, 1.0))
}
