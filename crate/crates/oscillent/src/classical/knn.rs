//! Nonparametric entropy estimation from phase-space samples with the
//! Kozachenko-Leonenko nearest-neighbor estimator, backed by a kd-tree.

use crate::classical::entropy::{EntropyMetadata, EntropyMethod, EntropyResult};
use crate::classical::sampling::SampleSet;
use crate::error::{OscillentError, Result};
use crate::quad::digamma;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

const LEAF: usize = 16;
const MIN_SAMPLES: usize = 10_000;
const MAX_K: usize = 32;
const BOOTSTRAP_ROUNDS: usize = 25;

struct Node {
    lo: u32,
    hi: u32,
    split: f64,
    axis: u8,
    left: i32,
    right: i32,
}

struct KdTree {
    nodes: Vec<Node>,
    pts: Vec<[f64; 2]>,
}

impl KdTree {
    fn build(pts: Vec<[f64; 2]>) -> Self {
        let n = pts.len();
        let mut builder = Builder {
            pts,
            nodes: Vec::with_capacity(2 * (n / LEAF + 1)),
        };
        builder.build_range(0, n, 0);
        KdTree {
            nodes: builder.nodes,
            pts: builder.pts,
        }
    }

    /// Squared distances of the `k` nearest points to `q`, ascending.
    /// The query point itself, if present in the tree, counts as one of
    /// the neighbors.
    fn knn_sq(&self, q: [f64; 2], k: usize, best: &mut Vec<f64>) {
        best.clear();
        self.descend(0, q, k, best);
    }

    fn descend(&self, node: usize, q: [f64; 2], k: usize, best: &mut Vec<f64>) {
        let nd = &self.nodes[node];
        if nd.left < 0 {
            for p in &self.pts[nd.lo as usize..nd.hi as usize] {
                let dx = p[0] - q[0];
                let dy = p[1] - q[1];
                let d = dx * dx + dy * dy;
                if best.len() < k {
                    let pos = best.partition_point(|&b| b < d);
                    best.insert(pos, d);
                } else if d < best[k - 1] {
                    best.pop();
                    let pos = best.partition_point(|&b| b < d);
                    best.insert(pos, d);
                }
            }
            return;
        }
        let diff = q[nd.axis as usize] - nd.split;
        let (near, far) = if diff < 0.0 {
            (nd.left as usize, nd.right as usize)
        } else {
            (nd.right as usize, nd.left as usize)
        };
        self.descend(near, q, k, best);
        if best.len() < k || diff * diff < best[k - 1] {
            self.descend(far, q, k, best);
        }
    }
}

struct Builder {
    pts: Vec<[f64; 2]>,
    nodes: Vec<Node>,
}

impl Builder {
    fn build_range(&mut self, lo: usize, hi: usize, depth: usize) -> i32 {
        let id = self.nodes.len();
        if hi - lo <= LEAF {
            self.nodes.push(Node {
                lo: lo as u32,
                hi: hi as u32,
                split: 0.0,
                axis: 0,
                left: -1,
                right: -1,
            });
            return id as i32;
        }
        let axis = depth & 1;
        let mid = (lo + hi) / 2;
        self.pts[lo..hi].select_nth_unstable_by(mid - lo, |a, b| {
            a[axis].partial_cmp(&b[axis]).expect("finite coordinates")
        });
        let split = self.pts[mid][axis];
        self.nodes.push(Node {
            lo: lo as u32,
            hi: hi as u32,
            split,
            axis: axis as u8,
            left: 0,
            right: 0,
        });
        let left = self.build_range(lo, mid, depth + 1);
        let right = self.build_range(mid, hi, depth + 1);
        self.nodes[id].left = left;
        self.nodes[id].right = right;
        id as i32
    }
}

/// Kozachenko-Leonenko entropy of a planar sample set, expressed in units
/// of the phase cell `delta_cell`:
///
/// ```text
/// S = psi(n) - psi(k) + ln(pi) + (2/n) sum_i ln r_{i,k} - ln(delta_cell)
/// ```
///
/// where `r_{i,k}` is the distance from sample `i` to its `k`-th nearest
/// other sample. The uncertainty is a bootstrap standard error over the
/// per-sample log-distance contributions.
pub fn entropy_knn(samples: &SampleSet, delta_cell: f64, k: usize) -> Result<EntropyResult> {
    let n = samples.len();
    if n < MIN_SAMPLES {
        return Err(OscillentError::TooFewSamples {
            got: n,
            min: MIN_SAMPLES,
        });
    }
    if k < 1 || k > MAX_K {
        return Err(OscillentError::InvalidParams(format!(
            "neighbor order k must be in 1..={MAX_K}, got {k}"
        )));
    }
    if !(delta_cell > 0.0) {
        return Err(OscillentError::InvalidParams(format!(
            "delta_cell must be positive, got {delta_cell}"
        )));
    }

    let pts: Vec<[f64; 2]> = (0..n).map(|i| [samples.x[i], samples.px[i]]).collect();
    let tree = KdTree::build(pts);

    // k+1 neighbors per query: the nearest is the query point itself at
    // distance zero, so the (k+1)-th is the k-th genuine neighbor.
    let r_sq: Vec<f64> = tree
        .pts
        .par_chunks(4096)
        .map(|chunk| {
            let mut best = Vec::with_capacity(k + 2);
            let mut out = Vec::with_capacity(chunk.len());
            for &q in chunk {
                tree.knn_sq(q, k + 1, &mut best);
                out.push(best[k]);
            }
            out
        })
        .flatten()
        .collect();

    if r_sq.iter().any(|&d| d <= 0.0) {
        return Err(OscillentError::DegenerateSamples(format!(
            "duplicate points: a {k}-th neighbor sits at distance zero"
        )));
    }
    let log_r_sq: Vec<f64> = r_sq.iter().map(|d| d.ln()).collect();
    let mean_log_r_sq = log_r_sq.iter().sum::<f64>() / n as f64;
    let h = digamma(n as f64) - digamma(k as f64) + PI.ln() + mean_log_r_sq;
    let value = h - delta_cell.ln();

    let se = bootstrap_se(&log_r_sq, samples.seed.unwrap_or(0));

    Ok(EntropyResult {
        value,
        method: EntropyMethod::TorusMc,
        uncertainty: Some(se),
        metadata: EntropyMetadata {
            samples: Some(n as u64),
            k_neighbors: Some(k),
            seed: samples.seed,
            ..Default::default()
        },
    })
}

fn bootstrap_se(log_r_sq: &[f64], seed: u64) -> f64 {
    let n = log_r_sq.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x626f_6f74);
    let mut means = Vec::with_capacity(BOOTSTRAP_ROUNDS);
    for _ in 0..BOOTSTRAP_ROUNDS {
        let mut acc = 0.0;
        for _ in 0..n {
            acc += log_r_sq[rng.gen_range(0..n)];
        }
        means.push(acc / n as f64);
    }
    let mean = means.iter().sum::<f64>() / BOOTSTRAP_ROUNDS as f64;
    let var = means
        .iter()
        .map(|m| (m - mean) * (m - mean))
        .sum::<f64>()
        / (BOOTSTRAP_ROUNDS - 1) as f64;
    var.sqrt()
}
