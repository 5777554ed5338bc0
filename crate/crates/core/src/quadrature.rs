//! Equispaced (trapezoidal) quadrature grids on the torus `[0, 2π)ⁿ`.
//!
//! Node `j` on each axis sits at `θ_j = 2πj / nodes`. Node values may be
//! computed in parallel but every reduction runs in flat index order, so
//! results are bit-reproducible regardless of thread count.

use rayon::prelude::*;
use std::f64::consts::PI;

/// Flat node counts above this are evaluated on the rayon pool.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone)]
pub struct TorusGrid {
    dim: usize,
    nodes: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TorusGrid {
    pub fn new(dim: usize, nodes: usize) -> Self {
        let nodes = nodes.max(1);
        let (cos, sin) = (0..nodes)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / nodes as f64;
                (t.cos(), t.sin())
            })
            .unzip();
        TorusGrid { dim, nodes, cos, sin }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * (j % self.nodes) as f64 / self.nodes as f64
    }

    /// `(cos, sin)` of `2πk/nodes` for any integer `k`.
    pub fn unit(&self, k: u64) -> (f64, f64) {
        let j = (k % self.nodes as u64) as usize;
        (self.cos[j], self.sin[j])
    }

    /// Per-axis node indices of flat node `flat`, first axis slowest.
    pub fn multi_index(&self, mut flat: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = flat % self.nodes;
            flat /= self.nodes;
        }
    }

    /// Values at all nodes, in flat index order.
    pub fn map<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(&[usize]) -> f64 + Sync,
    {
        let eval = |flat: usize| {
            let mut idx = vec![0usize; self.dim];
            self.multi_index(flat, &mut idx);
            f(&idx)
        };
        if self.len() >= PARALLEL_THRESHOLD {
            (0..self.len()).into_par_iter().map(eval).collect()
        } else {
            (0..self.len()).map(eval).collect()
        }
    }
}

/// Sum of the finite values and the count of `-inf` values, in index order.
pub fn finite_sum(values: &[f64]) -> (f64, usize, usize) {
    let mut sum = 0.0;
    let mut used = 0;
    let mut skipped = 0;
    for &v in values {
        if v == f64::NEG_INFINITY {
            skipped += 1;
        } else {
            sum += v;
            used += 1;
        }
    }
    (sum, used, skipped)
}

pub fn max_value(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Trapezoidal mean of a periodic function over `[0, 2π)`.
pub fn circle_mean<F: Fn(f64) -> f64>(nodes: usize, f: F) -> f64 {
    let n = nodes.max(1);
    let mut sum = 0.0;
    for j in 0..n {
        sum += f(2.0 * PI * j as f64 / n as f64);
    }
    sum / n as f64
}
