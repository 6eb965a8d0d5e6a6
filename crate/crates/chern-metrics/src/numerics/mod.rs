//! Shared numerical kernels.
//!
//! Everything here is a pure function of its inputs: bracketed root finding,
//! small dense linear solves, double-exponential quadrature tolerant of
//! inverse-square-root endpoint singularities, monotone inversion, and
//! high-order grid differentiation.

mod interp;
mod linear;
mod quadrature;
mod root;

pub use interp::{differentiate, fornberg_weights, interpolate_at, invert_monotone};
pub use linear::solve_linear;
pub use quadrature::{integrate_endpoint_singular, integrate_endpoint_singular_offsets};
pub use root::find_root_bracketed;

use crate::error::{Error, Result};

/// Node placement of a [`Grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Uniform,
    /// Endpoint-clustered nodes (Chebyshev-like); only the monotone node
    /// order matters to the kernels.
    Clustered,
}

/// Strictly increasing abscissae.
#[derive(Debug, Clone)]
pub struct Grid {
    nodes: Vec<f64>,
    kind: GridKind,
}

impl Grid {
    pub const MIN_NODES: usize = 8;

    /// Builds a grid, checking that nodes are finite, strictly increasing,
    /// and at least [`Grid::MIN_NODES`] long.
    pub fn new(nodes: Vec<f64>, kind: GridKind) -> Result<Self> {
        if nodes.len() < Self::MIN_NODES {
            return Err(Error::GridTooSmall {
                needed: Self::MIN_NODES,
                got: nodes.len(),
            });
        }
        for (i, w) in nodes.windows(2).enumerate() {
            if !w[0].is_finite() || !w[1].is_finite() || w[1] <= w[0] {
                return Err(Error::BadGrid { index: i });
            }
        }
        Ok(Self { nodes, kind })
    }

    /// `n` equally spaced nodes on `[a, b]`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        let step = (b - a) / (n as f64 - 1.0);
        let mut nodes: Vec<f64> = (0..n).map(|i| a + step * i as f64).collect();
        // pin the endpoints exactly
        if let Some(last) = nodes.last_mut() {
            *last = b;
        }
        Self::new(nodes, GridKind::Uniform)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Index of the grid node nearest to `x` (by binary search).
    pub fn nearest(&self, x: f64) -> usize {
        match self
            .nodes
            .binary_search_by(|probe| probe.partial_cmp(&x).unwrap())
        {
            Ok(i) => i,
            Err(i) => {
                if i == 0 {
                    0
                } else if i >= self.nodes.len() {
                    self.nodes.len() - 1
                } else if x - self.nodes[i - 1] <= self.nodes[i] - x {
                    i - 1
                } else {
                    i
                }
            }
        }
    }
}

/// Real-valued function sampled on a [`Grid`].
#[derive(Debug, Clone)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadSamples);
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every grid node.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Interpolated value at `x` (local polynomial through the nearest nodes).
    pub fn eval(&self, x: f64) -> f64 {
        interpolate_at(self.grid.nodes(), &self.values, x, 0)
    }

    /// Interpolated `order`-th derivative at `x`.
    pub fn eval_deriv(&self, x: f64, order: usize) -> f64 {
        interpolate_at(self.grid.nodes(), &self.values, x, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_hits_endpoints() {
        let g = Grid::uniform(0.0, 1.0, 9).unwrap();
        assert_eq!(g.first(), 0.0);
        assert_eq!(g.last(), 1.0);
        assert_eq!(g.len(), 9);
    }

    #[test]
    fn rejects_short_or_unsorted_grids() {
        assert!(Grid::new(vec![0.0, 1.0], GridKind::Uniform).is_err());
        let mut nodes: Vec<f64> = (0..10).map(f64::from).collect();
        nodes.swap(3, 4);
        assert!(Grid::new(nodes, GridKind::Uniform).is_err());
    }

    #[test]
    fn rejects_non_finite_samples() {
        let g = Grid::uniform(0.0, 1.0, 8).unwrap();
        let mut v = vec![1.0; 8];
        v[3] = f64::NAN;
        assert!(SampledFunction::new(g, v).is_err());
    }

    #[test]
    fn nearest_node_lookup() {
        let g = Grid::uniform(0.0, 1.0, 11).unwrap();
        assert_eq!(g.nearest(-0.5), 0);
        assert_eq!(g.nearest(0.26), 3);
        assert_eq!(g.nearest(2.0), 10);
    }
}
