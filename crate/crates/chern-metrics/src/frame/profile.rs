//! Metric profile pairs (f, h) on an interval [0, l].
//!
//! The ansatz metric is h(t)^2 (e1 (x) e1 + e2 (x) e2) + f(t)^2 e3 (x) e3 + dt^2
//! with f, h positive on the open interval. A [`ProfilePair`] owns an
//! evaluation backend so that analytic test profiles keep exact derivatives
//! while file-loaded profiles fall back to stencil differentiation of their
//! samples.

use crate::error::{Error, Result};
use crate::numerics::{Grid, SampledFunction};
use std::sync::Arc;

/// Evaluation backend for a profile pair: values and t-derivatives of f and h.
///
/// `k` ranges over 0..=3; implementations must be pure.
pub trait ProfileEval: Send + Sync {
    fn f_deriv(&self, t: f64, k: usize) -> f64;
    fn h_deriv(&self, t: f64, k: usize) -> f64;
}

/// The ansatz metric: profile functions f, h on [0, l], plus the Hirzebruch
/// degree m when the profile satisfies the closing boundary conditions
/// f'(0) = -f'(l) = m, h'(0) = h'(l) = 0.
#[derive(Clone)]
pub struct ProfilePair {
    l: f64,
    degree: Option<u32>,
    eval: Arc<dyn ProfileEval>,
}

impl std::fmt::Debug for ProfilePair {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.debug_struct("ProfilePair")
            .field("l", &self.l)
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl ProfilePair {
    pub fn new(l: f64, degree: Option<u32>, eval: Arc<dyn ProfileEval>) -> Self {
        assert!(l > 0.0 && l.is_finite(), "interval length must be positive");
        Self { l, degree, eval }
    }

    /// Builds a profile from samples of f and h on a shared uniform grid
    /// over [0, l]; derivatives come from stencil differentiation.
    ///
    /// Both functions must be strictly positive away from the endpoints
    /// (f may vanish at the endpoints themselves, as the boundary
    /// conditions require).
    pub fn from_samples(f: SampledFunction, h: SampledFunction, degree: Option<u32>) -> Result<Self> {
        if f.grid().len() != h.grid().len()
            || f.grid().first() != h.grid().first()
            || f.grid().last() != h.grid().last()
        {
            return Err(Error::BadSamples);
        }
        let l = f.grid().last() - f.grid().first();
        let n = f.grid().len();
        for i in 1..n - 1 {
            if f.values()[i] <= 0.0 || h.values()[i] <= 0.0 {
                return Err(Error::BadSamples);
            }
        }
        Ok(Self::new(l, degree, Arc::new(SampledProfile { f, h })))
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn f(&self, t: f64) -> f64 {
        self.eval.f_deriv(t, 0)
    }

    pub fn h(&self, t: f64) -> f64 {
        self.eval.h_deriv(t, 0)
    }

    /// k-th t-derivative of f (k = 0 returns the value).
    pub fn f_deriv(&self, t: f64, k: usize) -> f64 {
        self.eval.f_deriv(t, k)
    }

    pub fn h_deriv(&self, t: f64, k: usize) -> f64 {
        self.eval.h_deriv(t, k)
    }

    /// Checks that t lies in the open interval (0, l).
    pub fn check_interior(&self, t: f64) -> Result<()> {
        if t > 0.0 && t < self.l {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, l: self.l })
        }
    }

    /// Samples f and h on a uniform n-node grid over [0, l].
    pub fn sample(&self, n: usize) -> Result<(SampledFunction, SampledFunction)> {
        let grid = Grid::uniform(0.0, self.l, n)?;
        let f = SampledFunction::from_fn(grid.clone(), |t| self.f(t))?;
        let h = SampledFunction::from_fn(grid, |t| self.h(t))?;
        Ok((f, h))
    }
}

/// Backend for profiles known only through samples.
pub struct SampledProfile {
    f: SampledFunction,
    h: SampledFunction,
}

impl ProfileEval for SampledProfile {
    fn f_deriv(&self, t: f64, k: usize) -> f64 {
        self.f.eval_deriv(t, k)
    }

    fn h_deriv(&self, t: f64, k: usize) -> f64 {
        self.h.eval_deriv(t, k)
    }
}

/// Backend for profiles with closed-form f and h; each closure returns the
/// k-th derivative at t.
pub struct ClosureProfile<F, H>
where
    F: Fn(f64, usize) -> f64 + Send + Sync,
    H: Fn(f64, usize) -> f64 + Send + Sync,
{
    pub f: F,
    pub h: H,
}

impl<F, H> ProfileEval for ClosureProfile<F, H>
where
    F: Fn(f64, usize) -> f64 + Send + Sync,
    H: Fn(f64, usize) -> f64 + Send + Sync,
{
    fn f_deriv(&self, t: f64, k: usize) -> f64 {
        (self.f)(t, k)
    }

    fn h_deriv(&self, t: f64, k: usize) -> f64 {
        (self.h)(t, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_profile_derivatives() {
        let grid = Grid::uniform(0.0, 1.0, 128).unwrap();
        let f = SampledFunction::from_fn(grid.clone(), |t| 1.0 + t * (1.0 - t)).unwrap();
        let h = SampledFunction::from_fn(grid, |t| 2.0 + t).unwrap();
        let p = ProfilePair::from_samples(f, h, None).unwrap();
        assert!((p.f_deriv(0.3, 1) - (1.0 - 0.6)).abs() < 1e-10);
        assert!((p.h_deriv(0.7, 1) - 1.0).abs() < 1e-10);
        assert!((p.f_deriv(0.5, 2) + 2.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_interior_nonpositive_samples() {
        let grid = Grid::uniform(0.0, 1.0, 16).unwrap();
        let f = SampledFunction::from_fn(grid.clone(), |t| t - 0.5).unwrap();
        let h = SampledFunction::from_fn(grid, |_| 1.0).unwrap();
        assert!(ProfilePair::from_samples(f, h, None).is_err());
    }

    #[test]
    fn interior_check() {
        let p = ProfilePair::new(
            2.0,
            None,
            Arc::new(ClosureProfile {
                f: |_, k| if k == 0 { 1.0 } else { 0.0 },
                h: |_, k| if k == 0 { 1.0 } else { 0.0 },
            }),
        );
        assert!(p.check_interior(1.0).is_ok());
        assert!(p.check_interior(0.0).is_err());
        assert!(p.check_interior(2.5).is_err());
    }
}
