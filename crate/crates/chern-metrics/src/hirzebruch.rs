//! Closed-form metric constructions on the degree-m Hirzebruch surfaces.
//!
//! Each construction reduces the constancy of a curvature quantity to a
//! linear ODE for y(phi), where phi' = -sqrt(y) (or +sqrt(y)) turns the
//! profile ODE into a first-order problem:
//!
//! * `chern`: f = -(1/2) phi' phi, h = phi; constant Chern scalar curvature;
//!   y = (-lambda phi^6 + 3 c1 phi^5 - 6 phi^4 + 3 c2) / (3 phi^4);
//! * `third`: f = (1/4) phi', h = sqrt(phi); constant third scalar curvature;
//!   y = (-8 lambda phi^(5/2) + 15 c1 phi + 160 phi^(3/2) + 15 c2) / (15 sqrt(phi));
//! * `critical`: f = -(7/5) phi' phi, h = phi; constant s^C + delta theta;
//!   y = -(5/84) lambda phi^2 + c1 phi^(-4/5) + c2 phi^(-10) + 1.
//!
//! Boundary conditions pin y and y' at the endpoint values phi0 = phi(0) and
//! phi1 = phi(l); the profile itself comes from inverting
//! t(phi) = int dphi / (-+sqrt(y)), a quadrature with inverse-square-root
//! endpoint singularities.

use crate::error::{Error, Result};
use crate::frame::{self, ProfileEval, ProfilePair};
use crate::numerics::{
    find_root_bracketed, integrate_endpoint_singular_offsets, interpolate_at, solve_linear, Grid,
};
use std::sync::Arc;

/// Which curvature quantity the construction holds constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// Constant Chern scalar curvature s^C.
    Chern,
    /// Constant third scalar curvature s.
    Third,
    /// Constant Gauduchon combination s^C + delta theta.
    Critical,
}

impl SolutionKind {
    pub fn name(self) -> &'static str {
        match self {
            SolutionKind::Chern => "chern",
            SolutionKind::Third => "third",
            SolutionKind::Critical => "critical",
        }
    }

    /// Sign of phi' = direction * sqrt(y): phi decreases except for the
    /// third-scalar family.
    pub fn direction(self) -> f64 {
        match self {
            SolutionKind::Third => 1.0,
            _ => -1.0,
        }
    }
}

/// Parameters of one closed-form y(phi) family.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormSolution {
    pub kind: SolutionKind,
    pub m: u32,
    /// phi(0).
    pub phi0: f64,
    /// phi(l).
    pub phi1: f64,
    /// The constant value of the target curvature quantity.
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ClosedFormSolution {
    /// (coefficient, exponent) terms of y as a sum of powers of phi.
    fn power_terms(&self) -> [(f64, f64); 4] {
        match self.kind {
            SolutionKind::Chern => [
                (-self.lambda / 3.0, 2.0),
                (self.c1, 1.0),
                (-2.0, 0.0),
                (self.c2, -4.0),
            ],
            SolutionKind::Third => [
                (-8.0 * self.lambda / 15.0, 2.0),
                (self.c1, 0.5),
                (32.0 / 3.0, 1.0),
                (self.c2, -0.5),
            ],
            SolutionKind::Critical => [
                (-5.0 * self.lambda / 84.0, 2.0),
                (self.c1, -0.8),
                (self.c2, -10.0),
                (1.0, 0.0),
            ],
        }
    }

    /// y(phi). Fails for phi <= 0.
    pub fn y(&self, phi: f64) -> Result<f64> {
        if phi <= 0.0 {
            return Err(Error::NonPositivePhi { phi });
        }
        Ok(self.y_deriv(phi, 0))
    }

    /// k-th derivative of y with respect to phi (k = 0 is the value).
    pub fn y_deriv(&self, phi: f64, k: usize) -> f64 {
        self.power_terms()
            .iter()
            .map(|&(c, p)| {
                let fall: f64 = (0..k).map(|i| p - i as f64).product();
                c * fall * phi.powf(p - k as f64)
            })
            .sum()
    }

    /// Interval of phi values swept by the profile, as (low, high).
    pub fn phi_interval(&self) -> (f64, f64) {
        (self.phi0.min(self.phi1), self.phi0.max(self.phi1))
    }

    /// y evaluated through an endpoint Taylor expansion when phi sits within
    /// `SWITCH` of either endpoint, avoiding the catastrophic cancellation of
    /// the direct power sum where y crosses zero. `d_lo` and `d_hi` are the
    /// distances to the interval endpoints.
    pub fn y_stable(&self, phi: f64, d_lo: f64, d_hi: f64) -> f64 {
        const SWITCH: f64 = 1e-3;
        let (lo, hi) = self.phi_interval();
        let span = hi - lo;
        let taylor = |at: f64, delta: f64| -> f64 {
            // y(at) = 0 is a boundary condition; start the series at k = 1
            let mut acc = 0.0;
            let mut fact = 1.0;
            for k in 1..=5 {
                fact *= k as f64;
                acc += self.y_deriv(at, k) * delta.powi(k as i32) / fact;
            }
            acc
        };
        if d_lo < d_hi && d_lo < SWITCH * span {
            taylor(lo, d_lo)
        } else if d_hi <= d_lo && d_hi < SWITCH * span {
            taylor(hi, -d_hi)
        } else {
            self.y_deriv(phi, 0)
        }
    }
}

/// Smallest root x > 1 of the degree ratio polynomial
/// P(x) = (m+2)x^4 - (2m-1)x^3 - 3m x^2 - (2m+1)x + (m-2),
/// which exists for every m >= 1 since P(1) = -5m < 0 and the leading
/// coefficient is positive. The bracket comes from a deterministic scan in
/// steps of 1/2 starting just above 1.
pub fn chern_ratio_root(m: u32) -> f64 {
    let mf = m as f64;
    let p = |x: f64| {
        (mf + 2.0) * x.powi(4) - (2.0 * mf - 1.0) * x.powi(3) - 3.0 * mf * x * x
            - (2.0 * mf + 1.0) * x
            + (mf - 2.0)
    };
    let mut lo = 1.0 + 1e-9;
    while p(lo) * p(lo + 0.5) > 0.0 {
        lo += 0.5;
    }
    let x = find_root_bracketed(p, lo, lo + 0.5, 1e-14).expect("scan produced a sign change");
    // one Newton polish with the exact derivative
    let dp = |x: f64| {
        4.0 * (mf + 2.0) * x.powi(3) - 3.0 * (2.0 * mf - 1.0) * x * x - 6.0 * mf * x
            - (2.0 * mf + 1.0)
    };
    x - p(x) / dp(x)
}

/// Coefficients of the ratio polynomial for either family, exposing the
/// P(1) identities (P(1) = -5m for `chern`, 30m for `third`).
#[derive(Debug, Clone)]
pub struct RatioPolynomial {
    pub m: u32,
    /// Coefficients indexed by the power of x (chern) or sqrt(x) (third).
    pub coefficients: Vec<f64>,
    pub kind: SolutionKind,
}

impl RatioPolynomial {
    pub fn chern(m: u32) -> Self {
        let mf = m as f64;
        Self {
            m,
            coefficients: vec![
                mf - 2.0,
                -(2.0 * mf + 1.0),
                -3.0 * mf,
                -(2.0 * mf - 1.0),
                mf + 2.0,
            ],
            kind: SolutionKind::Chern,
        }
    }

    pub fn third(m: u32) -> Self {
        let mf = m as f64;
        Self {
            m,
            coefficients: vec![6.0 * mf + 8.0, 9.0 * mf + 6.0, 9.0 * mf - 6.0, 6.0 * mf - 8.0],
            kind: SolutionKind::Third,
        }
    }

    pub fn at_one(&self) -> f64 {
        self.coefficients.iter().sum()
    }
}

/// Degree recomputed from the endpoint pair via the closed m-display;
/// round-tripping the input m validates a solution.
pub fn degree_from_endpoints(kind: SolutionKind, phi0: f64, phi1: f64) -> f64 {
    match kind {
        SolutionKind::Chern | SolutionKind::Critical => {
            let d = chern_denominator(phi0, phi1);
            (-2.0 * phi0.powi(4) - phi0.powi(3) * phi1 + phi0 * phi1.powi(3)
                + 2.0 * phi1.powi(4))
                / d
        }
        SolutionKind::Third => {
            let (s0, s1) = (phi0.sqrt(), phi1.sqrt());
            let den = 6.0 * phi0 * s0 + 6.0 * phi1 * s1 + 9.0 * s0 * phi1 + 9.0 * s1 * phi0;
            (-8.0 * phi0 * s0 + 8.0 * phi1 * s1 + 6.0 * s0 * phi1 - 6.0 * s1 * phi0) / den
        }
    }
}

fn chern_denominator(phi0: f64, phi1: f64) -> f64 {
    phi0.powi(4) - 2.0 * phi0.powi(3) * phi1 - 3.0 * phi0 * phi0 * phi1 * phi1
        - 2.0 * phi0 * phi1.powi(3)
        + phi1.powi(4)
}

/// Constant Chern scalar curvature solution of degree m, normalized by
/// phi(l) = phi1.
pub fn solve_chern(m: u32, phi1: f64) -> Result<ClosedFormSolution> {
    assert!(m >= 1, "degree must be positive");
    assert!(phi1 > 0.0, "phi1 must be positive");
    let x = chern_ratio_root(m);
    let phi0 = x * phi1;
    let d = chern_denominator(phi0, phi1);
    let lambda = -6.0 * (3.0 * phi0 * phi0 + 4.0 * phi0 * phi1 + 3.0 * phi1 * phi1) / d;
    let c1 = -4.0
        * (phi0.powi(3) + 3.0 * phi0 * phi0 * phi1 + 3.0 * phi0 * phi1 * phi1 + phi1.powi(3))
        / d;
    let c2 = 2.0 * phi0.powi(4) * phi1.powi(4) / d;
    let sol = ClosedFormSolution {
        kind: SolutionKind::Chern,
        m,
        phi0,
        phi1,
        lambda,
        c1,
        c2,
    };
    validate_solution(&sol)?;
    Ok(sol)
}

/// Constant third scalar curvature solution, which exists only for m = 1,
/// normalized by phi(0) = phi0. The endpoint ratio is the exact radical
/// ((c^(1/3))/2 + 11/(2 c^(1/3)) + 1/2)^2 with c = 44 + 11 sqrt(5).
pub fn solve_third(m: u32, phi0: f64) -> Result<ClosedFormSolution> {
    if m != 1 {
        return Err(Error::UnsupportedDegree { m });
    }
    assert!(phi0 > 0.0, "phi0 must be positive");
    let c = 44.0 + 11.0 * 5.0f64.sqrt();
    let cr = c.cbrt();
    let ratio = (cr / 2.0 + 11.0 / (2.0 * cr) + 0.5).powi(2);
    let phi1 = ratio * phi0;
    let (s0, s1) = (phi0.sqrt(), phi1.sqrt());
    let den = 6.0 * phi0 * s0 + 6.0 * phi1 * s1 + 9.0 * s0 * phi1 + 9.0 * s1 * phi0;
    let lambda = 40.0 / (2.0 * phi0 + 2.0 * phi1 + s0 * s1);
    let c1 = -32.0 * s0 * s1 * (phi0 + phi1 + 3.0 * s0 * s1) / den;
    let c2 = -32.0 * phi0 * s0 * phi1 * s1 / den;
    let sol = ClosedFormSolution {
        kind: SolutionKind::Third,
        m,
        phi0,
        phi1,
        lambda,
        c1,
        c2,
    };
    validate_solution(&sol)?;
    Ok(sol)
}

/// Gauduchon-critical solution of degree m, normalized by phi(0) = phi0.
///
/// For a trial phi1 the conditions y(phi0) = 0, y(phi1) = 0,
/// y'(phi0) = -10m/(7 phi0) are linear in (lambda, c1, c2); the remaining
/// condition y'(phi1) = +10m/(7 phi1) becomes a scalar residual that is
/// scanned over 2000 log-spaced trial values of phi1 in
/// (1e-6 phi0, (1 - 1e-6) phi0) and bisected at each sign change. The
/// phi^(-10) term makes uniform scans miss the root, hence the log spacing.
/// If several roots exist the one with the largest phi1 is returned.
pub fn solve_critical(m: u32, phi0: f64) -> Result<ClosedFormSolution> {
    assert!(m >= 1, "degree must be positive");
    assert!(phi0 > 0.0, "phi0 must be positive");

    let coeffs_for = |phi1: f64| -> Result<(f64, f64, f64)> {
        // columns scaled by their endpoint magnitude to tame phi^(-10)
        let scale = [phi0 * phi0 / 84.0, phi0.powf(-0.8), phi1.powf(-10.0)];
        let row = |phi: f64, deriv: bool| -> Vec<f64> {
            if !deriv {
                vec![
                    -5.0 * phi * phi / 84.0 / scale[0],
                    phi.powf(-0.8) / scale[1],
                    phi.powf(-10.0) / scale[2],
                ]
            } else {
                vec![
                    -10.0 * phi / 84.0 / scale[0],
                    -0.8 * phi.powf(-1.8) / scale[1],
                    -10.0 * phi.powf(-11.0) / scale[2],
                ]
            }
        };
        let matrix = vec![row(phi0, false), row(phi1, false), row(phi0, true)];
        let rhs = vec![-1.0, -1.0, -10.0 * m as f64 / (7.0 * phi0)];
        let s = solve_linear(&matrix, &rhs)?;
        Ok((s[0] / scale[0], s[1] / scale[1], s[2] / scale[2]))
    };

    let residual = |phi1: f64| -> f64 {
        match coeffs_for(phi1) {
            Ok((lambda, c1, c2)) => {
                let yp = -10.0 * lambda * phi1 / 84.0 - 0.8 * c1 * phi1.powf(-1.8)
                    - 10.0 * c2 * phi1.powf(-11.0);
                yp - 10.0 * m as f64 / (7.0 * phi1)
            }
            Err(_) => f64::NAN,
        }
    };

    let lo_ratio: f64 = 1e-6;
    let hi_ratio: f64 = 1.0 - 1e-6;
    let n_probe = 2000;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n_probe {
        let ratio = lo_ratio * (hi_ratio / lo_ratio).powf(i as f64 / n_probe as f64);
        let phi1 = ratio * phi0;
        let r = residual(phi1);
        if let Some((p_phi, p_r)) = prev {
            if r.is_finite() && p_r.is_finite() && r * p_r < 0.0 {
                if let Ok(root) = find_root_bracketed(residual, p_phi, phi1, 1e-14 * phi0) {
                    roots.push(root);
                }
            }
        }
        prev = Some((phi1, r));
    }
    let phi1 = roots
        .last()
        .copied()
        .ok_or_else(|| Error::NoSolution {
            what: format!("no sign change of the y'(phi1) residual for m = {m}"),
        })?;
    let (lambda, c1, c2) = coeffs_for(phi1)?;
    let sol = ClosedFormSolution {
        kind: SolutionKind::Critical,
        m,
        phi0,
        phi1,
        lambda,
        c1,
        c2,
    };
    validate_solution(&sol)?;
    Ok(sol)
}

/// Endpoint and degree checks shared by the three solvers.
fn validate_solution(sol: &ClosedFormSolution) -> Result<()> {
    let scale = sol.y_deriv(sol.phi0, 1).abs().max(sol.y_deriv(sol.phi1, 1).abs());
    let y0 = sol.y(sol.phi0)?;
    let y1 = sol.y(sol.phi1)?;
    if y0.abs() > 1e-10 * scale.max(1.0) || y1.abs() > 1e-10 * scale.max(1.0) {
        return Err(Error::Solver {
            what: format!("endpoint values y(phi0) = {y0:e}, y(phi1) = {y1:e} do not vanish"),
        });
    }
    if sol.lambda <= 0.0 {
        return Err(Error::Solver {
            what: format!("constructed constant lambda = {} is not positive", sol.lambda),
        });
    }
    if matches!(sol.kind, SolutionKind::Chern | SolutionKind::Third) {
        let m_back = degree_from_endpoints(sol.kind, sol.phi0, sol.phi1);
        if (m_back - sol.m as f64).abs() > 1e-10 * sol.m as f64 {
            return Err(Error::Solver {
                what: format!("degree identity failed: recomputed m = {m_back}"),
            });
        }
    }
    Ok(())
}

/// Factored form of y for the constant-Chern family,
/// 2m (phi0 - phi)(phi1 - phi) Phi(phi) /
/// (phi^4 (phi1 + phi0)(phi1 - phi0)(2 phi0^2 + 2 phi1^2 + phi0 phi1)),
/// manifestly positive between the endpoints.
pub fn chern_y_factored(sol: &ClosedFormSolution, phi: f64) -> f64 {
    assert_eq!(sol.kind, SolutionKind::Chern);
    let (p0, p1) = (sol.phi0, sol.phi1);
    let big_phi = phi.powi(4) * (3.0 * p0 * p0 + 4.0 * p1 * p0 + 3.0 * p1 * p1)
        + phi.powi(3) * (p0.powi(3) + p0 * p0 * p1 + p0 * p1 * p1 + p1.powi(3))
        + phi * phi * (p0.powi(3) * p1 + p0 * p0 * p1 * p1 + p0 * p1.powi(3))
        + phi * (p0.powi(3) * p1 * p1 + p0 * p0 * p1.powi(3))
        + p0.powi(3) * p1.powi(3);
    2.0 * sol.m as f64 * (p0 - phi) * (p1 - phi) * big_phi
        / (phi.powi(4) * (p1 + p0) * (p1 - p0) * (2.0 * p0 * p0 + 2.0 * p1 * p1 + p0 * p1))
}

/// True when y stays (strictly) positive at `n_scan` points strictly between
/// the endpoints and the endpoint values themselves vanish. A corrupted
/// coefficient set can stay positive inside the interval while missing the
/// endpoint zeros, so both checks are needed for a valid profile.
pub fn positivity_check(sol: &ClosedFormSolution, n_scan: usize) -> bool {
    assert!(n_scan >= 100);
    let (lo, hi) = sol.phi_interval();
    let scale = sol
        .y_deriv(lo, 1)
        .abs()
        .max(sol.y_deriv(hi, 1).abs())
        .max(1e-300);
    let ends_vanish = sol.y_deriv(lo, 0).abs() <= 1e-8 * scale * (hi - lo)
        && sol.y_deriv(hi, 0).abs() <= 1e-8 * scale * (hi - lo);
    ends_vanish
        && (1..=n_scan).all(|i| {
            let phi = lo + (hi - lo) * i as f64 / (n_scan as f64 + 1.0);
            sol.y_deriv(phi, 0) > 0.0
        })
}

/// Profile backend for a constructed solution: phi(t) is tabulated on the
/// grid and interpolated in between; f, h and all derivatives follow from
/// the closed forms in phi, since phi' = -+sqrt(y(phi)), phi'' = y'/2, and so
/// on up the chain rule.
struct OdeProfile {
    sol: ClosedFormSolution,
    grid: Grid,
    phi: Vec<f64>,
}

impl OdeProfile {
    /// phi and its first four t-derivatives at t.
    fn phi_derivs(&self, t: f64) -> [f64; 5] {
        let phi = interpolate_at(self.grid.nodes(), &self.phi, t, 0);
        let (lo, hi) = self.sol.phi_interval();
        let phi = phi.clamp(lo, hi);
        let y = self.sol.y_stable(phi, phi - lo, hi - phi).max(0.0);
        let y1 = self.sol.y_deriv(phi, 1);
        let y2 = self.sol.y_deriv(phi, 2);
        let y3 = self.sol.y_deriv(phi, 3);
        let d1 = self.sol.kind.direction() * y.sqrt();
        let d2 = 0.5 * y1;
        let d3 = 0.5 * y2 * d1;
        let d4 = 0.5 * y3 * y + 0.25 * y2 * y1;
        [phi, d1, d2, d3, d4]
    }
}

impl ProfileEval for OdeProfile {
    fn f_deriv(&self, t: f64, k: usize) -> f64 {
        let p = self.phi_derivs(t);
        match self.sol.kind {
            // f = coeff * phi' phi, by the Leibniz rule
            SolutionKind::Chern | SolutionKind::Critical => {
                let coeff = if self.sol.kind == SolutionKind::Chern {
                    -0.5
                } else {
                    -1.4
                };
                coeff
                    * match k {
                        0 => p[1] * p[0],
                        1 => p[2] * p[0] + p[1] * p[1],
                        2 => p[3] * p[0] + 3.0 * p[2] * p[1],
                        _ => p[4] * p[0] + 4.0 * p[3] * p[1] + 3.0 * p[2] * p[2],
                    }
            }
            // f = phi'/4
            SolutionKind::Third => 0.25 * p[k + 1],
        }
    }

    fn h_deriv(&self, t: f64, k: usize) -> f64 {
        let p = self.phi_derivs(t);
        match self.sol.kind {
            SolutionKind::Chern | SolutionKind::Critical => p[k],
            // h = sqrt(phi), chain rule through order 3
            SolutionKind::Third => {
                let r = p[0].sqrt();
                match k {
                    0 => r,
                    1 => 0.5 * p[1] / r,
                    2 => 0.5 * p[2] / r - 0.25 * p[1] * p[1] / (r * p[0]),
                    _ => {
                        0.5 * p[3] / r - 0.75 * p[1] * p[2] / (r * p[0])
                            + 0.375 * p[1].powi(3) / (r * p[0] * p[0])
                    }
                }
            }
        }
    }
}

/// Builds the metric profile for a solved family on an n-node uniform grid.
///
/// The arclength map is computed in the angle variable
/// phi = mid - half cos(psi), in which the integrand
/// dt/dpsi = 1 / sqrt(G(phi)), with G = y / ((phi - lo)(hi - phi)), is smooth
/// and positive, so cumulative Gauss-Legendre panels give full precision.
/// Inverting the cumulative map yields phi at every grid node.
pub fn build_profile(sol: &ClosedFormSolution, n_grid: usize) -> Result<ProfilePair> {
    assert!(n_grid >= 64, "need at least a 64-node grid");
    let (lo, hi) = sol.phi_interval();
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));

    if !positivity_check(sol, 1000) {
        let bad = (1..=1000)
            .map(|i| lo + (hi - lo) * i as f64 / 1001.0)
            .find(|&phi| sol.y_deriv(phi, 0) <= 0.0)
            .unwrap_or(lo);
        return Err(Error::NonPositiveProfile { phi: bad });
    }

    // 1 / sqrt(G) at an interior angle
    let integrand = |psi: f64| -> f64 {
        let s2 = (0.5 * psi).sin().powi(2);
        let c2 = (0.5 * psi).cos().powi(2);
        let d_lo = 2.0 * half * s2;
        let d_hi = 2.0 * half * c2;
        let phi = mid - half * psi.cos();
        let y = self_stable(sol, phi, d_lo, d_hi);
        let g = y / (d_lo * d_hi);
        1.0 / g.sqrt()
    };

    // cumulative arclength over uniform psi panels
    let segments = 256.max(n_grid / 2);
    let (gl_x, gl_w) = gauss_legendre_12();
    let psi_step = std::f64::consts::PI / segments as f64;
    let mut cumulative = Vec::with_capacity(segments + 1);
    cumulative.push(0.0);
    let mut acc = 0.0;
    for s in 0..segments {
        let a = s as f64 * psi_step;
        let mut panel = 0.0;
        for (&x, &w) in gl_x.iter().zip(&gl_w) {
            let psi = a + 0.5 * psi_step * (1.0 + x);
            panel += w * integrand(psi);
        }
        acc += 0.5 * psi_step * panel;
        cumulative.push(acc);
    }
    let total = acc;
    if !total.is_finite() || total <= 0.0 {
        return Err(Error::Solver {
            what: "arclength integration failed".into(),
        });
    }

    // cross-check the total against the direct singular quadrature
    let direct = integrate_endpoint_singular_offsets(
        |phi, d_lo, d_hi| 1.0 / self_stable(sol, phi, d_lo, d_hi).sqrt(),
        lo,
        hi,
        1e-11 * (hi - lo),
    )?;
    if (direct - total).abs() > 1e-8 * total {
        return Err(Error::Solver {
            what: format!(
                "arclength routes disagree: panels {total:.15e}, tanh-sinh {direct:.15e}"
            ),
        });
    }

    let l = total;
    let psi_nodes: Vec<f64> = (0..=segments).map(|s| s as f64 * psi_step).collect();

    // on a decreasing profile t runs opposite to psi
    let decreasing = sol.kind.direction() < 0.0;
    let grid = Grid::uniform(0.0, l, n_grid)?;
    let mut phi_vals = Vec::with_capacity(n_grid);
    for (j, &t) in grid.nodes().iter().enumerate() {
        if j == 0 {
            phi_vals.push(if decreasing { hi } else { lo });
            continue;
        }
        if j == n_grid - 1 {
            phi_vals.push(if decreasing { lo } else { hi });
            continue;
        }
        let target = if decreasing { l - t } else { t };
        let psi = invert_cumulative(&psi_nodes, &cumulative, target)?;
        phi_vals.push(mid - half * psi.cos());
    }

    Ok(ProfilePair::new(
        l,
        Some(sol.m),
        Arc::new(OdeProfile {
            sol: *sol,
            grid,
            phi: phi_vals,
        }),
    ))
}

fn self_stable(sol: &ClosedFormSolution, phi: f64, d_lo: f64, d_hi: f64) -> f64 {
    sol.y_stable(phi, d_lo, d_hi).max(f64::MIN_POSITIVE)
}

/// Solves cumulative(psi) = target by interpolating the tabulated cumulative
/// map and bisecting inside the bracketing panel.
fn invert_cumulative(psi: &[f64], cumulative: &[f64], target: f64) -> Result<f64> {
    let k = cumulative
        .partition_point(|&v| v < target)
        .clamp(1, cumulative.len() - 1);
    let (a, b) = (psi[k - 1], psi[k]);
    find_root_bracketed(
        |x| interpolate_at(psi, cumulative, x, 0) - target,
        a,
        b,
        1e-14 * std::f64::consts::PI,
    )
}

/// 12-point Gauss-Legendre rule on [-1, 1].
fn gauss_legendre_12() -> ([f64; 12], [f64; 12]) {
    // nodes symmetric about zero
    let x = [
        -0.981_560_634_246_719_3,
        -0.904_117_256_370_474_9,
        -0.769_902_674_194_304_9,
        -0.587_317_954_286_617_4,
        -0.367_831_498_998_180_2,
        -0.125_233_408_511_468_9,
        0.125_233_408_511_468_9,
        0.367_831_498_998_180_2,
        0.587_317_954_286_617_4,
        0.769_902_674_194_304_9,
        0.904_117_256_370_474_9,
        0.981_560_634_246_719_3,
    ];
    let w = [
        0.047_175_336_386_511_83,
        0.106_939_325_995_318_43,
        0.160_078_328_543_346_23,
        0.203_167_426_723_065_92,
        0.233_492_536_538_354_81,
        0.249_147_045_813_402_79,
        0.249_147_045_813_402_79,
        0.233_492_536_538_354_81,
        0.203_167_426_723_065_92,
        0.160_078_328_543_346_23,
        0.106_939_325_995_318_43,
        0.047_175_336_386_511_83,
    ];
    (x, w)
}

/// Residuals of a constructed profile against its defining conditions.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// (f'(0) - m, f'(l) + m, h'(0), h'(l)), each extrapolated to the
    /// boundary from the four nearest interior nodes.
    pub boundary: [f64; 4],
    /// max |q(t) - lambda| / |lambda| over interior nodes, where q is the
    /// curvature quantity the construction holds constant.
    pub constancy: f64,
    /// Positivity of y on the interior scan.
    pub positive: bool,
    /// (y(phi0), y(phi1)).
    pub endpoint_y: (f64, f64),
    /// Number of grid nodes examined.
    pub n_grid: usize,
}

/// Verifies a constructed profile against its solution data.
pub fn solve_report(sol: &ClosedFormSolution, p: &ProfilePair, n: usize) -> Result<SolveReport> {
    let l = p.l();
    let step = l / (n as f64 - 1.0);
    let quantity = |t: f64| -> Result<f64> {
        match sol.kind {
            SolutionKind::Chern => frame::chern_scalar(p, t),
            SolutionKind::Third => frame::third_scalar(p, t),
            SolutionKind::Critical => frame::gauduchon_combination(p, t),
        }
    };
    let mut constancy = 0.0f64;
    for i in 1..n - 1 {
        let t = step * i as f64;
        constancy = constancy.max((quantity(t)? - sol.lambda).abs() / sol.lambda.abs());
    }
    let fp: Vec<f64> = (1..=4).map(|k| p.f_deriv(step * k as f64, 1)).collect();
    let fp_end: Vec<f64> = (1..=4).map(|k| p.f_deriv(l - step * k as f64, 1)).collect();
    let hp: Vec<f64> = (1..=4).map(|k| p.h_deriv(step * k as f64, 1)).collect();
    let hp_end: Vec<f64> = (1..=4).map(|k| p.h_deriv(l - step * k as f64, 1)).collect();
    let m = sol.m as f64;
    let boundary = [
        frame::extrapolate_to_boundary(&fp) - m,
        frame::extrapolate_to_boundary(&fp_end) + m,
        frame::extrapolate_to_boundary(&hp),
        frame::extrapolate_to_boundary(&hp_end),
    ];
    Ok(SolveReport {
        boundary,
        constancy,
        positive: positivity_check(sol, 1000),
        endpoint_y: (sol.y(sol.phi0)?, sol.y(sol.phi1)?),
        n_grid: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame;
    use crate::numerics::differentiate;

    // ratio roots frozen from a bisection oracle run to convergence
    const RATIO_ROOTS: [(u32, f64); 5] = [
        (1, 1.5195303702881162),
        (2, 1.8920037044152534),
        (3, 2.1317836353388098),
        (5, 2.413092254979791),
        (10, 2.710427599542428),
    ];

    fn ratio_poly(m: u32) -> impl Fn(f64) -> f64 {
        let mf = m as f64;
        move |x: f64| {
            (mf + 2.0) * x.powi(4) - (2.0 * mf - 1.0) * x.powi(3) - 3.0 * mf * x * x
                - (2.0 * mf + 1.0) * x
                + (mf - 2.0)
        }
    }

    #[test]
    fn ratio_roots_match_bisection_oracle() {
        for &(m, frozen) in &RATIO_ROOTS {
            let p = ratio_poly(m);
            // oracle: bisection on [1 + 1e-9, 4] refined to convergence
            let (mut a, mut b) = (1.0 + 1e-9, 4.0);
            assert!(p(a) < 0.0 && p(b) > 0.0);
            for _ in 0..100 {
                let mid = 0.5 * (a + b);
                if p(a) * p(mid) <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let oracle = 0.5 * (a + b);
            let x = chern_ratio_root(m);
            assert!((x - oracle).abs() < 1e-12, "m = {m}: {x} vs oracle {oracle}");
            assert!((x - frozen).abs() < 1e-12, "m = {m} frozen value drifted");
        }
    }

    #[test]
    fn ratio_polynomial_value_at_one() {
        for m in [1u32, 2, 3, 7, 11] {
            assert_eq!(RatioPolynomial::chern(m).at_one(), -5.0 * m as f64);
            assert_eq!(RatioPolynomial::third(m).at_one(), 30.0 * m as f64);
        }
    }

    #[test]
    fn degree_two_polynomial_coefficients() {
        // m = 2: 4x^4 - 3x^3 - 6x^2 - 5x + 0
        let p = RatioPolynomial::chern(2);
        assert_eq!(p.coefficients, vec![0.0, -5.0, -6.0, -3.0, 4.0]);
        let x = chern_ratio_root(2);
        let val = 4.0 * x.powi(4) - 3.0 * x.powi(3) - 6.0 * x * x - 5.0 * x;
        assert!(val.abs() < 1e-10 && x > 1.0);
    }

    #[test]
    fn chern_solution_m1_frozen_values() {
        let sol = solve_chern(1, 1.0).unwrap();
        assert!((sol.phi0 - 1.5195303702881162).abs() < 1e-12);
        assert!((sol.lambda - 9.015457292050251).abs() < 1e-10);
        assert!((sol.c1 - 6.0061829168201).abs() < 1e-10);
        assert!((sol.c2 + 1.0010304861366834).abs() < 1e-10);
        assert!(sol.lambda > 0.0);
    }

    #[test]
    fn chern_degree_round_trip() {
        for m in [1u32, 2, 3, 5, 10] {
            let sol = solve_chern(m, 1.0).unwrap();
            let back = degree_from_endpoints(SolutionKind::Chern, sol.phi0, sol.phi1);
            assert!((back - m as f64).abs() <= 1e-10 * m as f64, "m = {m}");
        }
    }

    #[test]
    fn chern_scaling_in_phi1() {
        let a = solve_chern(3, 1.0).unwrap();
        let b = solve_chern(3, 2.0).unwrap();
        assert!((b.phi0 - 2.0 * a.phi0).abs() < 1e-12);
        // lambda scales like 1/phi^2
        assert!((b.lambda - a.lambda / 4.0).abs() < 1e-12);
    }

    #[test]
    fn chern_boundary_derivatives_of_y() {
        for m in [1u32, 2, 5] {
            let sol = solve_chern(m, 1.0).unwrap();
            let mf = m as f64;
            assert!((sol.y_deriv(sol.phi0, 1) + 4.0 * mf / sol.phi0).abs() < 1e-9);
            assert!((sol.y_deriv(sol.phi1, 1) - 4.0 * mf / sol.phi1).abs() < 1e-9);
        }
    }

    #[test]
    fn chern_factored_form_matches_closed_form() {
        for m in [1u32, 2, 3] {
            let sol = solve_chern(m, 1.0).unwrap();
            let (lo, hi) = sol.phi_interval();
            for i in 1..1000 {
                let phi = lo + (hi - lo) * i as f64 / 1000.0;
                let a = sol.y(phi).unwrap();
                let b = chern_y_factored(&sol, phi);
                assert!((a - b).abs() <= 1e-10, "m = {m}, phi = {phi}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn third_rejects_higher_degree() {
        assert!(matches!(
            solve_third(2, 1.0),
            Err(Error::UnsupportedDegree { m: 2 })
        ));
    }

    #[test]
    fn third_solution_m1_values() {
        let sol = solve_third(1, 1.0).unwrap();
        // exact radical for the endpoint ratio
        assert!((sol.phi1 / sol.phi0 - 15.134852944836316).abs() < 1e-10);
        assert!(sol.lambda > 1.10 && sol.lambda < 1.12);
        assert!(sol.c1 > -6.53 && sol.c1 < -6.51);
        assert!(sol.c2 > -3.56 && sol.c2 < -3.54);
        // frozen full-precision values
        assert!((sol.lambda - 1.1061928632567024).abs() < 1e-12);
        assert!((sol.c1 + 6.525076182324397).abs() < 1e-12);
        assert!((sol.c2 + 3.5516209572720285).abs() < 1e-12);
        let back = degree_from_endpoints(SolutionKind::Third, sol.phi0, sol.phi1);
        assert!((back - 1.0).abs() < 1e-10);
        // scale covariance: lambda ~ 1/phi0, c1 ~ sqrt(phi0), c2 ~ phi0^(3/2)
        let scaled = solve_third(1, 4.0).unwrap();
        assert!((scaled.lambda - sol.lambda / 4.0).abs() < 1e-12);
        assert!((scaled.c1 - sol.c1 * 2.0).abs() < 1e-10);
        assert!((scaled.c2 - sol.c2 * 8.0).abs() < 1e-9);
    }

    #[test]
    fn third_boundary_derivatives_of_y() {
        let sol = solve_third(1, 1.0).unwrap();
        assert!((sol.y_deriv(sol.phi0, 1) - 8.0).abs() < 1e-9);
        assert!((sol.y_deriv(sol.phi1, 1) + 8.0).abs() < 1e-9);
    }

    #[test]
    fn critical_solution_m1_values() {
        let sol = solve_critical(1, 1.0).unwrap();
        assert!((sol.phi1 - 0.15502779091346579).abs() < 1e-9, "phi1 = {}", sol.phi1);
        assert!((sol.phi1 - 0.155).abs() < 0.001);
        assert!((sol.lambda - 13.371428604246812).abs() < 1e-6, "lambda = {}", sol.lambda);
        assert!((sol.lambda - 13.371).abs() < 0.005);
        assert!(sol.y(sol.phi1).unwrap().abs() < 1e-10);
        // the remaining boundary derivative closes to its target
        assert!((sol.y_deriv(sol.phi1, 1) - 10.0 / (7.0 * sol.phi1)).abs() < 1e-8);
        assert!((sol.y_deriv(sol.phi0, 1) + 10.0 / 7.0).abs() < 1e-10);
    }

    #[test]
    fn critical_scaling_in_phi0() {
        let a = solve_critical(1, 1.0).unwrap();
        let b = solve_critical(1, 3.0).unwrap();
        assert!((b.phi1 / b.phi0 - a.phi1 / a.phi0).abs() < 1e-9);
        assert!((b.lambda - a.lambda / 9.0).abs() < 1e-9);
    }

    #[test]
    fn positivity_checks() {
        let sol = solve_chern(1, 1.0).unwrap();
        assert!(positivity_check(&sol, 1000));
        let crit = solve_critical(1, 1.0).unwrap();
        assert!(positivity_check(&crit, 1000));
        // corrupting c2 breaks the endpoint factorization
        let mut bad = sol;
        bad.c2 = -bad.c2;
        assert!(!positivity_check(&bad, 1000));
    }

    #[test]
    fn chern_profile_arclength_frozen() {
        let sol = solve_chern(1, 1.0).unwrap();
        let p = build_profile(&sol, 128).unwrap();
        // frozen from an independent adaptive quadrature of 1/sqrt(y)
        assert!((p.l() - 1.2774220899390965).abs() < 1e-9, "l = {:.16}", p.l());
    }

    #[test]
    fn chern_profile_satisfies_boundary_and_constancy() {
        let sol = solve_chern(1, 1.0).unwrap();
        let p = build_profile(&sol, 512).unwrap();
        let rep = solve_report(&sol, &p, 512).unwrap();
        for (i, r) in rep.boundary.iter().enumerate() {
            assert!(r.abs() <= 1e-4, "boundary residual {i}: {r:e}");
        }
        assert!(rep.constancy <= 1e-6, "constancy {:e}", rep.constancy);
        assert!(rep.positive);
    }

    #[test]
    fn profile_satisfies_defining_ode() {
        // numerical phi' from the sampled h (chern: h = phi) against -sqrt(y)
        let sol = solve_chern(2, 1.0).unwrap();
        let p = build_profile(&sol, 512).unwrap();
        let (_, h) = p.sample(512).unwrap();
        let hp = differentiate(&h, 1).unwrap();
        for i in 4..508 {
            let phi = h.values()[i];
            let expected = -sol.y(phi).unwrap().max(0.0).sqrt();
            assert!(
                (hp.values()[i] - expected).abs() <= 1e-7,
                "node {i}: {} vs {expected}",
                hp.values()[i]
            );
        }
    }

    #[test]
    fn chern_profiles_conformally_kahler_lee_form() {
        // theta_t = 3 h'/h for the constant-Chern construction
        let sol = solve_chern(1, 1.0).unwrap();
        let p = build_profile(&sol, 256).unwrap();
        for i in 1..255 {
            let t = p.l() * i as f64 / 255.0;
            let theta = frame::lee_form(&p, t).unwrap();
            let ratio = theta * p.h(t) / (3.0 * p.h_deriv(t, 1));
            assert!((ratio - 1.0).abs() <= 1e-8, "t = {t}: ratio {ratio}");
        }
    }

    #[test]
    fn third_profile_constancy() {
        let sol = solve_third(1, 1.0).unwrap();
        let p = build_profile(&sol, 512).unwrap();
        let rep = solve_report(&sol, &p, 512).unwrap();
        assert!(rep.constancy <= 1e-6, "constancy {:e}", rep.constancy);
        for r in rep.boundary {
            assert!(r.abs() <= 1e-4, "boundary residual {r:e}");
        }
    }

    #[test]
    fn critical_profile_constancy() {
        let sol = solve_critical(1, 1.0).unwrap();
        let p = build_profile(&sol, 512).unwrap();
        let rep = solve_report(&sol, &p, 512).unwrap();
        assert!(rep.constancy <= 1e-6, "constancy {:e}", rep.constancy);
        for r in rep.boundary {
            assert!(r.abs() <= 1e-4, "boundary residual {r:e}");
        }
    }

    #[test]
    fn sampled_round_trip_keeps_constancy() {
        // feeding the sampled arrays back through stencil differentiation
        // still shows a constant Chern scalar, at stencil accuracy
        let sol = solve_chern(1, 1.0).unwrap();
        let p = build_profile(&sol, 512).unwrap();
        let (f, h) = p.sample(512).unwrap();
        let q = ProfilePair::from_samples(f, h, Some(1)).unwrap();
        for i in (16..496).step_by(16) {
            let t = q.l() * i as f64 / 511.0;
            let sc = frame::chern_scalar(&q, t).unwrap();
            assert!(
                (sc - sol.lambda).abs() / sol.lambda <= 1e-6,
                "t = {t}: sC = {sc}"
            );
        }
    }
}
