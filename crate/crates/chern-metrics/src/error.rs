//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by solvers, numerical kernels, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no sign change on bracket [{lo}, {hi}]: f({lo}) = {flo:e}, f({hi}) = {fhi:e}")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },

    #[error("function value is not finite at x = {x}")]
    NonFiniteEval { x: f64 },

    #[error("linear system is singular or ill-conditioned (condition estimate {cond:.3e})")]
    IllConditioned { cond: f64 },

    #[error("matrix dimension {n} out of range (expected 1 ..= {max})")]
    BadDimension { n: usize, max: usize },

    #[error("quadrature did not reach tolerance {tol:.3e}: error estimate {err:.3e}")]
    QuadratureAccuracy { tol: f64, err: f64 },

    #[error("samples are not strictly monotone near index {index}")]
    NotMonotone { index: usize },

    #[error("grid needs at least {needed} nodes, got {got}")]
    GridTooSmall { needed: usize, got: usize },

    #[error("grid nodes must be strictly increasing and finite (violation near index {index})")]
    BadGrid { index: usize },

    #[error("sample values must be finite and match the grid length")]
    BadSamples,

    #[error("t = {t} lies outside the open interval (0, {l})")]
    OutOfDomain { t: f64, l: f64 },

    #[error("phi = {phi} must be positive")]
    NonPositivePhi { phi: f64 },

    #[error("fiber coordinate z = {z} lies outside the open interval (-1, 1)")]
    OutOfFiberDomain { z: f64 },

    #[error("z + b = {val} must be positive for the conformal factor 1/(z+b)^2")]
    ConformalFactorDomain { val: f64 },

    #[error("constant third scalar curvature is only solvable for degree m = 1 (got m = {m}); \
             the ratio polynomial has P(1) = 30m > 0, so the even-degree root argument fails")]
    UnsupportedDegree { m: u32 },

    #[error("degree m = {m} exceeds the bound 2*genus - 2 = {bound}")]
    DegreeBound { m: u32, bound: i64 },

    #[error("parameter b = {b} must satisfy b > 1")]
    BParameterDomain { b: f64 },

    #[error("degenerate closed form: denominator A vanishes at x = {x}, b = {b}")]
    DegenerateA { x: f64, b: f64 },

    #[error("no solution found: {what}")]
    NoSolution { what: String },

    #[error("profile function y is not positive inside the interval (first failure at phi = {phi})")]
    NonPositiveProfile { phi: f64 },

    #[error("solver failure: {what}")]
    Solver { what: String },

    #[error("malformed metric file: {what}")]
    MalformedFile { what: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
