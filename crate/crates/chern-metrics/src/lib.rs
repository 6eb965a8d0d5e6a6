//! Constant Chern scalar curvature metrics on Hirzebruch and ruled surfaces.
//!
//! The crate builds, to machine precision, four families of Hermitian metrics
//! and verifies every identity they are supposed to satisfy:
//!
//! * cohomogeneity-one metrics of constant Chern scalar curvature on the
//!   degree-m Hirzebruch surfaces ([`hirzebruch::solve_chern`]);
//! * the degree-one metric of constant third scalar curvature
//!   ([`hirzebruch::solve_third`]);
//! * the degree-one Gauduchon-critical metric, with `s^C + delta theta`
//!   constant ([`hirzebruch::solve_critical`]);
//! * conformally Kahler metrics of zero or constant Chern scalar curvature on
//!   ruled surfaces over higher-genus curves ([`ruled`]).
//!
//! Module [`frame`] evaluates the curvature of the underlying metric ansatz
//! two independent ways: closed-form expressions in the profile functions, and
//! a connection-level oracle that rebuilds the Chern connection from frame
//! structure constants alone. Module [`conformal`] covers conformal changes,
//! the Yamabe-type equation, and the associated Rayleigh quotient.
//!
//! See the `examples/` directory for one runnable example per capability; the
//! `chern-metrics` binary exposes the same constructions as `construct`,
//! `verify`, `table`, and `plot` subcommands.

pub mod error;
pub mod frame;
pub mod hirzebruch;
pub mod numerics;

pub use error::{Error, Result};
