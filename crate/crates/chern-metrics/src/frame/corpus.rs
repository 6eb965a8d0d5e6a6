//! Reproducible test profiles.
//!
//! The seeded corpus draws profile coefficients from a SplitMix64 stream, so
//! the same seed always yields the same profiles:
//!
//! * h(t) = a0 + a1 sin(pi t / l) with a0 in [1.5, 2.5], a1 in [-0.4, 0.4]
//! * f(t) = b0 + b1 t (l - t)   with b0 in [0.8, 1.6], b1 in [-0.15, 0.15]
//!
//! on l = pi. The coefficient ranges keep f and h strictly positive.

use super::{ClosureProfile, ProfilePair};
use std::f64::consts::PI;
use std::sync::Arc;

/// Seed used by the fixed test corpus.
pub const DEFAULT_SEED: u64 = 0x5eed_0c0a_57a1_e5e1;

/// SplitMix64; the usual constants.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi).
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

/// Hopf-type profile h = f = 1 on [0, l] (open interval; no closing degree).
pub fn hopf(l: f64) -> ProfilePair {
    ProfilePair::new(
        l,
        None,
        Arc::new(ClosureProfile {
            f: |_, k| if k == 0 { 1.0 } else { 0.0 },
            h: |_, k| if k == 0 { 1.0 } else { 0.0 },
        }),
    )
}

/// One smooth positive profile with the documented coefficient layout.
pub fn smooth(a0: f64, a1: f64, b0: f64, b1: f64, l: f64) -> ProfilePair {
    let w = PI / l;
    ProfilePair::new(
        l,
        None,
        Arc::new(ClosureProfile {
            f: move |t: f64, k: usize| match k {
                0 => b0 + b1 * t * (l - t),
                1 => b1 * (l - 2.0 * t),
                2 => -2.0 * b1,
                _ => 0.0,
            },
            h: move |t: f64, k: usize| match k {
                0 => a0 + a1 * (w * t).sin(),
                1 => a1 * w * (w * t).cos(),
                2 => -a1 * w * w * (w * t).sin(),
                3 => -a1 * w * w * w * (w * t).cos(),
                _ => unreachable!("derivative order above 3"),
            },
        }),
    )
}

/// `count` seeded smooth profiles.
pub fn seeded(count: usize, seed: u64) -> Vec<ProfilePair> {
    let mut rng = SplitMix64(seed);
    (0..count)
        .map(|_| {
            let a0 = rng.uniform(1.5, 2.5);
            let a1 = rng.uniform(-0.4, 0.4);
            let b0 = rng.uniform(0.8, 1.6);
            let b1 = rng.uniform(-0.15, 0.15);
            smooth(a0, a1, b0, b1, PI)
        })
        .collect()
}

/// Kahler profile f = h h' with h = sin(t + 0.2) on t in [0, 1.1]
/// (so the angle stays inside (0, pi/2) and both f and h are positive).
pub fn kahler_sin() -> ProfilePair {
    const SHIFT: f64 = 0.2;
    ProfilePair::new(
        1.1,
        None,
        Arc::new(ClosureProfile {
            // f = sin(x) cos(x) = sin(2x)/2 at x = t + SHIFT
            f: |t: f64, k: usize| {
                let x = 2.0 * (t + SHIFT);
                match k {
                    0 => 0.5 * x.sin(),
                    1 => x.cos(),
                    2 => -2.0 * x.sin(),
                    _ => -4.0 * x.cos(),
                }
            },
            h: |t: f64, k: usize| {
                let x = t + SHIFT;
                match k {
                    0 => x.sin(),
                    1 => x.cos(),
                    2 => -x.sin(),
                    _ => -x.cos(),
                }
            },
        }),
    )
}

/// Kahler profile h = e^(t - 1/2), f = h h' = e^(2(t - 1/2)) on [0, 1].
pub fn kahler_exp() -> ProfilePair {
    ProfilePair::new(
        1.0,
        None,
        Arc::new(ClosureProfile {
            f: |t: f64, k: usize| (1 << k) as f64 * (2.0 * (t - 0.5)).exp(),
            h: |t: f64, _k: usize| (t - 0.5).exp(),
        }),
    )
}

/// Kahler profile with h = t (f = h h' = t) on [0.5, 1.5], shifted to start
/// at t = 0.
pub fn kahler_linear() -> ProfilePair {
    ProfilePair::new(
        1.0,
        None,
        Arc::new(ClosureProfile {
            f: |t: f64, k: usize| match k {
                0 => t + 0.5,
                1 => 1.0,
                _ => 0.0,
            },
            h: |t: f64, k: usize| match k {
                0 => t + 0.5,
                1 => 1.0,
                _ => 0.0,
            },
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_corpus_is_reproducible_and_positive() {
        let a = seeded(10, DEFAULT_SEED);
        let b = seeded(10, DEFAULT_SEED);
        for (p, q) in a.iter().zip(&b) {
            for i in 0..=20 {
                let t = p.l() * i as f64 / 20.0;
                assert_eq!(p.f(t).to_bits(), q.f(t).to_bits());
                assert!(p.f(t) > 0.0 && p.h(t) > 0.0, "profile not positive at {t}");
            }
        }
    }

    #[test]
    fn kahler_profiles_satisfy_f_equals_h_hprime() {
        for p in [kahler_sin(), kahler_exp(), kahler_linear()] {
            for i in 0..=16 {
                let t = p.l() * i as f64 / 16.0;
                let dev = p.f(t) - p.h(t) * p.h_deriv(t, 1);
                assert!(dev.abs() < 1e-14, "deviation {dev:e} at t = {t}");
            }
        }
    }
}
