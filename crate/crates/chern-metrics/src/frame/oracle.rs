//! Connection-level curvature oracle.
//!
//! Everything here is rebuilt from the frame structure constants alone:
//!
//! * the Chern connection coefficients come from the standard formula
//!   g(nabla_X Z, Y) = 1/2 X.g(Z,Y) + 1/2 JX.g(Z,JY)
//!                   + 1/4 g([X,Z] + [JX,JZ] + J[JX,Z] - J[X,JZ], Y)
//!                   - 1/4 g([X,Y] + [JX,JY] + J[JX,Y] - J[X,JY], Z),
//!   where the first two terms vanish on the orthonormal frame;
//! * the curvature from R_{X,Y} = nabla_X nabla_Y - nabla_Y nabla_X -
//!   nabla_{[X,Y]}, with the t-derivatives of the connection coefficients
//!   taken by finite differences;
//! * the Levi-Civita analogue via the Koszul formula, for the Riemannian
//!   scalar.
//!
//! None of the closed-form curvature expressions in [`super`] enter, so
//! agreement between the two routes checks every one of those formulas.

use super::ProfilePair;
use crate::error::Result;
use crate::numerics::fornberg_weights;

/// Complex structure on the frame: J E1 = E2, J E3 = E4.
/// `J[k][j]` is the E_k coefficient of J E_j.
const J: [[f64; 4]; 4] = [
    [0.0, -1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
];

fn apply_j(v: [f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (k, row) in J.iter().enumerate() {
        out[k] = (0..4).map(|j| row[j] * v[j]).sum();
    }
    out
}

/// Chern connection data at one point of the profile.
#[derive(Debug, Clone)]
pub struct FrameConnection {
    /// `coeffs[i][j][k] = g(nabla_{E_i} E_j, E_k)`.
    pub coeffs: [[[f64; 4]; 4]; 4],
    /// `structure[i][j][k]`: the E_k coefficient of [E_i, E_j].
    pub structure: [[[f64; 4]; 4]; 4],
}

/// Frame bracket coefficients at t:
/// [E1,E2] = (2f/h^2) E3, [E1,E3] = -(2/f) E2, [E2,E3] = (2/f) E1,
/// [E1,E4] = (h'/h) E1, [E2,E4] = (h'/h) E2, [E3,E4] = (f'/f) E3.
fn structure_constants(p: &ProfilePair, t: f64) -> [[[f64; 4]; 4]; 4] {
    let (f, h) = (p.f(t), p.h(t));
    let (fp, hp) = (p.f_deriv(t, 1), p.h_deriv(t, 1));
    let mut c = [[[0.0; 4]; 4]; 4];
    let mut set = |i: usize, j: usize, k: usize, v: f64| {
        c[i][j][k] = v;
        c[j][i][k] = -v;
    };
    set(0, 1, 2, 2.0 * f / (h * h));
    set(0, 2, 1, -2.0 / f);
    set(1, 2, 0, 2.0 / f);
    set(0, 3, 0, hp / h);
    set(1, 3, 1, hp / h);
    set(2, 3, 2, fp / f);
    c
}

fn bracket(c: &[[[f64; 4]; 4]; 4], v: [f64; 4], w: [f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        if v[i] == 0.0 {
            continue;
        }
        for j in 0..4 {
            if w[j] == 0.0 {
                continue;
            }
            for k in 0..4 {
                out[k] += v[i] * w[j] * c[i][j][k];
            }
        }
    }
    out
}

fn basis(i: usize) -> [f64; 4] {
    let mut e = [0.0; 4];
    e[i] = 1.0;
    e
}

/// Chern connection coefficients at t, computed from the structure constants
/// and the complex structure alone.
pub fn connection_oracle(p: &ProfilePair, t: f64) -> Result<FrameConnection> {
    p.check_interior(t)?;
    let c = structure_constants(p, t);
    // B(X, W) = [X,W] + [JX,JW] + J[JX,W] - J[X,JW]
    let b = |x: [f64; 4], w: [f64; 4]| -> [f64; 4] {
        let jx = apply_j(x);
        let jw = apply_j(w);
        let t1 = bracket(&c, x, w);
        let t2 = bracket(&c, jx, jw);
        let t3 = apply_j(bracket(&c, jx, w));
        let t4 = apply_j(bracket(&c, x, jw));
        let mut out = [0.0; 4];
        for k in 0..4 {
            out[k] = t1[k] + t2[k] + t3[k] - t4[k];
        }
        out
    };
    let mut coeffs = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let bij = b(basis(i), basis(j));
            for k in 0..4 {
                let bik = b(basis(i), basis(k));
                // the metric-derivative terms vanish: the frame is orthonormal
                coeffs[i][j][k] = 0.25 * bij[k] - 0.25 * bik[j];
            }
        }
    }
    Ok(FrameConnection {
        coeffs,
        structure: c,
    })
}

/// Curvature traces recomputed at the connection level.
#[derive(Debug, Clone)]
pub struct OracleCurvature {
    pub chern_scalar: f64,
    pub third_scalar: f64,
    pub riemannian_scalar: f64,
    pub first_ricci: (f64, f64),
    pub second_ricci: (f64, f64),
    /// `chern_curvature[a][b][j][k] = g(R_{E_a, E_b} E_j, E_k)` for the Chern
    /// connection.
    pub chern_curvature: [[[[f64; 4]; 4]; 4]; 4],
}

/// Rebuilds the curvature of the Chern connection (and the Levi-Civita
/// scalar) from connection coefficients and their finite-difference
/// t-derivatives, then traces.
pub fn curvature_oracle(p: &ProfilePair, t: f64) -> Result<OracleCurvature> {
    p.check_interior(t)?;

    let margin = t.min(p.l() - t);
    let step = (p.l() / 256.0).min(margin / 4.5);
    let nodes: Vec<f64> = (-4..=4).map(|k| t + k as f64 * step).collect();
    let dw = fornberg_weights(t, &nodes, 1);

    let chern = connection_oracle(p, t)?;
    let koszul_here = koszul_coeffs(p, t)?;

    // t-derivatives of both sets of connection coefficients
    let mut d_chern = [[[0.0; 4]; 4]; 4];
    let mut d_koszul = [[[0.0; 4]; 4]; 4];
    for (idx, &x) in nodes.iter().enumerate() {
        let cx = connection_oracle(p, x)?.coeffs;
        let gx = koszul_coeffs(p, x)?;
        let w = dw[1][idx];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    d_chern[i][j][k] += w * cx[i][j][k];
                    d_koszul[i][j][k] += w * gx[i][j][k];
                }
            }
        }
    }

    let riemann = |gamma: &[[[f64; 4]; 4]; 4], d_gamma: &[[[f64; 4]; 4]; 4]| {
        let c = &chern.structure;
        let mut r = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        // E_a . Gamma^k_{bj}: only E_4 = d/dt differentiates
                        let mut v = 0.0;
                        if a == 3 {
                            v += d_gamma[b][j][k];
                        }
                        if b == 3 {
                            v -= d_gamma[a][j][k];
                        }
                        for m in 0..4 {
                            v += gamma[b][j][m] * gamma[a][m][k]
                                - gamma[a][j][m] * gamma[b][m][k]
                                - c[a][b][m] * gamma[m][j][k];
                        }
                        r[a][b][j][k] = v;
                    }
                }
            }
        }
        r
    };

    let rc = riemann(&chern.coeffs, &d_chern);
    let rho12 = -(rc[0][1][0][1] + rc[0][1][2][3]);
    let rho34 = -(rc[2][3][0][1] + rc[2][3][2][3]);
    let r12 = -(rc[0][1][0][1] + rc[2][3][0][1]);
    let r34 = -(rc[0][1][2][3] + rc[2][3][2][3]);
    let mut third = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            third += rc[a][b][a][b];
        }
    }
    third *= -0.5;

    let rg = riemann(&koszul_here, &d_koszul);
    let mut scalar_g = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            scalar_g += rg[a][b][b][a];
        }
    }

    Ok(OracleCurvature {
        chern_scalar: rho12 + rho34,
        third_scalar: third,
        riemannian_scalar: scalar_g,
        first_ricci: (rho12, rho34),
        second_ricci: (r12, r34),
        chern_curvature: rc,
    })
}

/// Levi-Civita connection coefficients from the Koszul formula on an
/// orthonormal frame:
/// 2 g(D_{E_i} E_j, E_k) = c_{ijk} - c_{ikj} - c_{jki}.
fn koszul_coeffs(p: &ProfilePair, t: f64) -> Result<[[[f64; 4]; 4]; 4]> {
    let c = structure_constants(p, t);
    let mut g = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                g[i][j][k] = 0.5 * (c[i][j][k] - c[i][k][j] - c[j][k][i]);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{self, corpus};

    #[test]
    fn connection_matches_tabulated_entries() {
        // generic profile, compare against the closed-form connection table
        let p = corpus::smooth(2.0, 0.3, 1.2, -0.1, std::f64::consts::PI);
        for i in 1..8 {
            let t = p.l() * i as f64 / 8.0;
            let (f, h) = (p.f(t), p.h(t));
            let (fp, hp) = (p.f_deriv(t, 1), p.h_deriv(t, 1));
            let con = connection_oracle(&p, t).unwrap();
            let q = f / (h * h);
            // nabla_{E1}: -q E4, q E3, -q E2, q E1
            assert!((con.coeffs[0][0][3] + q).abs() < 1e-12);
            assert!((con.coeffs[0][1][2] - q).abs() < 1e-12);
            assert!((con.coeffs[0][2][1] + q).abs() < 1e-12);
            assert!((con.coeffs[0][3][0] - q).abs() < 1e-12);
            // nabla_{E3} E1 = ((-f h' + 2h)/(f h)) E2
            let expected = (-f * hp + 2.0 * h) / (f * h);
            assert!((con.coeffs[2][0][1] - expected).abs() < 1e-12);
            // nabla_{E3} E3 = (-f'/f) E4, nabla_{E3} E4 = (f'/f) E3
            assert!((con.coeffs[2][2][3] + fp / f).abs() < 1e-12);
            assert!((con.coeffs[2][3][2] - fp / f).abs() < 1e-12);
            // last row vanishes: nabla_{E4} E_j = 0
            for j in 0..4 {
                for k in 0..4 {
                    assert!(con.coeffs[3][j][k].abs() < 1e-12, "Gamma[4][{j}][{k}]");
                }
            }
        }
    }

    #[test]
    fn connection_is_hermitian() {
        // nabla J = 0: Gamma^k_{i,Jj} = J(Gamma_{i,j}) component-wise
        let p = corpus::smooth(1.8, -0.25, 1.0, 0.12, std::f64::consts::PI);
        let t = 1.1;
        let con = connection_oracle(&p, t).unwrap();
        // J maps (e1,e2,e3,e4) -> (e2,-e1,e4,-e3); check columns pairwise
        let jmap = [(0usize, 1usize, 1.0), (2, 3, 1.0)];
        for i in 0..4 {
            for &(a, b, sign) in &jmap {
                // nabla_{E_i}(J E_a) = J nabla_{E_i} E_a
                for k in 0..4 {
                    let lhs = sign * con.coeffs[i][b][k];
                    let jcol: f64 = (0..4).map(|m| J[k][m] * con.coeffs[i][a][m]).sum();
                    assert!((lhs - jcol).abs() < 1e-12, "i={i} a={a} k={k}");
                }
            }
        }
    }

    #[test]
    fn hopf_oracle_traces() {
        let p = corpus::hopf(std::f64::consts::PI);
        let o = curvature_oracle(&p, 1.3).unwrap();
        assert!((o.chern_scalar - 4.0).abs() < 1e-10);
        assert!((o.third_scalar - 2.0).abs() < 1e-10);
        assert!((o.riemannian_scalar - 6.0).abs() < 1e-10);
        assert!((o.first_ricci.0 - 4.0).abs() < 1e-10 && o.first_ricci.1.abs() < 1e-10);
        assert!((o.second_ricci.0 - 2.0).abs() < 1e-10 && (o.second_ricci.1 - 2.0).abs() < 1e-10);
    }

    #[test]
    fn curvature_table_entry_f_second_over_f() {
        // g(R_{E3,E4} E3, E4) = f''/f
        let p = corpus::smooth(2.1, 0.2, 1.3, 0.1, std::f64::consts::PI);
        for i in 1..6 {
            let t = p.l() * i as f64 / 6.0;
            let o = curvature_oracle(&p, t).unwrap();
            let expected = p.f_deriv(t, 2) / p.f(t);
            assert!(
                (o.chern_curvature[2][3][2][3] - expected).abs() < 1e-9,
                "t = {t}"
            );
        }
    }

    #[test]
    fn oracle_agrees_with_closed_forms_on_corpus() {
        let mut profiles = corpus::seeded(6, corpus::DEFAULT_SEED);
        profiles.push(corpus::hopf(std::f64::consts::PI));
        profiles.push(corpus::kahler_sin());
        for p in &profiles {
            for i in 1..12 {
                let t = p.l() * i as f64 / 12.0;
                let o = curvature_oracle(p, t).unwrap();
                let sc = frame::chern_scalar(p, t).unwrap();
                let s3 = frame::third_scalar(p, t).unwrap();
                let sg = frame::riemannian_scalar(p, t).unwrap();
                let rho = frame::first_ricci(p, t).unwrap();
                let r = frame::second_ricci(p, t).unwrap();
                let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
                assert!(rel(o.chern_scalar, sc) <= 1e-8, "sC at t = {t}");
                assert!(rel(o.third_scalar, s3) <= 1e-8, "s at t = {t}");
                assert!(rel(o.riemannian_scalar, sg) <= 1e-8, "sg at t = {t}");
                assert!(rel(o.first_ricci.0, rho.0) <= 1e-8);
                assert!(rel(o.first_ricci.1, rho.1) <= 1e-8);
                assert!(rel(o.second_ricci.0, r.0) <= 1e-8);
                assert!(rel(o.second_ricci.1, r.1) <= 1e-8);
            }
        }
    }
}
