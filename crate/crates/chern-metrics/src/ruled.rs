//! Admissible Kahler metrics on ruled surfaces and their conformal Chern
//! scalar curvature.
//!
//! On the projectivization of O + L_m over a genus-g curve, an admissible
//! Kahler metric is determined by a parameter x in (0, 1) and a fiber profile
//! F(z) on the momentum interval [-1, 1] subject to
//!
//!   (i) F > 0 on (-1, 1), (ii) F(+-1) = 0, (iii) F'(+-1) = -+2(1 +- x).
//!
//! Conformally rescaling by 1/(z + b)^2 with b > 1 gives a Hermitian metric
//! whose Chern scalar curvature is
//!
//!   sC~ = (2 sS x (z+b)^2 - (z+b)^2 F'' + 4 (z+b) F' - 4 F) / (2 (1 + x z)),
//!
//! where 2 sS is the constant scalar curvature of the base. Demanding sC~
//! constant makes F solve an Euler equation; quartic F gives the exact
//! zero-scalar family, and the general solution with one logarithmic term
//! covers constant nonzero values.

use crate::error::{Error, Result};
use crate::numerics::fornberg_weights;

/// Base curve data: genus and the degree of the twisting line bundle. The
/// base scalar curvature constant is the exact rational (2 - 2 genus) / m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surface {
    pub genus: i64,
    pub m: u32,
}

impl Surface {
    pub fn base_scalar(&self) -> f64 {
        (2 - 2 * self.genus) as f64 / self.m as f64
    }

    /// Exact rational equality test against p/q.
    pub fn base_scalar_equals(&self, p: i64, q: i64) -> bool {
        debug_assert!(q != 0);
        (2 - 2 * self.genus) * q == p * self.m as i64
    }
}

/// Fiber profile representation. Quartic and Euler forms are kept distinct:
/// the logarithmic particular solution is not a polynomial, so the two do
/// not interconvert.
#[derive(Debug, Clone, Copy)]
pub enum FiberProfile {
    /// F = (1 - z^2)((1 + x z) - c (1 - z^2)).
    Quartic { c: f64 },
    /// F = c1 (z+b)^4 + c2 (z+b) + y_p(z).
    Euler { c1: f64, c2: f64 },
}

/// One admissible metric together with its conformal Chern scalar constant.
#[derive(Debug, Clone)]
pub struct AdmissibleSolution {
    /// Present when the parameters match an integer genus/degree pair.
    pub surface: Option<Surface>,
    pub x: f64,
    pub b: f64,
    /// Base scalar curvature constant s_Sigma.
    pub s_sigma: f64,
    /// The constant conformal Chern scalar curvature sC~.
    pub chern_constant: f64,
    pub fiber: FiberProfile,
}

impl AdmissibleSolution {
    /// F(z) and derivatives up to second order.
    pub fn fiber_deriv(&self, z: f64, k: usize) -> f64 {
        match self.fiber {
            FiberProfile::Quartic { c } => quartic_deriv(self.x, c, z, k),
            FiberProfile::Euler { c1, c2 } => {
                let p = EulerCoefficients {
                    x: self.x,
                    b: self.b,
                    c1,
                    c2,
                    chern_constant: self.chern_constant,
                    s_sigma: self.s_sigma,
                };
                euler_general_f(&p, z, k).expect("z + b > 0 for stored solutions")
            }
        }
    }

    pub fn fiber_value(&self, z: f64) -> f64 {
        self.fiber_deriv(z, 0)
    }
}

fn check_fiber_domain(z: f64) -> Result<()> {
    if z > -1.0 && z < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfFiberDomain { z })
    }
}

fn quartic_deriv(x: f64, c: f64, z: f64, k: usize) -> f64 {
    // F = u v with u = 1 - z^2, v = (1 + x z) - c u
    let u = [1.0 - z * z, -2.0 * z, -2.0];
    let v = [1.0 + x * z - c * u[0], x - c * u[1], -c * u[2]];
    match k {
        0 => u[0] * v[0],
        1 => u[1] * v[0] + u[0] * v[1],
        2 => u[2] * v[0] + 2.0 * u[1] * v[1] + u[0] * v[2],
        _ => panic!("fiber derivatives supported up to order 2"),
    }
}

/// Scalar curvature of the admissible Kahler metric,
/// s^g = 2 sS x / (1 + x z) - F''(z) / (1 + x z).
pub fn admissible_scalar(sol: &AdmissibleSolution, z: f64) -> Result<f64> {
    check_fiber_domain(z)?;
    Ok((2.0 * sol.s_sigma * sol.x - sol.fiber_deriv(z, 2)) / (1.0 + sol.x * z))
}

/// Laplacian of a z-dependent function, Delta p = -[F p']' / (1 + x z),
/// with p differentiated by a local stencil.
pub fn admissible_laplacian(
    sol: &AdmissibleSolution,
    p: impl Fn(f64) -> f64,
    z: f64,
) -> Result<f64> {
    check_fiber_domain(z)?;
    let margin = (1.0 - z.abs()).min(0.25);
    let step = (margin / 5.0).min(0.02);
    let nodes: Vec<f64> = (-4..=4).map(|k| z + k as f64 * step).collect();
    let w = fornberg_weights(z, &nodes, 2);
    let p1: f64 = nodes.iter().zip(&w[1]).map(|(&s, &c)| c * p(s)).sum();
    let p2: f64 = nodes.iter().zip(&w[2]).map(|(&s, &c)| c * p(s)).sum();
    Ok(laplacian_from_derivs(sol, z, p1, p2))
}

/// Laplacian with caller-supplied first and second derivatives of p.
pub fn laplacian_from_derivs(sol: &AdmissibleSolution, z: f64, p1: f64, p2: f64) -> f64 {
    -(sol.fiber_deriv(z, 1) * p1 + sol.fiber_deriv(z, 0) * p2) / (1.0 + sol.x * z)
}

/// Conformal Chern scalar curvature of the rescaled metric g / (z + b)^2:
/// (2 sS x (z+b)^2 - (z+b)^2 F'' + 4 (z+b) F' - 4 F) / (2 (1 + x z)).
pub fn conformal_chern(sol: &AdmissibleSolution, z: f64) -> Result<f64> {
    check_fiber_domain(z)?;
    let w = z + sol.b;
    if w <= 0.0 {
        return Err(Error::ConformalFactorDomain { val: w });
    }
    let f0 = sol.fiber_deriv(z, 0);
    let f1 = sol.fiber_deriv(z, 1);
    let f2 = sol.fiber_deriv(z, 2);
    Ok(
        (2.0 * sol.s_sigma * sol.x * w * w - w * w * f2 + 4.0 * w * f1 - 4.0 * f0)
            / (2.0 * (1.0 + sol.x * z)),
    )
}

/// The same quantity through the Kahler conformal-change identity
/// sC~ = e^{-2f} (s^g / 2 + 2 Delta f) with f = -ln(z + b); an independent
/// route used to validate [`conformal_chern`].
pub fn conformal_chern_via_kahler_change(sol: &AdmissibleSolution, z: f64) -> Result<f64> {
    check_fiber_domain(z)?;
    let w = z + sol.b;
    if w <= 0.0 {
        return Err(Error::ConformalFactorDomain { val: w });
    }
    let sg = admissible_scalar(sol, z)?;
    // f = -ln(z+b): f' = -1/(z+b), f'' = 1/(z+b)^2
    let lap = laplacian_from_derivs(sol, z, -1.0 / w, 1.0 / (w * w));
    Ok(w * w * (0.5 * sg + 2.0 * lap))
}

/// The exact zero-Chern-scalar solution for b > 1:
/// x = 4b/(3b^2+1), s_Sigma = -1/x, c = 1/(3b^2+1), sC~ = 0.
pub fn solve_zero_chern(b: f64) -> Result<AdmissibleSolution> {
    if b <= 1.0 {
        return Err(Error::BParameterDomain { b });
    }
    let q = 3.0 * b * b + 1.0;
    let x = 4.0 * b / q;
    Ok(AdmissibleSolution {
        surface: None,
        x,
        b,
        s_sigma: -q / (4.0 * b),
        chern_constant: 0.0,
        fiber: FiberProfile::Quartic { c: 1.0 / q },
    })
}

/// Factored form of the zero-Chern fiber profile,
/// F = (1 - z^2)(z + 3b)(z + b) / (3b^2 + 1).
pub fn zero_chern_factored(b: f64, z: f64) -> f64 {
    (1.0 - z * z) * (z + 3.0 * b) * (z + b) / (3.0 * b * b + 1.0)
}

/// The coefficient-comparison system for quartic F: four equations linear in
/// the quadruple (x, c, s_Sigma, sC~) once the products s_Sigma x and sC~ x
/// are frozen at a reference x. Returns (matrix, rhs) with unknowns ordered
/// (x, c, s_sigma, chern_constant).
pub fn zero_chern_linear_system(b: f64, x_ref: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let matrix = vec![
        vec![2.0, -8.0 * b, 0.0, 0.0],
        vec![0.0, -12.0 * b * b - 4.0, -2.0 * x_ref, 0.0],
        vec![-6.0 * b * b, -8.0 * b, -4.0 * b * x_ref, 2.0 * x_ref],
        vec![-4.0 * b, 4.0 * b * b - 4.0, -2.0 * b * b * x_ref, 2.0],
    ];
    let rhs = vec![0.0, -2.0, -4.0 * b, 2.0 * b * b - 4.0];
    (matrix, rhs)
}

/// The unique b > 1 with x = 4b/(3b^2+1) for x = m/(2 genus - 2); requires
/// genus >= 2 and degree m < 2 genus - 2 (at m = 2 genus - 2 the root
/// degenerates to b = 1, where F loses positivity).
pub fn admissible_b_for_degree(genus: i64, m: u32) -> Result<f64> {
    assert!(genus >= 2, "construction requires genus >= 2");
    let bound = 2 * genus - 2;
    if m as i64 > bound {
        return Err(Error::DegreeBound { m, bound });
    }
    let x = m as f64 / bound as f64;
    // larger root of 3x b^2 - 4b + x = 0
    let b = (2.0 + (4.0 - 3.0 * x * x).sqrt()) / (3.0 * x);
    if b <= 1.0 {
        return Err(Error::BParameterDomain { b });
    }
    Ok(b)
}

/// Parameters of the Euler-equation general solution.
#[derive(Debug, Clone, Copy)]
pub struct EulerCoefficients {
    pub x: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    pub chern_constant: f64,
    pub s_sigma: f64,
}

/// General solution F = c1 (z+b)^4 + c2 (z+b) + y_p of the Euler equation
/// (z+b)^2 F'' - 4 (z+b) F' + 4 F = 2 sS x (z+b)^2 - 2 (1+xz) sC~, where
///
/// y_p = (2/3) x sC~ (z+b) ln(z+b)
///     + (x/18) ((13b + 4z) sC~ - 6 sS (b + 3z)(z+b)) - sC~/2.
///
/// Returns the k-th derivative for k = 0, 1, 2.
pub fn euler_general_f(p: &EulerCoefficients, z: f64, k: usize) -> Result<f64> {
    let w = z + p.b;
    if w <= 0.0 {
        return Err(Error::ConformalFactorDomain { val: w });
    }
    let (x, sc, ss) = (p.x, p.chern_constant, p.s_sigma);
    Ok(match k {
        0 => {
            let yp = 2.0 / 3.0 * x * sc * w * w.ln()
                + x / 18.0 * ((13.0 * p.b + 4.0 * z) * sc - 6.0 * ss * (p.b + 3.0 * z) * w)
                - 0.5 * sc;
            p.c1 * w.powi(4) + p.c2 * w + yp
        }
        1 => {
            let yp1 = 2.0 / 3.0 * x * sc * (w.ln() + 1.0)
                + x / 18.0 * (4.0 * sc - 6.0 * ss * (4.0 * p.b + 6.0 * z));
            4.0 * p.c1 * w.powi(3) + p.c2 + yp1
        }
        2 => {
            let yp2 = 2.0 / 3.0 * x * sc / w - 2.0 * x * ss;
            12.0 * p.c1 * w * w + yp2
        }
        _ => panic!("fiber derivatives supported up to order 2"),
    })
}

/// Residual of the Euler equation at z; vanishes identically for any
/// coefficients, which pins down the particular solution.
pub fn euler_ode_residual(p: &EulerCoefficients, z: f64) -> Result<f64> {
    let w = z + p.b;
    let lhs = w * w * euler_general_f(p, z, 2)? - 4.0 * w * euler_general_f(p, z, 1)?
        + 4.0 * euler_general_f(p, z, 0)?;
    let rhs = 2.0 * p.s_sigma * p.x * w * w - 2.0 * (1.0 + p.x * z) * p.chern_constant;
    Ok(lhs - rhs)
}

/// Coefficients of the constant-sC~ solution in closed form, with
/// A = 3bx(b^2-1)^2 ln((b-1)/(b+1)) + 6b^4 x - 16 b^2 x + 12 b - 2x:
///
/// * sC~ = -6 (b^2-1)(3b^2 x - 4b + x) / A
/// * sS  = (-3x(b^2-1)(b^3 - 3b^2 x + 3b - x) ln((b-1)/(b+1))
///          + (18b^3 + 6b) x^2 + (-6b^4 - 26b^2 - 4) x + 12b) / (x A)
/// * c1  = -x ((b^2-1)(b - x) ln((b-1)/(b+1)) + 2b^2 - 3bx + 1) / A
/// * c2  = (6x(b^2-1)[(b^3 x + 3b^2 x - (x+4) b + x) ln(b-1)
///          - (b^3 x - 3b^2 x + (4-x) b - x) ln(b+1)]
///          + (48b^4 - 20b^2 - 4) x^2 + (-84b^3 + 12b) x + 48b^2) / (3A)
///
/// The resulting F satisfies all four boundary conditions.
pub fn closed_form_coefficients(x: f64, b: f64) -> Result<EulerCoefficients> {
    if b <= 1.0 {
        return Err(Error::BParameterDomain { b });
    }
    assert!(x > 0.0 && x < 1.0, "x must lie in (0, 1)");
    let b2 = b * b;
    let lneg = (b - 1.0).ln();
    let lpos = (b + 1.0).ln();
    let l = lneg - lpos;
    let a = 3.0 * b * x * (b2 - 1.0) * (b2 - 1.0) * l + 6.0 * b2 * b2 * x - 16.0 * b2 * x
        + 12.0 * b
        - 2.0 * x;
    if a.abs() < 1e-14 * (12.0 * b) {
        return Err(Error::DegenerateA { x, b });
    }
    let chern_constant = -6.0 * (b2 - 1.0) * (3.0 * b2 * x - 4.0 * b + x) / a;
    let s_sigma = (-3.0 * x * (b2 - 1.0) * (b * b2 - 3.0 * b2 * x + 3.0 * b - x) * l
        + (18.0 * b * b2 + 6.0 * b) * x * x
        + (-6.0 * b2 * b2 - 26.0 * b2 - 4.0) * x
        + 12.0 * b)
        / (x * a);
    let c1 = -x * ((b2 - 1.0) * (b - x) * l + 2.0 * b2 - 3.0 * b * x + 1.0) / a;
    let c2 = (6.0
        * x
        * (b2 - 1.0)
        * ((b * b2 * x + 3.0 * b2 * x - (x + 4.0) * b + x) * lneg
            - (b * b2 * x - 3.0 * b2 * x + (4.0 - x) * b - x) * lpos)
        + (48.0 * b2 * b2 - 20.0 * b2 - 4.0) * x * x
        + (-84.0 * b * b2 + 12.0 * b) * x
        + 48.0 * b2)
        / (3.0 * a);
    Ok(EulerCoefficients {
        x,
        b,
        c1,
        c2,
        chern_constant,
        s_sigma,
    })
}

/// All x in (0, 1) for which the closed-form coefficients hit the base
/// scalar (2 - 2 genus)/m at the given b, assembled into admissible
/// solutions. A 500-step scan locates sign changes of the transcendental
/// constraint; spurious crossings at poles of A are rejected by a residual
/// check. Solutions are ordered by increasing x.
pub fn solve_x_for_genus(genus: i64, m: u32, b: f64) -> Result<Vec<AdmissibleSolution>> {
    if b <= 1.0 {
        return Err(Error::BParameterDomain { b });
    }
    let surface = Surface { genus, m };
    let target = surface.base_scalar();
    let residual = |x: f64| match closed_form_coefficients(x, b) {
        Ok(c) => c.s_sigma - target,
        Err(_) => f64::NAN,
    };
    let (lo, hi) = (1e-3, 1.0 - 1e-3);
    let n = 500;
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let r = residual(x);
        if let Some((px, pr)) = prev {
            if r.is_finite() && pr.is_finite() && r * pr < 0.0 {
                if let Ok(root) = crate::numerics::find_root_bracketed(residual, px, x, 1e-14) {
                    // reject pole crossings
                    if residual(root).abs() < 1e-6 {
                        roots.push(root);
                    }
                }
            }
        }
        prev = Some((x, r));
    }
    if roots.is_empty() {
        return Err(Error::NoSolution {
            what: format!("no x in (0,1) matches base scalar {target} at b = {b}"),
        });
    }
    let solutions: Vec<AdmissibleSolution> = roots
        .into_iter()
        .map(|x| {
            let c = closed_form_coefficients(x, b)?;
            Ok(AdmissibleSolution {
                surface: Some(surface),
                x,
                b,
                s_sigma: c.s_sigma,
                chern_constant: c.chern_constant,
                fiber: FiberProfile::Euler { c1: c.c1, c2: c.c2 },
            })
        })
        .collect::<Result<_>>()?;
    if !solutions.iter().any(|s| check_positivity_f(s, 1001)) {
        return Err(Error::NoSolution {
            what: format!(
                "roots exist at b = {b} but none keeps the fiber profile positive"
            ),
        });
    }
    Ok(solutions)
}

/// True when F > 0 at `n_scan` points strictly inside (-1, 1).
pub fn check_positivity_f(sol: &AdmissibleSolution, n_scan: usize) -> bool {
    assert!(n_scan >= 1001);
    (1..=n_scan).all(|i| {
        let z = -1.0 + 2.0 * i as f64 / (n_scan as f64 + 1.0);
        sol.fiber_value(z) > 0.0
    })
}

/// Boundary-condition residuals of a solution's fiber profile:
/// (F(1), F(-1), F'(1) + 2(1+x), F'(-1) - 2(1-x)).
pub fn boundary_residuals(sol: &AdmissibleSolution) -> [f64; 4] {
    [
        sol.fiber_deriv(1.0, 0),
        sol.fiber_deriv(-1.0, 0),
        sol.fiber_deriv(1.0, 1) + 2.0 * (1.0 + sol.x),
        sol.fiber_deriv(-1.0, 1) - 2.0 * (1.0 - sol.x),
    ]
}
