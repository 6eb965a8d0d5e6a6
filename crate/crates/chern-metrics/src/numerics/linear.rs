//! Small dense linear solves.

use crate::error::{Error, Result};

const MAX_DIM: usize = 8;

/// Solves `A x = b` for a small dense system (`n <= 8`).
///
/// LU factorization with partial pivoting. The condition number is estimated
/// as `||A||_inf * ||A^-1||_inf` (the inverse is cheap at these sizes); a
/// system with estimate above `1e12` is rejected as degenerate.
pub fn solve_linear(matrix: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = rhs.len();
    if n == 0 || n > MAX_DIM || matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(Error::BadDimension { n, max: MAX_DIM });
    }

    let norm_a = matrix
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0f64, f64::max);

    let mut lu: Vec<Vec<f64>> = matrix.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (pivot_row, pivot) = (k..n)
            .map(|i| (i, lu[i][k].abs()))
            .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::IllConditioned { cond: f64::INFINITY });
        }
        lu.swap(k, pivot_row);
        perm.swap(k, pivot_row);
        for i in k + 1..n {
            let factor = lu[i][k] / lu[k][k];
            lu[i][k] = factor;
            for j in k + 1..n {
                lu[i][j] -= factor * lu[k][j];
            }
        }
    }

    let solve = |b: &[f64]| -> Vec<f64> {
        let mut x: Vec<f64> = perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= lu[i][j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = lu[i][j] * x[j];
                x[i] -= t;
            }
            x[i] /= lu[i][i];
        }
        x
    };

    // ||A^-1||_inf from the explicit inverse columns
    let mut inv_rows_abs = vec![0.0f64; n];
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let col = solve(&e);
        for i in 0..n {
            inv_rows_abs[i] += col[i].abs();
        }
    }
    let cond = norm_a * inv_rows_abs.iter().fold(0.0f64, |a, &b| a.max(b));
    if !cond.is_finite() || cond > 1e12 {
        return Err(Error::IllConditioned { cond });
    }

    Ok(solve(rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        let a = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ];
        let x = solve_linear(&a, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(x, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn diagonal_system() {
        let a = vec![vec![2.0, 0.0], vec![0.0, 4.0]];
        let x = solve_linear(&a, &[2.0, 8.0]).unwrap();
        assert_eq!(x, vec![1.0, 2.0]);
    }

    #[test]
    fn residual_bound_on_generic_system() {
        let a = vec![
            vec![4.0, -2.0, 1.0, 0.5],
            vec![1.0, 5.0, -1.0, 2.0],
            vec![-3.0, 2.0, 6.0, 1.0],
            vec![0.5, 1.0, 2.0, 7.0],
        ];
        let b = [1.0, -2.0, 3.0, 0.25];
        let x = solve_linear(&a, &b).unwrap();
        let norm_b = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..4 {
            let r: f64 = (0..4).map(|j| a[i][j] * x[j]).sum::<f64>() - b[i];
            assert!(r.abs() <= 1e-10 * norm_b, "row {i} residual {r:e}");
        }
    }

    #[test]
    fn rejects_singular_matrix() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(
            solve_linear(&a, &[1.0, 2.0]),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn rejects_oversized_system() {
        let n = 9;
        let a = vec![vec![0.0; n]; n];
        assert!(matches!(
            solve_linear(&a, &vec![0.0; n]),
            Err(Error::BadDimension { .. })
        ));
    }
}
