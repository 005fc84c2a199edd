use serde::{Deserialize, Serialize};

use super::dist::{Distribution, dist_sf};
use super::DenseMatrix;
use crate::error::{Error, Result};

/// Relative size below which a Householder pivot marks a dependent column.
const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub fitted: Vec<f64>,
    pub r_squared: f64,
    pub f_statistic: f64,
    pub f_p_value: f64,
    pub rss: f64,
    pub tss: f64,
    pub nobs: usize,
    pub df_residual: usize,
}

impl OlsFit {
    /// Number of estimated coefficients.
    pub fn k(&self) -> usize {
        self.coefficients.len()
    }

    /// Gaussian log-likelihood at the ML variance `rss / n`.
    pub fn log_likelihood(&self) -> f64 {
        let n = self.nobs as f64;
        -0.5 * n * ((2.0 * std::f64::consts::PI * self.rss / n).ln() + 1.0)
    }

    pub fn aic(&self) -> f64 {
        -2.0 * self.log_likelihood() + 2.0 * self.k() as f64
    }

    pub fn bic(&self) -> f64 {
        -2.0 * self.log_likelihood() + self.k() as f64 * (self.nobs as f64).ln()
    }
}

/// Ordinary least squares of `y` on the columns of `x`, optionally with a
/// leading intercept. Solved by Householder QR.
pub fn ols_solve(x: &DenseMatrix, y: &[f64], intercept: bool) -> Result<OlsFit> {
    let design = if intercept { x.with_intercept() } else { x.clone() };
    ols_design(&design, y, intercept).map_err(|e| match e {
        Error::SingularDesign { column } if intercept => Error::SingularDesign {
            column: column.saturating_sub(1),
        },
        other => other,
    })
}

/// OLS on a design matrix used as-is. `centered` selects the centered
/// (constant in the model) or uncentered definition of R² and the F test.
pub(crate) fn ols_design(x: &DenseMatrix, y: &[f64], centered: bool) -> Result<OlsFit> {
    let n = x.rows();
    let k = x.cols();
    if y.len() != n {
        return Err(Error::Dimension(format!(
            "target has {} values but design has {n} rows",
            y.len()
        )));
    }
    if n <= k {
        return Err(Error::insufficient("least squares (rows > columns)", k + 1, n));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite value in regression target".into()));
    }

    let qr = HouseholderQr::new(x)?;
    let qty = qr.apply_qt(y);
    let beta = qr.solve_upper(&qty[..k]);

    let fitted = x.matvec(&beta)?;
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();

    let df_residual = n - k;
    let sigma2 = rss / df_residual as f64;
    let rinv = qr.r_inverse();
    let t_dist = Distribution::StudentT(df_residual as f64);
    let mut standard_errors = Vec::with_capacity(k);
    let mut t_values = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for j in 0..k {
        // diag((RᵀR)⁻¹) = row norms of R⁻¹
        let v: f64 = (j..k).map(|c| rinv[(j, c)].powi(2)).sum();
        let se = (sigma2 * v).sqrt();
        let t = beta[j] / se;
        let p = if t.is_nan() {
            1.0
        } else {
            (2.0 * dist_sf(t_dist, t.abs())?).min(1.0)
        };
        standard_errors.push(se);
        t_values.push(t);
        p_values.push(p);
    }

    let tss = if centered {
        let mean = y.iter().sum::<f64>() / n as f64;
        y.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
    } else {
        y.iter().map(|v| v * v).sum::<f64>()
    };
    let scale = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let negligible = n as f64 * (1e-14 * scale).powi(2);
    let r_squared = if tss <= negligible {
        0.0
    } else {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    };

    let df_model = if centered { k - 1 } else { k };
    let (f_statistic, f_p_value) = if df_model == 0 || tss <= negligible {
        (0.0, 1.0)
    } else {
        let f = ((tss - rss).max(0.0) / df_model as f64) / sigma2;
        if f.is_finite() {
            let p = dist_sf(
                Distribution::FisherF(df_model as f64, df_residual as f64),
                f,
            )?;
            (f, p)
        } else {
            (f64::INFINITY, 0.0)
        }
    };

    Ok(OlsFit {
        coefficients: beta,
        standard_errors,
        t_values,
        p_values,
        residuals,
        fitted,
        r_squared,
        f_statistic,
        f_p_value,
        rss,
        tss,
        nobs: n,
        df_residual,
    })
}

/// Compact Householder QR of a tall matrix.
pub(crate) struct HouseholderQr {
    /// Householder vectors below the diagonal, R on and above it.
    qr: DenseMatrix,
    /// Scaling factors of the reflectors.
    tau: Vec<f64>,
    k: usize,
}

impl HouseholderQr {
    pub(crate) fn new(x: &DenseMatrix) -> Result<Self> {
        let n = x.rows();
        let k = x.cols();
        let col_norms: Vec<f64> = (0..k)
            .map(|j| (0..n).map(|i| x[(i, j)].powi(2)).sum::<f64>().sqrt())
            .collect();
        let mut qr = x.clone();
        let mut tau = vec![0.0; k];
        for j in 0..k {
            let norm: f64 = (j..n).map(|i| qr[(i, j)].powi(2)).sum::<f64>().sqrt();
            if col_norms[j] == 0.0 || norm <= RANK_TOL * col_norms[j] {
                return Err(Error::SingularDesign { column: j });
            }
            let alpha = if qr[(j, j)] > 0.0 { -norm } else { norm };
            let v0 = qr[(j, j)] - alpha;
            // v = (1, x[j+1..]/v0), tau = -v0/alpha
            for i in (j + 1)..n {
                qr[(i, j)] /= v0;
            }
            tau[j] = -v0 / alpha;
            qr[(j, j)] = alpha;
            for c in (j + 1)..k {
                let mut s = qr[(j, c)];
                for i in (j + 1)..n {
                    s += qr[(i, j)] * qr[(i, c)];
                }
                s *= tau[j];
                qr[(j, c)] -= s;
                for i in (j + 1)..n {
                    let vij = qr[(i, j)];
                    qr[(i, c)] -= s * vij;
                }
            }
        }
        Ok(Self { qr, tau, k })
    }

    pub(crate) fn apply_qt(&self, y: &[f64]) -> Vec<f64> {
        let n = self.qr.rows();
        let mut out = y.to_vec();
        for j in 0..self.k {
            let mut s = out[j];
            for i in (j + 1)..n {
                s += self.qr[(i, j)] * out[i];
            }
            s *= self.tau[j];
            out[j] -= s;
            for i in (j + 1)..n {
                out[i] -= s * self.qr[(i, j)];
            }
        }
        out
    }

    pub(crate) fn solve_upper(&self, b: &[f64]) -> Vec<f64> {
        let k = self.k;
        let mut x = vec![0.0; k];
        for i in (0..k).rev() {
            let mut s = b[i];
            for c in (i + 1)..k {
                s -= self.qr[(i, c)] * x[c];
            }
            x[i] = s / self.qr[(i, i)];
        }
        x
    }

    pub(crate) fn r_inverse(&self) -> DenseMatrix {
        let k = self.k;
        let mut inv = DenseMatrix::zeros(k, k);
        for col in 0..k {
            for i in (0..=col).rev() {
                let mut s = if i == col { 1.0 } else { 0.0 };
                for c in (i + 1)..=col {
                    s -= self.qr[(i, c)] * inv[(c, col)];
                }
                inv[(i, col)] = s / self.qr[(i, i)];
            }
        }
        inv
    }
}

/// Residuals of each column of `y` regressed on `x` (no intercept added).
pub(crate) fn residualize(x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
    let qr = HouseholderQr::new(x)?;
    let mut out = y.clone();
    for c in 0..y.cols() {
        let col = y.column(c);
        let qty = qr.apply_qt(&col);
        let beta = qr.solve_upper(&qty[..x.cols()]);
        let fit = x.matvec(&beta)?;
        for i in 0..y.rows() {
            out[(i, c)] = col[i] - fit[i];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent route: solve the normal equations by Gauss-Jordan.
    fn normal_equations(x: &DenseMatrix, y: &[f64]) -> Vec<f64> {
        let k = x.cols();
        let xtx = x.gram();
        let xty: Vec<f64> = (0..k)
            .map(|j| (0..x.rows()).map(|i| x[(i, j)] * y[i]).sum())
            .collect();
        let mut a: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                let mut r: Vec<f64> = xtx.row(i).to_vec();
                r.push(xty[i]);
                r
            })
            .collect();
        for i in 0..k {
            let piv = (i..k).max_by(|&p, &q| a[p][i].abs().total_cmp(&a[q][i].abs())).unwrap();
            a.swap(i, piv);
            let d = a[i][i];
            for v in a[i].iter_mut() {
                *v /= d;
            }
            for r in 0..k {
                if r != i {
                    let f = a[r][i];
                    for c in 0..=k {
                        a[r][c] -= f * a[i][c];
                    }
                }
            }
        }
        a.iter().map(|r| r[k]).collect()
    }

    #[test]
    fn exact_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let y: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let x = DenseMatrix::from_columns(&[&xs]).unwrap();
        let fit = ols_solve(&x, &y, true).unwrap();
        assert!((fit.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 2.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!(fit.rss < 1e-20);
    }

    #[test]
    fn constant_target_has_no_signal() {
        let xs = [0.3, -1.2, 4.0, 2.2, 0.0, 7.5];
        let y = [0.1; 6];
        let x = DenseMatrix::from_columns(&[&xs]).unwrap();
        let fit = ols_solve(&x, &y, true).unwrap();
        assert!(fit.coefficients[1].abs() < 1e-14);
        assert_eq!(fit.r_squared, 0.0);
    }

    #[test]
    fn matches_normal_equations_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 200;
        let k = 5;
        let data: Vec<f64> = (0..n * k).map(|_| rng.random_range(-1.0..1.0)).collect();
        let x = DenseMatrix::new(n, k, data).unwrap();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let fit = ols_solve(&x, &y, false).unwrap();
        let oracle = normal_equations(&x, &y);
        for (a, b) in fit.coefficients.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8);
        }
        // residuals orthogonal to every column
        for j in 0..k {
            let dot: f64 = (0..n).map(|i| x[(i, j)] * fit.residuals[i]).sum();
            assert!(dot.abs() < 1e-8);
        }
    }

    #[test]
    fn singular_design_names_column() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0];
        let b = [2.0, 4.0, 6.0, 8.0, 10.0];
        let x = DenseMatrix::from_columns(&[&a, &b]).unwrap();
        let err = ols_solve(&x, &[1.0, 0.0, 2.0, 1.0, 3.0], true).unwrap_err();
        assert!(matches!(err, Error::SingularDesign { column: 1 }));
    }

    #[test]
    fn too_few_rows() {
        let x = DenseMatrix::from_columns(&[&[1.0, 2.0]]).unwrap();
        assert!(matches!(
            ols_solve(&x, &[1.0, 2.0], true),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn r_squared_identity_with_intercept() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 60;
        let data: Vec<f64> = (0..n * 3).map(|_| rng.random_range(-2.0..2.0)).collect();
        let x = DenseMatrix::new(n, 3, data).unwrap();
        let y: Vec<f64> = (0..n).map(|i| x[(i, 0)] - 0.5 * x[(i, 2)] + rng.random_range(-1.0..1.0)).collect();
        let fit = ols_solve(&x, &y, true).unwrap();
        assert!((fit.r_squared - (1.0 - fit.rss / fit.tss)).abs() < 1e-10);
        assert!(fit.residuals.iter().sum::<f64>().abs() < 1e-10);
        assert!(fit.p_values.iter().all(|p| (0.0..=1.0).contains(p)));
    }
}
