//! White's heteroskedasticity test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{dist_sf, ols_design, DenseMatrix, Distribution};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhiteResult {
    pub f_statistic: f64,
    pub f_p_value: f64,
    pub n_r_squared: f64,
    pub chi2_p_value: f64,
    /// Auxiliary regressors excluding the constant; the chi-square df.
    pub df: usize,
    pub nobs: usize,
    pub cross_terms: bool,
    pub warnings: Vec<String>,
}

impl WhiteResult {
    /// Result for published statistics; the chi-square p-value is computed
    /// from `n_r_squared` on `df` degrees of freedom.
    pub fn from_statistics(
        f_statistic: f64,
        f_p_value: f64,
        n_r_squared: f64,
        df: usize,
        nobs: usize,
    ) -> Result<Self> {
        if df == 0 {
            return Err(Error::Parameter("White test needs at least one auxiliary regressor".into()));
        }
        Ok(Self {
            f_statistic,
            f_p_value,
            n_r_squared,
            chi2_p_value: dist_sf(Distribution::ChiSquare(df as f64), n_r_squared)?,
            df,
            nobs,
            cross_terms: true,
            warnings: Vec::new(),
        })
    }

    /// True when homoskedasticity is rejected by the `nR²` form.
    pub fn rejects_at(&self, alpha: f64) -> bool {
        self.chi2_p_value < alpha
    }
}

/// Regresses squared residuals on a constant, the regressors, their squares
/// and (with `cross_terms`) their pairwise products. `regressors` holds the
/// original explanatory variables without a constant column.
pub fn white_test(residuals: &[f64], regressors: &DenseMatrix, cross_terms: bool) -> Result<WhiteResult> {
    if residuals.len() != regressors.rows() {
        return Err(Error::Dimension(format!(
            "{} residuals for {} regressor rows",
            residuals.len(),
            regressors.rows()
        )));
    }
    let e2: Vec<f64> = residuals.iter().map(|e| e * e).collect();
    let mut warnings = Vec::new();
    let (fit, cross_terms) = match auxiliary_fit(&e2, regressors, cross_terms) {
        Err(Error::SingularDesign { .. }) if cross_terms => {
            warnings.push(
                "auxiliary design with cross products is rank deficient; cross terms dropped".into(),
            );
            (auxiliary_fit(&e2, regressors, false)?, false)
        }
        other => (other?, cross_terms),
    };
    let n = fit.nobs;
    let q = fit.k() - 1;
    let r2 = fit.r_squared;
    let n_r_squared = n as f64 * r2;
    let chi2_p_value = dist_sf(Distribution::ChiSquare(q as f64), n_r_squared)?;
    Ok(WhiteResult {
        f_statistic: fit.f_statistic,
        f_p_value: fit.f_p_value,
        n_r_squared,
        chi2_p_value,
        df: q,
        nobs: n,
        cross_terms,
        warnings,
    })
}

fn auxiliary_fit(e2: &[f64], x: &DenseMatrix, cross_terms: bool) -> Result<crate::numerics::OlsFit> {
    let n = x.rows();
    let k = x.cols();
    let mut cols: Vec<Vec<f64>> = vec![vec![1.0; n]];
    for j in 0..k {
        cols.push(x.column(j));
    }
    for j in 0..k {
        cols.push((0..n).map(|i| x[(i, j)] * x[(i, j)]).collect());
    }
    if cross_terms {
        for a in 0..k {
            for b in (a + 1)..k {
                cols.push((0..n).map(|i| x[(i, a)] * x[(i, b)]).collect());
            }
        }
    }
    let refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
    ols_design(&DenseMatrix::from_columns(&refs)?, e2, true)
}

pub fn white_table(w: &WhiteResult) -> String {
    let header = ["Statistic", "Value", "Prob."];
    let rows = vec![
        vec![
            "F-statistic".to_string(),
            format!("{:.4}", w.f_statistic),
            format!("{:.4}", w.f_p_value),
        ],
        vec![
            format!("nR² (chi2, df {})", w.df),
            format!("{:.4}", w.n_r_squared),
            format!("{:.4}", w.chi2_p_value),
        ],
    ];
    crate::format::text_table(&header, &rows)
}
