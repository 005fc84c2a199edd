//! Granger causality F test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{dist_sf, ols_design, DenseMatrix, Distribution};
use crate::series::TradingSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrangerResult {
    pub cause: String,
    pub effect: String,
    pub lags: usize,
    /// Observations in the test regressions.
    pub nobs: usize,
    pub f_statistic: f64,
    pub df_num: usize,
    pub df_den: usize,
    pub p_value: f64,
}

impl GrangerResult {
    /// Result for a published F statistic: the numerator has `lags` degrees
    /// of freedom and the denominator `nobs - 2 lags - 1`.
    pub fn from_statistic(
        cause: impl Into<String>,
        effect: impl Into<String>,
        lags: usize,
        nobs: usize,
        f_statistic: f64,
    ) -> Result<Self> {
        if lags == 0 || nobs <= 2 * lags + 1 {
            return Err(Error::Parameter(format!(
                "{nobs} observations cannot support {lags} lags"
            )));
        }
        let df_den = nobs - 2 * lags - 1;
        let p_value = dist_sf(Distribution::FisherF(lags as f64, df_den as f64), f_statistic)?;
        Ok(Self {
            cause: cause.into(),
            effect: effect.into(),
            lags,
            nobs,
            f_statistic,
            df_num: lags,
            df_den,
            p_value,
        })
    }

    /// True when "cause does not Granger-cause effect" is rejected.
    pub fn rejects_at(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }

    pub fn null_hypothesis(&self) -> String {
        format!("{} is not a Granger cause of {}", self.cause, self.effect)
    }
}

/// Compares `effect` regressed on a constant and its own `lags` lags with
/// the same regression augmented by `lags` lags of `cause`.
pub fn granger_test(
    cause: &TradingSeries,
    effect: &TradingSeries,
    lags: usize,
    cause_name: &str,
    effect_name: &str,
) -> Result<GrangerResult> {
    if cause.dates() != effect.dates() {
        return Err(Error::Alignment(format!(
            "{cause_name} and {effect_name} are not on the same dates"
        )));
    }
    granger_test_values(cause.values(), effect.values(), lags, cause_name, effect_name)
}

pub fn granger_test_values(
    cause: &[f64],
    effect: &[f64],
    lags: usize,
    cause_name: &str,
    effect_name: &str,
) -> Result<GrangerResult> {
    if lags == 0 {
        return Err(Error::Parameter("Granger test needs at least one lag".into()));
    }
    if cause.len() != effect.len() {
        return Err(Error::Alignment(format!(
            "{cause_name} has {} values but {effect_name} has {}",
            cause.len(),
            effect.len()
        )));
    }
    let len = effect.len();
    if len <= 3 * lags + 5 {
        return Err(Error::insufficient("Granger test", 3 * lags + 6, len));
    }
    let n = len - lags;
    let mut restricted = Vec::with_capacity(n * (lags + 1));
    let mut full = Vec::with_capacity(n * (2 * lags + 1));
    let mut y = Vec::with_capacity(n);
    for t in lags..len {
        restricted.push(1.0);
        full.push(1.0);
        for i in 1..=lags {
            restricted.push(effect[t - i]);
            full.push(effect[t - i]);
        }
        for i in 1..=lags {
            full.push(cause[t - i]);
        }
        y.push(effect[t]);
    }
    let r = ols_design(&DenseMatrix::new(n, lags + 1, restricted)?, &y, true)?;
    let u = ols_design(&DenseMatrix::new(n, 2 * lags + 1, full)?, &y, true)?;
    let df_den = n - 2 * lags - 1;
    if !(u.rss > 0.0) {
        return Err(Error::Degenerate(format!("{effect_name} is fitted exactly")));
    }
    let f = ((r.rss - u.rss).max(0.0) / lags as f64) / (u.rss / df_den as f64);
    GrangerResult::from_statistic(cause_name, effect_name, lags, n, f)
}

/// Layout of the causality table.
pub fn granger_table(rows: &[GrangerResult]) -> String {
    let header = ["Null hypothesis", "Obs", "F-Statistic", "Prob."];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|g| {
            vec![
                g.null_hypothesis(),
                g.nobs.to_string(),
                format!("{:.4}", g.f_statistic),
                format!("{:.4}", g.p_value),
            ]
        })
        .collect();
    crate::format::text_table(&header, &body)
}
