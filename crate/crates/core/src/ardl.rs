//! Autoregressive distributed-lag regressions
//! `Y_t = c + d t + sum_i a_i Y_{t-i} + sum_x sum_j b_xj X_{t-j} + e_t`.

use std::str::FromStr;

use chrono::NaiveDate;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::AlignedPanel;
use crate::numerics::{ols_design, DenseMatrix, OlsFit};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArdlSpec {
    /// Lags of the dependent variable, `1..=endog_lags`.
    pub endog_lags: usize,
    /// Each exogenous role enters at lags `0..=m`.
    pub exog_lags: IndexMap<String, usize>,
    pub include_intercept: bool,
    pub include_trend: bool,
}

impl ArdlSpec {
    pub fn new(endog_lags: usize) -> Self {
        Self {
            endog_lags,
            exog_lags: IndexMap::new(),
            include_intercept: true,
            include_trend: false,
        }
    }

    pub fn with_exog(mut self, role: impl Into<String>, lags: usize) -> Self {
        self.exog_lags.insert(role.into(), lags);
        self
    }

    pub fn max_lag(&self) -> usize {
        self.exog_lags.values().copied().fold(self.endog_lags, usize::max)
    }

    pub fn regressor_count(&self) -> usize {
        usize::from(self.include_intercept)
            + usize::from(self.include_trend)
            + self.endog_lags
            + self.exog_lags.values().map(|m| m + 1).sum::<usize>()
    }

    pub fn validate(&self) -> Result<()> {
        if self.regressor_count() == 0 {
            return Err(Error::Parameter("ARDL specification has no regressors".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArdlDesign {
    pub matrix: DenseMatrix,
    pub target: Vec<f64>,
    pub names: Vec<String>,
    pub dates: Vec<NaiveDate>,
}

pub fn build_design(p: &AlignedPanel, dependent: &str, spec: &ArdlSpec) -> Result<ArdlDesign> {
    build_design_from(p, dependent, spec, spec.max_lag())
}

/// Design on the rows `start..` of the panel; `start` must cover the
/// largest lag. A common `start` makes fits of different orders comparable.
pub fn build_design_from(p: &AlignedPanel, dependent: &str, spec: &ArdlSpec, start: usize) -> Result<ArdlDesign> {
    spec.validate()?;
    let k = spec.max_lag();
    if start < k {
        return Err(Error::Parameter(format!("sample start {start} is before the largest lag {k}")));
    }
    let y = p.column(dependent)?;
    let exog: Vec<(&str, &[f64], usize)> = spec
        .exog_lags
        .iter()
        .map(|(role, m)| Ok((role.as_str(), p.column(role)?, *m)))
        .collect::<Result<_>>()?;
    let len = p.len();
    let cols = spec.regressor_count();
    let needed = start + cols + 3;
    if len < needed {
        return Err(Error::insufficient(
            format!("ARDL design with {cols} regressors and {start} dropped rows"),
            needed,
            len,
        ));
    }
    let mut names = Vec::with_capacity(cols);
    if spec.include_intercept {
        names.push("const".to_string());
    }
    if spec.include_trend {
        names.push("trend".to_string());
    }
    for i in 1..=spec.endog_lags {
        names.push(format!("{dependent}.L{i}"));
    }
    for (role, _, m) in &exog {
        for j in 0..=*m {
            names.push(format!("{role}.L{j}"));
        }
    }
    let mut data = Vec::with_capacity((len - start) * cols);
    for (r, t) in (start..len).enumerate() {
        if spec.include_intercept {
            data.push(1.0);
        }
        if spec.include_trend {
            data.push((r + 1) as f64);
        }
        for i in 1..=spec.endog_lags {
            data.push(y[t - i]);
        }
        for (_, x, m) in &exog {
            for j in 0..=*m {
                data.push(x[t - j]);
            }
        }
    }
    Ok(ArdlDesign {
        matrix: DenseMatrix::new(len - start, cols, data)?,
        target: y[start..].to_vec(),
        names,
        dates: p.dates()[start..].to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub name: String,
    pub estimate: f64,
    pub stderr: f64,
    pub t: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArdlFit {
    pub spec: ArdlSpec,
    pub dependent: String,
    pub coefficient_table: Vec<CoefficientRow>,
    pub ols: OlsFit,
    pub effective_n: usize,
    pub dates: Vec<NaiveDate>,
}

impl ArdlFit {
    pub fn coefficient(&self, name: &str) -> Option<&CoefficientRow> {
        self.coefficient_table.iter().find(|r| r.name == name)
    }
}

pub fn fit_ardl(p: &AlignedPanel, dependent: &str, spec: &ArdlSpec) -> Result<ArdlFit> {
    let design = build_design(p, dependent, spec)?;
    fit_design(design, dependent, spec)
}

fn fit_design(design: ArdlDesign, dependent: &str, spec: &ArdlSpec) -> Result<ArdlFit> {
    let ols = ols_design(&design.matrix, &design.target, spec.include_intercept).map_err(|e| match e {
        Error::SingularDesign { column } => Error::Numerical(format!(
            "regressor {} is linearly dependent on the others",
            design.names[column]
        )),
        other => other,
    })?;
    let coefficient_table = design
        .names
        .iter()
        .enumerate()
        .map(|(j, name)| CoefficientRow {
            name: name.clone(),
            estimate: ols.coefficients[j],
            stderr: ols.standard_errors[j],
            t: ols.t_values[j],
            p: ols.p_values[j],
        })
        .collect();
    Ok(ArdlFit {
        spec: spec.clone(),
        dependent: dependent.to_string(),
        coefficient_table,
        effective_n: ols.nobs,
        ols,
        dates: design.dates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LagCriterion {
    Aic,
    #[default]
    Bic,
}

impl FromStr for LagCriterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aic" => Ok(Self::Aic),
            "bic" => Ok(Self::Bic),
            other => Err(Error::Parameter(format!("unknown criterion {other:?} (expected aic or bic)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagSearch {
    pub max_endog: usize,
    pub max_exog: usize,
    pub exog: Vec<String>,
    pub criterion: LagCriterion,
    pub include_intercept: bool,
    pub include_trend: bool,
}

/// Searches endogenous lags `0..=max_endog` and, for each exogenous role,
/// "excluded" or lags `0..=max_exog`. Every candidate is fitted on the
/// sample that drops the largest possible lag; the first minimum of the
/// criterion wins.
pub fn lag_order_select(p: &AlignedPanel, dependent: &str, search: &LagSearch) -> Result<ArdlSpec> {
    let start = search.max_endog.max(if search.exog.is_empty() { 0 } else { search.max_exog });
    let options = search.max_exog + 2; // excluded, 0..=max_exog
    let combos = options.pow(search.exog.len() as u32);
    let mut best: Option<(f64, ArdlSpec)> = None;
    for n in 0..=search.max_endog {
        for combo in 0..combos {
            let mut spec = ArdlSpec {
                endog_lags: n,
                exog_lags: IndexMap::new(),
                include_intercept: search.include_intercept,
                include_trend: search.include_trend,
            };
            let mut c = combo;
            for role in &search.exog {
                let choice = c % options;
                c /= options;
                if choice > 0 {
                    spec.exog_lags.insert(role.clone(), choice - 1);
                }
            }
            if spec.regressor_count() == 0 {
                continue;
            }
            let design = build_design_from(p, dependent, &spec, start)?;
            let fit = ols_design(&design.matrix, &design.target, spec.include_intercept)?;
            let score = match search.criterion {
                LagCriterion::Aic => fit.aic(),
                LagCriterion::Bic => fit.bic(),
            };
            if best.as_ref().is_none_or(|(b, _)| score < *b) {
                best = Some((score, spec));
            }
        }
    }
    best.map(|(_, s)| s)
        .ok_or_else(|| Error::Parameter("lag search grid has no admissible candidate".into()))
}

/// Coefficient table layout: Explanatory Variable, Coefficient, Standard
/// Error, T-value, P-value.
pub fn coefficient_table(fit: &ArdlFit) -> String {
    let header = ["Explanatory Variable", "Coefficient", "Standard Error", "T-value", "P-value"];
    let rows: Vec<Vec<String>> = fit
        .coefficient_table
        .iter()
        .map(|r| {
            let name = if r.name == "const" { "C".to_string() } else { r.name.clone() };
            vec![
                name,
                format!("{:.7}", r.estimate),
                format!("{:.7}", r.stderr),
                format!("{:.4}", r.t),
                format!("{:.4}", r.p),
            ]
        })
        .collect();
    let mut out = crate::format::text_table(&header, &rows);
    out.push_str(&format!(
        "R-squared {:.4}  F-statistic {:.4}  Prob(F) {:.4}  N {}\n",
        fit.ols.r_squared, fit.ols.f_statistic, fit.ols.f_p_value, fit.effective_n
    ));
    out
}
