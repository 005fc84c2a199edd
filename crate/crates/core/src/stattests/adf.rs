//! Augmented Dickey-Fuller unit-root test.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{normal_cdf, ols_design, DenseMatrix, OlsFit};
use crate::series::TradingSeries;

/// Deterministic terms in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DeterministicSpec {
    None,
    Constant,
    #[default]
    ConstantTrend,
}

impl DeterministicSpec {
    fn terms(self) -> usize {
        match self {
            Self::None => 0,
            Self::Constant => 1,
            Self::ConstantTrend => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Constant => "constant",
            Self::ConstantTrend => "constant-trend",
        }
    }
}

impl fmt::Display for DeterministicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DeterministicSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" | "n" | "nc" => Ok(Self::None),
            "constant" | "c" => Ok(Self::Constant),
            "constant-trend" | "constant+trend" | "ct" | "trend" => Ok(Self::ConstantTrend),
            other => Err(Error::Parameter(format!(
                "unknown deterministic spec {other:?} (expected none, constant or constant-trend)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LagSelection {
    /// Minimize AIC over `0..=floor(12 (n/100)^(1/4))`.
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stationarity {
    Stationary,
    NotStationary,
}

impl fmt::Display for Stationarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Stationary => "Stationary",
            Self::NotStationary => "Not stationary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdfResult {
    pub statistic: f64,
    pub critical_1pct: f64,
    pub critical_5pct: f64,
    pub critical_10pct: f64,
    pub p_value: f64,
    pub lags_used: usize,
    pub nobs: usize,
    pub deterministic_spec: DeterministicSpec,
    pub decision: Stationarity,
}

impl AdfResult {
    /// Builds a result from an already computed statistic, applying the 5%
    /// decision rule. Critical values must satisfy `1% < 5% < 10%`.
    pub fn from_statistic(
        statistic: f64,
        critical: [f64; 3],
        p_value: f64,
        lags_used: usize,
        nobs: usize,
        deterministic_spec: DeterministicSpec,
    ) -> Result<Self> {
        if !(critical[0] < critical[1] && critical[1] < critical[2]) {
            return Err(Error::Parameter(format!(
                "critical values must increase from 1% to 10%: {critical:?}"
            )));
        }
        if !(0.0..=1.0).contains(&p_value) {
            return Err(Error::Parameter(format!("p-value {p_value} outside [0, 1]")));
        }
        Ok(Self {
            statistic,
            critical_1pct: critical[0],
            critical_5pct: critical[1],
            critical_10pct: critical[2],
            p_value,
            lags_used,
            nobs,
            deterministic_spec,
            decision: adf_decision(statistic, critical[1]),
        })
    }
}

/// A unit root is rejected when the statistic lies below the 5% critical
/// value.
pub fn adf_decision(statistic: f64, critical_5pct: f64) -> Stationarity {
    if statistic < critical_5pct {
        Stationarity::Stationary
    } else {
        Stationarity::NotStationary
    }
}

/// Default upper bound for automatic lag search.
pub fn schwert_max_lag(n: usize) -> usize {
    (12.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

/// Minimum series length for a test with `lags` augmentation lags.
pub const ADF_MIN_BASE: usize = 25;

pub fn adf_test(s: &TradingSeries, spec: DeterministicSpec, lags: LagSelection) -> Result<AdfResult> {
    adf_test_values(s.values(), spec, lags)
}

pub fn adf_test_values(y: &[f64], spec: DeterministicSpec, lags: LagSelection) -> Result<AdfResult> {
    let n = y.len();
    let requested = match lags {
        LagSelection::Fixed(p) => p,
        LagSelection::Auto => 0,
    };
    if n < ADF_MIN_BASE + requested {
        return Err(Error::insufficient("ADF test", ADF_MIN_BASE + requested, n));
    }
    if y.iter().all(|v| *v == y[0]) {
        return Err(Error::Degenerate("ADF test on a constant series".into()));
    }
    let p = match lags {
        LagSelection::Fixed(p) => p,
        LagSelection::Auto => {
            let max = schwert_max_lag(n).min(n - ADF_MIN_BASE);
            let mut best = (f64::INFINITY, 0);
            for p in 0..=max {
                let fit = adf_regression(y, spec, p, max)?;
                let aic = fit.aic();
                if aic < best.0 {
                    best = (aic, p);
                }
            }
            best.1
        }
    };
    let fit = adf_regression(y, spec, p, p)?;
    let col = spec.terms();
    let statistic = fit.t_values[col];
    if !statistic.is_finite() {
        return Err(Error::Degenerate("ADF regression has a perfect fit".into()));
    }
    let nobs = fit.nobs;
    let critical = critical_values(spec, nobs);
    let p_value = mackinnon_p_value(statistic, spec);
    AdfResult::from_statistic(statistic, critical, p_value, p, nobs, spec)
}

/// Test regression with `p` lagged differences, on the sample that starts
/// after `skip` lagged differences are available.
fn adf_regression(y: &[f64], spec: DeterministicSpec, p: usize, skip: usize) -> Result<OlsFit> {
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let first = skip; // index into dy
    let rows = dy.len() - first;
    let cols = spec.terms() + 1 + p;
    let mut data = Vec::with_capacity(rows * cols);
    let mut target = Vec::with_capacity(rows);
    for (r, t) in (first..dy.len()).enumerate() {
        if spec.terms() >= 1 {
            data.push(1.0);
        }
        if spec.terms() == 2 {
            data.push((r + 1) as f64);
        }
        data.push(y[t]);
        for i in 1..=p {
            data.push(dy[t - i]);
        }
        target.push(dy[t]);
    }
    let x = DenseMatrix::new(rows, cols, data)?;
    ols_design(&x, &target, spec.terms() >= 1)
}

// Response-surface coefficients for one integrated regressor.
// Critical values: b0 + b1/T + b2/T^2 + b3/T^3 at 1%, 5%, 10%.
const CRIT_NONE: [[f64; 4]; 3] = [
    [-2.56574, -2.2358, -3.627, 0.0],
    [-1.94100, -0.2686, -3.365, 31.223],
    [-1.61682, 0.2656, -2.714, 25.364],
];
const CRIT_CONSTANT: [[f64; 4]; 3] = [
    [-3.43035, -6.5393, -16.786, -79.433],
    [-2.86154, -2.8903, -4.234, -40.040],
    [-2.56677, -1.5384, -2.809, 0.0],
];
const CRIT_TREND: [[f64; 4]; 3] = [
    [-3.95877, -9.0531, -28.428, -134.155],
    [-3.41049, -4.3904, -9.036, -45.374],
    [-3.12705, -2.5856, -3.925, -22.380],
];

/// Finite-sample 1%, 5% and 10% critical values for `nobs` regression rows.
pub fn critical_values(spec: DeterministicSpec, nobs: usize) -> [f64; 3] {
    let table = match spec {
        DeterministicSpec::None => &CRIT_NONE,
        DeterministicSpec::Constant => &CRIT_CONSTANT,
        DeterministicSpec::ConstantTrend => &CRIT_TREND,
    };
    let t = nobs as f64;
    table.map(|b| b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t))
}

struct PValueSurface {
    max: f64,
    min: f64,
    star: f64,
    small: [f64; 3],
    large: [f64; 4],
}

const P_NONE: PValueSurface = PValueSurface {
    max: f64::INFINITY,
    min: -19.04,
    star: -1.04,
    small: [0.6344, 1.2378, 0.032496],
    large: [0.4797, 0.93557, -0.06999, 0.033066],
};
const P_CONSTANT: PValueSurface = PValueSurface {
    max: 2.74,
    min: -18.83,
    star: -1.61,
    small: [2.1659, 1.4412, 0.038269],
    large: [1.7339, 0.93202, -0.12745, -0.010368],
};
const P_TREND: PValueSurface = PValueSurface {
    max: 0.7,
    min: -16.18,
    star: -2.89,
    small: [3.2512, 1.6047, 0.049588],
    large: [2.5261, 0.61654, -0.37956, -0.060285],
};

/// Asymptotic p-value from the normal-quantile response surface.
pub fn mackinnon_p_value(statistic: f64, spec: DeterministicSpec) -> f64 {
    let s = match spec {
        DeterministicSpec::None => &P_NONE,
        DeterministicSpec::Constant => &P_CONSTANT,
        DeterministicSpec::ConstantTrend => &P_TREND,
    };
    if statistic > s.max {
        return 1.0;
    }
    if statistic < s.min {
        return 0.0;
    }
    let coef: &[f64] = if statistic <= s.star { &s.small } else { &s.large };
    let z = coef.iter().rev().fold(0.0, |acc, c| acc * statistic + c);
    normal_cdf(z)
}

/// Renders rows in the layout of the stationarity table.
pub fn adf_table(rows: &[(String, AdfResult)]) -> String {
    let header = [
        "Variable",
        "ADF statistic",
        "1% Threshold",
        "5% Threshold",
        "10% Threshold",
        "P-value",
        "Stationarity",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|(name, r)| {
            vec![
                name.clone(),
                format!("{:.3}", r.statistic),
                format!("{:.3}", r.critical_1pct),
                format!("{:.3}", r.critical_5pct),
                format!("{:.3}", r.critical_10pct),
                format!("{:.4}", r.p_value),
                r.decision.to_string(),
            ]
        })
        .collect();
    crate::format::text_table(&header, &body)
}
