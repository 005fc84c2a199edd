//! Date-indexed series and their descriptive statistics.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{mean, sample_variance};

/// A daily observation series on strictly increasing dates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradingSeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl TradingSeries {
    pub fn new(dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(Error::Dimension(format!(
                "{} dates but {} values",
                dates.len(),
                values.len()
            )));
        }
        if dates.is_empty() {
            return Err(Error::EmptyInput("series".into()));
        }
        if let Some(w) = dates.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(format!(
                "dates must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain {
                date: dates[i],
                msg: "non-finite value".into(),
            });
        }
        Ok(Self { dates, values })
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first_date(&self) -> NaiveDate {
        self.dates[0]
    }

    pub fn last_date(&self) -> NaiveDate {
        self.dates[self.dates.len() - 1]
    }

    /// Observations with dates in `[from, to]`.
    pub fn slice_dates(&self, from: NaiveDate, to: NaiveDate) -> Option<Self> {
        let lo = self.dates.partition_point(|d| *d < from);
        let hi = self.dates.partition_point(|d| *d <= to);
        (lo < hi).then(|| Self {
            dates: self.dates[lo..hi].to_vec(),
            values: self.values[lo..hi].to_vec(),
        })
    }

    /// Drops the first `k` observations.
    pub fn skip(&self, k: usize) -> Option<Self> {
        (k < self.len()).then(|| Self {
            dates: self.dates[k..].to_vec(),
            values: self.values[k..].to_vec(),
        })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.dates.clone(), self.values.iter().map(|v| f(*v)).collect())
    }
}

/// `r_t = ln P_t - ln P_{t-1}`, dated at the later observation.
pub fn log_returns(prices: &TradingSeries) -> Result<TradingSeries> {
    if prices.len() < 2 {
        return Err(Error::insufficient("log returns", 2, prices.len()));
    }
    if let Some(i) = prices.values.iter().position(|p| *p <= 0.0) {
        return Err(Error::Domain {
            date: prices.dates[i],
            msg: format!("price {} is not positive", prices.values[i]),
        });
    }
    let values = prices.values.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
    TradingSeries::new(prices.dates[1..].to_vec(), values)
}

pub fn first_difference(s: &TradingSeries) -> Result<TradingSeries> {
    if s.len() < 2 {
        return Err(Error::insufficient("first difference", 2, s.len()));
    }
    let values = s.values.windows(2).map(|w| w[1] - w[0]).collect();
    TradingSeries::new(s.dates[1..].to_vec(), values)
}

/// Value at each date is the observation `k` steps earlier; the first `k`
/// dates have no lagged value and are dropped.
pub fn lag(s: &TradingSeries, k: usize) -> Result<TradingSeries> {
    if k == 0 {
        return Err(Error::Parameter("lag order must be at least 1".into()));
    }
    if k >= s.len() {
        return Err(Error::insufficient(format!("lag {k}"), k + 1, s.len()));
    }
    TradingSeries::new(s.dates[k..].to_vec(), s.values[..s.len() - k].to_vec())
}

/// Running sum anchored at `start`; inverse of [`first_difference`].
pub fn cumulative_sum(start: f64, increments: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(increments.len() + 1);
    let mut acc = start;
    out.push(acc);
    for d in increments {
        acc += d;
        out.push(acc);
    }
    out
}

/// The first `n` Monday-to-Friday dates on or after `start`.
pub fn weekdays(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    use chrono::{Datelike, Weekday};
    start
        .iter_days()
        .filter(|d| !matches!(d.weekday(), Weekday::Sat | Weekday::Sun))
        .take(n)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    pub kurtosis_excess: f64,
    pub min: f64,
    pub max: f64,
}

impl DescriptiveStats {
    /// Raw (non-excess) kurtosis, comparable to 3 for a normal.
    pub fn kurtosis_raw(&self) -> f64 {
        self.kurtosis_excess + 3.0
    }
}

pub fn describe(s: &TradingSeries) -> Result<DescriptiveStats> {
    describe_values(s.values())
}

/// Moments with the `n - 1` standard deviation and the sample-adjusted
/// skewness `G1` and excess kurtosis `G2`.
pub fn describe_values(v: &[f64]) -> Result<DescriptiveStats> {
    let n = v.len();
    if n < 2 {
        return Err(Error::insufficient("standard deviation", 2, n));
    }
    if n < 3 {
        return Err(Error::insufficient("skewness", 3, n));
    }
    if n < 4 {
        return Err(Error::insufficient("kurtosis", 4, n));
    }
    let m = mean(v);
    let var = sample_variance(v);
    let sd = var.sqrt();
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min == max {
        return Err(Error::ZeroVariance(
            "skewness and kurtosis of a constant series".into(),
        ));
    }
    let nf = n as f64;
    let m2 = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / nf;
    let m3 = v.iter().map(|x| (x - m).powi(3)).sum::<f64>() / nf;
    let m4 = v.iter().map(|x| (x - m).powi(4)).sum::<f64>() / nf;
    let g1 = m3 / m2.powf(1.5);
    let g2 = m4 / (m2 * m2) - 3.0;
    let skewness = (nf * (nf - 1.0)).sqrt() / (nf - 2.0) * g1;
    let kurtosis_excess = (nf - 1.0) / ((nf - 2.0) * (nf - 3.0)) * ((nf + 1.0) * g2 + 6.0);
    Ok(DescriptiveStats {
        n,
        mean: m.clamp(min, max),
        sd,
        skewness,
        kurtosis_excess,
        min,
        max,
    })
}
