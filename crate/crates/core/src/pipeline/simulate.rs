//! Synthetic datasets in the same file layout as real inputs.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{write_series, SourceRole};
use crate::series::{cumulative_sum, weekdays, TradingSeries};
use crate::volatility::{simulate_path, GarchParams};

pub const MIN_SIMULATED_OBS: usize = 500;

/// Correlation between FXR and CNB daily changes in the paper-like scenario.
pub const PAPER_LIKE_FX_BOND_CORRELATION: f64 = -0.645;

const FXR_STEP_SD: f64 = 0.01;
const CNB_STEP_SD: f64 = 0.02;
const USB_STEP_SD: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// CNB tracks FXR up to a stationary AR(1) gap; USB is an unrelated walk.
    Cointegrated,
    /// FXR, CNB and USB are independent random walks.
    Independent,
    /// Correlated FXR/CNB changes and a US calendar with occasional holidays.
    PaperLike,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Cointegrated => "cointegrated",
            Scenario::Independent => "independent",
            Scenario::PaperLike => "paper-like",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cointegrated" => Ok(Scenario::Cointegrated),
            "independent" => Ok(Scenario::Independent),
            "paper-like" | "paper_like" | "paperlike" => Ok(Scenario::PaperLike),
            _ => Err(Error::Parameter(format!(
                "unknown scenario `{s}` (expected cointegrated, independent or paper-like)"
            ))),
        }
    }
}

/// The four raw inputs of a simulated dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedSeries {
    pub price: TradingSeries,
    pub fxr: TradingSeries,
    pub cnb: TradingSeries,
    pub usb: TradingSeries,
}

impl SimulatedSeries {
    pub fn by_role(&self) -> [(SourceRole, &TradingSeries); 4] {
        [
            (SourceRole::YieldSourcePrice, &self.price),
            (SourceRole::Fxr, &self.fxr),
            (SourceRole::Cnb, &self.cnb),
            (SourceRole::Usb, &self.usb),
        ]
    }
}

/// Return process behind the simulated stock index.
pub fn simulated_price_params() -> GarchParams {
    GarchParams {
        mu: 2e-4,
        omega: 2e-6,
        alpha: 0.08,
        beta: 0.90,
    }
}

/// Generates `n` weekday observations from 2010-07-01. All draws come from
/// one ChaCha20 stream seeded with `seed`, in a fixed order.
pub fn simulate_series(seed: u64, n: usize, scenario: Scenario) -> Result<SimulatedSeries> {
    if n < MIN_SIMULATED_OBS {
        return Err(Error::Parameter(format!(
            "simulated datasets need at least {MIN_SIMULATED_OBS} observations, got {n}"
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let dates = weekdays(NaiveDate::from_ymd_opt(2010, 7, 1).expect("valid date"), n);

    let returns = simulate_path(&simulated_price_params(), n - 1, &mut rng);
    let mut price = Vec::with_capacity(n);
    price.push(3000.0);
    for r in &returns {
        price.push(price[price.len() - 1] * r.exp());
    }

    let mut normals = |k: usize| -> Vec<f64> { (0..k).map(|_| StandardNormal.sample(&mut rng)).collect() };
    let z_fx = normals(n - 1);
    let z_cn = normals(n - 1);
    let z_us = normals(n - 1);

    let fxr = cumulative_sum(6.5, &scaled(&z_fx, FXR_STEP_SD));
    let usb = cumulative_sum(2.5, &scaled(&z_us, USB_STEP_SD));
    let cnb = match scenario {
        Scenario::Independent => cumulative_sum(3.0, &scaled(&z_cn, CNB_STEP_SD)),
        Scenario::PaperLike => {
            let rho = PAPER_LIKE_FX_BOND_CORRELATION;
            let steps: Vec<f64> = z_fx
                .iter()
                .zip(&z_cn)
                .map(|(a, b)| CNB_STEP_SD * (rho * a + (1.0 - rho * rho).sqrt() * b))
                .collect();
            cumulative_sum(3.0, &steps)
        }
        Scenario::Cointegrated => {
            let mut gap = 0.0;
            let mut out = Vec::with_capacity(n);
            for t in 0..n {
                if t > 0 {
                    gap = 0.5 * gap + CNB_STEP_SD * z_cn[t - 1];
                }
                out.push(3.0 + 0.8 * (fxr[t] - 6.5) + gap);
            }
            out
        }
    };

    let mut usb_dates = dates.clone();
    let mut usb_values = usb;
    if scenario == Scenario::PaperLike {
        // US holidays: roughly one weekday in a hundred, never the first.
        let keep: Vec<bool> = (0..n).map(|t| t == 0 || rng.random::<f64>() >= 0.01).collect();
        usb_dates = filter(&usb_dates, &keep);
        usb_values = filter(&usb_values, &keep);
    }

    Ok(SimulatedSeries {
        price: TradingSeries::new(dates.clone(), price)?,
        fxr: TradingSeries::new(dates.clone(), fxr)?,
        cnb: TradingSeries::new(dates, cnb)?,
        usb: TradingSeries::new(usb_dates, usb_values)?,
    })
}

fn scaled(z: &[f64], sd: f64) -> Vec<f64> {
    z.iter().map(|v| v * sd).collect()
}

fn filter<T: Copy>(v: &[T], keep: &[bool]) -> Vec<T> {
    v.iter().zip(keep).filter(|(_, k)| **k).map(|(x, _)| *x).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedDataset {
    /// Dataset description listing the CSV files below.
    pub dataset_config: PathBuf,
    pub files: Vec<PathBuf>,
}

const FILE_NAMES: [&str; 4] = ["price.csv", "fxr.csv", "cnb.csv", "usb.csv"];

/// Writes one CSV per role plus `dataset.toml` into `out_dir`.
pub fn simulate_dataset(out_dir: &Path, seed: u64, n: usize, scenario: Scenario) -> Result<SimulatedDataset> {
    let sim = simulate_series(seed, n, scenario)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut files = Vec::new();
    let mut toml = format!("# simulated: scenario {scenario}, seed {seed}, {n} observations\npolicy = \"intersect\"\n");
    for ((role, series), name) in sim.by_role().into_iter().zip(FILE_NAMES) {
        let path = out_dir.join(name);
        write_series(&path, series, "value")?;
        toml.push_str(&format!("\n[[series]]\nrole = \"{role}\"\npath = \"{name}\"\n"));
        files.push(path);
    }
    let dataset_config = out_dir.join("dataset.toml");
    std::fs::write(&dataset_config, toml).map_err(|e| Error::io(&dataset_config, e))?;
    Ok(SimulatedDataset { dataset_config, files })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{read_series, DatasetConfig};
    use crate::numerics::pearson;

    fn diffs(v: &[f64]) -> Vec<f64> {
        v.windows(2).map(|w| w[1] - w[0]).collect()
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = simulate_series(7, 600, Scenario::PaperLike).unwrap();
        let b = simulate_series(7, 600, Scenario::PaperLike).unwrap();
        let c = simulate_series(8, 600, Scenario::PaperLike).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.price, c.price);
    }

    #[test]
    fn paper_like_correlation_and_calendar() {
        let s = simulate_series(11, 3000, Scenario::PaperLike).unwrap();
        let r = pearson(&diffs(s.fxr.values()), &diffs(s.cnb.values()));
        assert!((r - PAPER_LIKE_FX_BOND_CORRELATION).abs() < 0.1, "{r}");
        assert!(s.usb.len() < 3000 && s.usb.len() > 2900, "{}", s.usb.len());
        assert!(s.price.values().iter().all(|p| *p > 0.0));
    }

    #[test]
    fn rejects_short_requests() {
        assert!(matches!(simulate_series(1, 499, Scenario::Independent), Err(Error::Parameter(_))));
        assert!("bogus".parse::<Scenario>().is_err());
        assert_eq!("paper-like".parse::<Scenario>().unwrap(), Scenario::PaperLike);
    }

    #[test]
    fn written_dataset_reads_back() {
        let dir = tempfile::tempdir().unwrap();
        let ds = simulate_dataset(dir.path(), 3, 500, Scenario::Cointegrated).unwrap();
        let cfg = DatasetConfig::load(&ds.dataset_config).unwrap();
        assert_eq!(cfg.series.len(), 4);
        let fxr = read_series(cfg.spec(SourceRole::Fxr).unwrap()).unwrap();
        assert_eq!(fxr.len(), 500);
    }
}
