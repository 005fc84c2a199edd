//! Pipeline settings, read from a TOML file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ardl::ArdlSpec;
use crate::error::{Error, Result};
use crate::factor::SelectionRule;
use crate::ingest::AlignPolicy;
use crate::stattests::{DeterministicSpec, JohansenDeterministic, LagSelection};

/// Variables the pipeline derives or reads, in report order.
pub const BASE_VARIABLES: [&str; 5] = ["YIELD", "VOL", "FXR", "CNB", "USB"];
pub const DEPENDENT: &str = "VOL";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdfSettings {
    pub spec: DeterministicSpec,
    /// Fixed augmentation lags; automatic AIC selection when absent.
    pub lags: Option<usize>,
}

impl Default for AdfSettings {
    fn default() -> Self {
        Self {
            spec: DeterministicSpec::ConstantTrend,
            lags: None,
        }
    }
}

impl AdfSettings {
    pub fn lag_selection(&self) -> LagSelection {
        self.lags.map_or(LagSelection::Auto, LagSelection::Fixed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScreenSettings {
    pub roles: Vec<String>,
    pub threshold: f64,
}

impl Default for ScreenSettings {
    fn default() -> Self {
        Self {
            roles: vec!["FXR".into(), "CNB".into(), "USB".into()],
            threshold: 0.6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PcaSettings {
    pub variables: Vec<String>,
    pub rule: SelectionRule,
    pub tau: f64,
}

impl Default for PcaSettings {
    fn default() -> Self {
        Self {
            variables: ["VOL(L)", "FXR", "FXR(L)", "CNB", "CNB(L)", "USB", "USB(L)"]
                .map(String::from)
                .to_vec(),
            rule: SelectionRule::Both,
            tau: crate::factor::DEFAULT_TAU,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RegressionSettings {
    /// Lags of VOL itself; the published regression uses none.
    pub endog_lags: usize,
    pub include_trend: bool,
}

impl RegressionSettings {
    pub fn spec(&self, regressors: &[String]) -> ArdlSpec {
        let mut spec = ArdlSpec::new(self.endog_lags);
        spec.include_trend = self.include_trend;
        for r in regressors {
            spec.exog_lags.insert(r.clone(), 0);
        }
        spec
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JohansenSettings {
    pub var_lags: usize,
    pub det: JohansenDeterministic,
    /// Series to test; VOL plus the regressors when absent.
    pub roles: Option<Vec<String>>,
}

impl Default for JohansenSettings {
    fn default() -> Self {
        Self {
            var_lags: 1,
            det: JohansenDeterministic::Constant,
            roles: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GrangerSettings {
    pub lags: usize,
}

impl Default for GrangerSettings {
    fn default() -> Self {
        Self { lags: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WhiteSettings {
    pub cross_terms: bool,
}

impl Default for WhiteSettings {
    fn default() -> Self {
        Self { cross_terms: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    /// Dataset description file (see `DatasetConfig`).
    pub dataset: PathBuf,
    /// Overrides the dataset's alignment policy when set.
    pub policy: Option<AlignPolicy>,
    pub output_dir: PathBuf,
    pub seed: u64,
    /// Variables entering the analysis in first differences. The dependent
    /// VOL stays in levels; listing it differences only its lag.
    pub difference: Vec<String>,
    pub adf: AdfSettings,
    pub screen: ScreenSettings,
    pub pca: PcaSettings,
    pub regression: RegressionSettings,
    pub johansen: JohansenSettings,
    pub granger: GrangerSettings,
    pub white: WhiteSettings,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            dataset: PathBuf::from("dataset.toml"),
            policy: None,
            output_dir: PathBuf::from("report"),
            seed: 20_240_401,
            difference: vec!["FXR".into(), "CNB".into(), "USB".into()],
            adf: AdfSettings::default(),
            screen: ScreenSettings::default(),
            pca: PcaSettings::default(),
            regression: RegressionSettings::default(),
            johansen: JohansenSettings::default(),
            granger: GrangerSettings::default(),
            white: WhiteSettings::default(),
        }
    }
}

/// Lagged variable names derived from the base variables.
pub fn analysis_variables() -> Vec<String> {
    let mut out = vec![DEPENDENT.to_string(), format!("{DEPENDENT}(L)")];
    for v in ["FXR", "CNB", "USB"] {
        out.push(v.to_string());
        out.push(format!("{v}(L)"));
    }
    out
}

impl PipelineConfig {
    /// Parses TOML; relative paths are resolved against `base_dir`.
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: PipelineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.dataset.is_relative() {
            cfg.dataset = base_dir.join(&cfg.dataset);
        }
        if cfg.output_dir.is_relative() {
            cfg.output_dir = base_dir.join(&cfg.output_dir);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.screen.threshold > 0.0 && self.screen.threshold <= 1.0) {
            return bad(format!("screen.threshold {} must lie in (0, 1]", self.screen.threshold));
        }
        if !(self.pca.tau > 0.0 && self.pca.tau <= 1.0) {
            return bad(format!("pca.tau {} must lie in (0, 1]", self.pca.tau));
        }
        if self.johansen.var_lags == 0 {
            return bad("johansen.var_lags must be at least 1".into());
        }
        if self.granger.lags == 0 {
            return bad("granger.lags must be at least 1".into());
        }
        for d in &self.difference {
            if !["VOL", "FXR", "CNB", "USB"].contains(&d.as_str()) {
                return bad(format!("cannot difference `{d}` (expected VOL, FXR, CNB or USB)"));
            }
        }
        let known = analysis_variables();
        for v in self.screen.roles.iter().chain(&self.pca.variables) {
            if !known.contains(v) || v == DEPENDENT {
                return bad(format!("unknown analysis variable `{v}` (expected one of {known:?}, excluding VOL)"));
            }
        }
        if self.screen.roles.len() < 2 {
            return bad("screen.roles needs at least two variables".into());
        }
        if self.pca.variables.len() < 2 {
            return bad("pca.variables needs at least two variables".into());
        }
        Ok(())
    }

    /// SHA-256 of the analysis settings. File locations are left out so the
    /// hash does not depend on where the project is checked out.
    pub fn settings_hash(&self) -> String {
        let mut view = self.clone();
        view.dataset = PathBuf::new();
        view.output_dir = PathBuf::new();
        let json = serde_json::to_string(&view).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}
