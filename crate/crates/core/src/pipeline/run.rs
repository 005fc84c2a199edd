//! The end-to-end analysis: ingest, volatility, tests, factors, regression.

use std::path::Path;

use chrono::NaiveDate;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{PipelineConfig, BASE_VARIABLES, DEPENDENT};
use crate::ardl::{build_design, fit_ardl, ArdlFit};
use crate::error::{Error, Result};
use crate::factor::{component_scores, pca_with, proxies, standardize, PcaResult, ProxyFlag};
use crate::format::round_sig;
use crate::ingest::{align_panel, read_series, validate_panel, AlignPolicy, AlignedPanel, DatasetConfig, SourceRole, ValidationReport};
use crate::series::{describe, first_difference, log_returns, DescriptiveStats, TradingSeries};
use crate::stattests::{
    adf_test, correlation_matrix, granger_test_values, johansen_test, multicollinearity_screen, white_test, AdfResult,
    CointegrationResult, CorrelationMatrix, FlaggedPair, GrangerResult, Stationarity, WhiteResult,
};
use crate::volatility::{garch_fit, garch_volatility, monthly_volatility, GarchParams, MonthlyVolatility};

/// Report sections, in execution order.
pub const STAGES: [&str; 10] = [
    "ingest",
    "volatility",
    "descriptive",
    "stationarity",
    "correlation",
    "pca",
    "regression",
    "cointegration",
    "granger",
    "white",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum StageOutcome<T> {
    Completed { result: T },
    Skipped { reason: String },
}

impl<T> StageOutcome<T> {
    pub fn result(&self) -> Option<&T> {
        match self {
            StageOutcome::Completed { result } => Some(result),
            StageOutcome::Skipped { .. } => None,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, StageOutcome::Completed { .. })
    }
}

fn done<T>(result: T) -> StageOutcome<T> {
    StageOutcome::Completed { result }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub crate_version: String,
    /// SHA-256 of the analysis settings.
    pub settings_hash: String,
    /// SHA-256 of each input file, by role.
    pub dataset_sha256: IndexMap<String, String>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestSummary {
    pub policy: AlignPolicy,
    pub observations: usize,
    pub first_date: NaiveDate,
    pub last_date: NaiveDate,
    /// Raw observations per role that did not make it onto the panel.
    pub dropped: IndexMap<String, usize>,
    pub validation: ValidationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolatilityReport {
    pub params: GarchParams,
    pub log_likelihood: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Conditional standard deviation of YIELD (the VOL series).
    pub daily: TradingSeries,
    pub monthly: MonthlyVolatility,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveRow {
    pub variable: String,
    pub stats: DescriptiveStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    Level,
    FirstDifference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityRow {
    pub variable: String,
    pub transform: Transform,
    pub result: AdfResult,
}

impl StationarityRow {
    pub fn label(&self) -> String {
        match self.transform {
            Transform::Level => self.variable.clone(),
            Transform::FirstDifference => format!("D({})", self.variable),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub matrix: CorrelationMatrix,
    pub threshold: f64,
    pub flagged: Vec<FlaggedPair>,
    pub observations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaReport {
    pub result: PcaResult,
    /// Components carried into the regression.
    pub components_used: Vec<String>,
    pub proxies: Vec<ProxyFlag>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegressorSource {
    PrincipalComponents,
    LaggedVariables,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub source: RegressorSource,
    pub regressors: Vec<String>,
    pub fit: ArdlFit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CointegrationReport {
    pub roles: Vec<String>,
    pub result: CointegrationResult,
}

/// Everything one pipeline run produces. Floats carry at most ten
/// significant digits so that serialized reports are reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub metadata: RunMetadata,
    pub ingest: StageOutcome<IngestSummary>,
    pub volatility: StageOutcome<VolatilityReport>,
    pub descriptive: StageOutcome<Vec<DescriptiveRow>>,
    pub stationarity: StageOutcome<Vec<StationarityRow>>,
    pub correlation: StageOutcome<CorrelationReport>,
    pub pca: StageOutcome<PcaReport>,
    pub regression: StageOutcome<RegressionReport>,
    pub cointegration: StageOutcome<CointegrationReport>,
    pub granger: StageOutcome<Vec<GrangerResult>>,
    pub white: StageOutcome<WhiteResult>,
    pub warnings: Vec<String>,
}

impl ReportBundle {
    /// Stage name and whether it completed, in execution order.
    pub fn stage_status(&self) -> [(&'static str, bool); 10] {
        let flags = [
            self.ingest.is_completed(),
            self.volatility.is_completed(),
            self.descriptive.is_completed(),
            self.stationarity.is_completed(),
            self.correlation.is_completed(),
            self.pca.is_completed(),
            self.regression.is_completed(),
            self.cointegration.is_completed(),
            self.granger.is_completed(),
            self.white.is_completed(),
        ];
        std::array::from_fn(|i| (STAGES[i], flags[i]))
    }
}

fn in_stage<T>(stage: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage,
        source: Box::new(e),
    })
}

fn file_sha256(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Loads the configuration at `path` and runs it.
pub fn run_pipeline_file(path: &Path) -> Result<ReportBundle> {
    run_pipeline(&PipelineConfig::load(path)?)
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<ReportBundle> {
    cfg.validate()?;
    let mut warnings = Vec::new();

    // ingest
    let (panel, ingest, hashes) = in_stage("ingest", ingest_stage(cfg))?;
    for issue in &ingest.validation.issues {
        warnings.push(format!("ingest: {}", issue.message));
    }

    // volatility
    let price = panel.series(SourceRole::YieldSourcePrice.as_str())?;
    let (yield_series, vol_report) = in_stage("volatility", volatility_stage(&price, &mut warnings))?;

    let base = in_stage("volatility", base_panel(&panel, &yield_series, &vol_report.daily))?;

    let descriptive = in_stage(
        "descriptive",
        BASE_VARIABLES
            .iter()
            .map(|v| {
                Ok(DescriptiveRow {
                    variable: v.to_string(),
                    stats: describe(&base.series(v)?)?,
                })
            })
            .collect::<Result<Vec<_>>>(),
    )?;

    let stationarity = in_stage("stationarity", stationarity_stage(cfg, &base))?;

    let mut analysis = in_stage("correlation", analysis_panel(cfg, &base))?;
    let correlation = in_stage("correlation", {
        let roles: Vec<&str> = cfg.screen.roles.iter().map(String::as_str).collect();
        correlation_matrix(&analysis, &roles).and_then(|matrix| {
            let flagged = multicollinearity_screen(&matrix, cfg.screen.threshold)?;
            Ok(CorrelationReport {
                matrix,
                threshold: cfg.screen.threshold,
                flagged,
                observations: analysis.len(),
            })
        })
    })?;

    let pca = if correlation.flagged.is_empty() {
        StageOutcome::Skipped {
            reason: format!(
                "no pair among {} reaches |r| >= {}; regressing on the lagged variables",
                cfg.screen.roles.join(", "),
                cfg.screen.threshold
            ),
        }
    } else {
        done(in_stage("pca", pca_stage(cfg, &mut analysis, &mut warnings))?)
    };
    let (source, regressors) = match pca.result() {
        Some(p) => (RegressorSource::PrincipalComponents, p.components_used.clone()),
        None => (RegressorSource::LaggedVariables, cfg.pca.variables.clone()),
    };

    let spec = cfg.regression.spec(&regressors);
    let fit = in_stage("regression", fit_ardl(&analysis, DEPENDENT, &spec))?;

    let cointegration = in_stage("cointegration", {
        let roles = cfg.johansen.roles.clone().unwrap_or_else(|| {
            std::iter::once(DEPENDENT.to_string()).chain(regressors.iter().cloned()).collect()
        });
        let refs: Vec<&str> = roles.iter().map(String::as_str).collect();
        johansen_test(&analysis, &refs, cfg.johansen.var_lags, cfg.johansen.det)
            .map(|result| CointegrationReport { roles, result })
    })?;

    let granger = in_stage("granger", {
        let vol = analysis.column(DEPENDENT)?;
        let mut rows = Vec::new();
        for r in &regressors {
            let x = analysis.column(r)?;
            rows.push(granger_test_values(x, vol, cfg.granger.lags, r, DEPENDENT)?);
            rows.push(granger_test_values(vol, x, cfg.granger.lags, DEPENDENT, r)?);
        }
        Ok(rows)
    })?;

    let white = in_stage("white", {
        build_design(&analysis, DEPENDENT, &spec).and_then(|design| {
            let keep: Vec<usize> = design
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| *n != "const" && *n != "trend")
                .map(|(i, _)| i)
                .collect();
            white_test(&fit.ols.residuals, &design.matrix.select_columns(&keep), cfg.white.cross_terms)
        })
    })?;
    warnings.extend(white.warnings.iter().map(|w| format!("white: {w}")));

    let bundle = ReportBundle {
        metadata: RunMetadata {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            settings_hash: cfg.settings_hash(),
            dataset_sha256: hashes,
            seed: cfg.seed,
        },
        ingest: done(ingest),
        volatility: done(vol_report),
        descriptive: done(descriptive),
        stationarity: done(stationarity),
        correlation: done(correlation),
        pca,
        regression: done(RegressionReport {
            source,
            regressors,
            fit,
        }),
        cointegration: done(cointegration),
        granger: done(granger),
        white: done(white),
        warnings,
    };
    round_bundle(&bundle)
}

fn ingest_stage(cfg: &PipelineConfig) -> Result<(AlignedPanel, IngestSummary, IndexMap<String, String>)> {
    let ds = DatasetConfig::load(&cfg.dataset)?;
    let mut options = ds.align_options();
    if let Some(p) = cfg.policy {
        options.policy = p;
    }
    let mut raw = Vec::new();
    let mut hashes = IndexMap::new();
    // the price series comes first so that it sets the forward-fill calendar
    for role in SourceRole::ALL {
        let spec = ds.spec(role)?;
        raw.push((role.as_str().to_string(), read_series(spec)?));
        hashes.insert(role.as_str().to_string(), file_sha256(&spec.path)?);
    }
    let panel = align_panel(&raw, &options)?;
    let validation = validate_panel(&panel);
    if validation.has_non_finite() {
        return Err(Error::Degenerate("aligned panel contains non-finite values".into()));
    }
    let dropped = raw
        .iter()
        .map(|(role, s)| {
            let kept = s.dates().iter().filter(|d| panel.dates().binary_search(d).is_ok()).count();
            (role.clone(), s.len() - kept)
        })
        .collect();
    let summary = IngestSummary {
        policy: options.policy,
        observations: panel.len(),
        first_date: panel.dates()[0],
        last_date: panel.dates()[panel.len() - 1],
        dropped,
        validation,
    };
    Ok((panel, summary, hashes))
}

fn volatility_stage(price: &TradingSeries, warnings: &mut Vec<String>) -> Result<(TradingSeries, VolatilityReport)> {
    let returns = log_returns(price)?;
    let fit = garch_fit(&returns)?;
    warnings.extend(fit.warnings.iter().map(|w| format!("volatility: {w}")));
    let daily = garch_volatility(&fit)?;
    let monthly = monthly_volatility(&returns)?;
    if !monthly.skipped.is_empty() {
        warnings.push(format!(
            "volatility: {} month(s) with fewer than two returns left out of the monthly series",
            monthly.skipped.len()
        ));
    }
    let report = VolatilityReport {
        params: fit.params,
        log_likelihood: fit.log_likelihood,
        converged: fit.converged,
        iterations: fit.iterations,
        daily,
        monthly,
    };
    Ok((returns, report))
}

/// YIELD, VOL and the three market series on the return calendar.
fn base_panel(panel: &AlignedPanel, returns: &TradingSeries, vol: &TradingSeries) -> Result<AlignedPanel> {
    let rest = panel.tail_from(1);
    let mut cols = IndexMap::new();
    cols.insert("YIELD".to_string(), returns.values().to_vec());
    cols.insert("VOL".to_string(), vol.values().to_vec());
    for role in [SourceRole::Fxr, SourceRole::Cnb, SourceRole::Usb] {
        cols.insert(role.as_str().to_string(), rest.column(role.as_str())?.to_vec());
    }
    AlignedPanel::new(returns.dates().to_vec(), cols)
}

fn stationarity_stage(cfg: &PipelineConfig, base: &AlignedPanel) -> Result<Vec<StationarityRow>> {
    let lags = cfg.adf.lag_selection();
    let mut rows = Vec::new();
    for v in BASE_VARIABLES {
        let s = base.series(v)?;
        let level = adf_test(&s, cfg.adf.spec, lags)?;
        let needs_difference = level.decision == Stationarity::NotStationary || cfg.difference.iter().any(|d| d == v);
        rows.push(StationarityRow {
            variable: v.to_string(),
            transform: Transform::Level,
            result: level,
        });
        if needs_difference {
            rows.push(StationarityRow {
                variable: v.to_string(),
                transform: Transform::FirstDifference,
                result: adf_test(&first_difference(&s)?, cfg.adf.spec, lags)?,
            });
        }
    }
    Ok(rows)
}

/// VOL in levels plus each market series (differenced when configured) and
/// its one-period lag. `VOL(L)` lags VOL, or its difference when VOL is
/// listed for differencing.
fn analysis_panel(cfg: &PipelineConfig, base: &AlignedPanel) -> Result<AlignedPanel> {
    let len = base.len();
    let differenced = |v: &str| cfg.difference.iter().any(|d| d == v);
    // transformed column, with its first valid row
    let transformed = |v: &str| -> Result<(Vec<f64>, usize)> {
        let x = base.column(v)?;
        if differenced(v) {
            let mut out = vec![0.0; len];
            for t in 1..len {
                out[t] = x[t] - x[t - 1];
            }
            Ok((out, 1))
        } else {
            Ok((x.to_vec(), 0))
        }
    };
    let start = if cfg.difference.is_empty() { 1 } else { 2 };
    if len <= start {
        return Err(Error::insufficient("lagged variable set", start + 1, len));
    }
    let mut cols = IndexMap::new();
    cols.insert(DEPENDENT.to_string(), base.column(DEPENDENT)?[start..].to_vec());
    for v in ["VOL", "FXR", "CNB", "USB"] {
        let (x, first) = transformed(v)?;
        debug_assert!(first < start);
        if v != DEPENDENT {
            cols.insert(v.to_string(), x[start..].to_vec());
        }
        cols.insert(format!("{v}(L)"), x[start - 1..len - 1].to_vec());
    }
    AlignedPanel::new(base.dates()[start..].to_vec(), cols)
}

fn pca_stage(cfg: &PipelineConfig, analysis: &mut AlignedPanel, warnings: &mut Vec<String>) -> Result<PcaReport> {
    let vars: Vec<&str> = cfg.pca.variables.iter().map(String::as_str).collect();
    let z = standardize(analysis, &vars)?;
    let result = pca_with(&z, cfg.pca.rule, cfg.pca.tau)?;
    let k = if result.selected_k == 0 {
        warnings.push(format!(
            "pca: no component satisfies the {} rule; keeping the first",
            result.rule
        ));
        1
    } else {
        result.selected_k
    };
    let scores = component_scores(&result, &z, k)?;
    let mut components_used = Vec::with_capacity(k);
    for (name, col) in scores.scores {
        analysis.insert(name.clone(), col)?;
        components_used.push(name);
    }
    let proxies = proxies(&result, k);
    for p in &proxies {
        warnings.push(format!(
            "pca: {} is effectively {} alone (loading {:.3})",
            p.component, p.variable, p.loading
        ));
    }
    Ok(PcaReport {
        result,
        components_used,
        proxies,
    })
}

/// Rounds every float in the bundle to ten significant digits.
fn round_bundle(b: &ReportBundle) -> Result<ReportBundle> {
    fn walk(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Number(n) if n.is_f64() => {
                let x = round_sig(n.as_f64().expect("f64 number"));
                if let Some(r) = serde_json::Number::from_f64(x) {
                    *n = r;
                }
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(walk),
            serde_json::Value::Object(o) => o.values_mut().for_each(walk),
            _ => {}
        }
    }
    let mut value = serde_json::to_value(b)?;
    walk(&mut value);
    Ok(serde_json::from_value(value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::config::analysis_variables;

    fn toy_base(n: usize) -> AlignedPanel {
        let dates = crate::series::weekdays(NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(), n);
        let mut cols = IndexMap::new();
        for (k, v) in BASE_VARIABLES.iter().enumerate() {
            cols.insert(v.to_string(), (0..n).map(|t| ((t * (k + 2)) as f64).sin() + t as f64 * 0.01).collect());
        }
        AlignedPanel::new(dates, cols).unwrap()
    }

    #[test]
    fn analysis_panel_lags_transformed_series() {
        let base = toy_base(10);
        let cfg = PipelineConfig::default();
        let a = analysis_panel(&cfg, &base).unwrap();
        assert_eq!(a.roles().collect::<Vec<_>>(), analysis_variables());
        assert_eq!(a.len(), 8);
        assert_eq!(a.dates()[0], base.dates()[2]);
        let fxr = base.column("FXR").unwrap();
        // row 0 of the analysis panel is base row 2
        assert_eq!(a.column("FXR").unwrap()[0], fxr[2] - fxr[1]);
        assert_eq!(a.column("FXR(L)").unwrap()[0], fxr[1] - fxr[0]);
        assert_eq!(a.column("VOL").unwrap()[0], base.column("VOL").unwrap()[2]);
        assert_eq!(a.column("VOL(L)").unwrap()[0], base.column("VOL").unwrap()[1]);
    }

    #[test]
    fn analysis_panel_in_levels() {
        let base = toy_base(10);
        let cfg = PipelineConfig {
            difference: vec![],
            ..PipelineConfig::default()
        };
        let a = analysis_panel(&cfg, &base).unwrap();
        assert_eq!(a.len(), 9);
        assert_eq!(a.column("USB(L)").unwrap()[0], base.column("USB").unwrap()[0]);
    }

    #[test]
    fn stage_errors_name_the_stage() {
        let err = in_stage::<()>("granger", Err(Error::Parameter("x".into()))).unwrap_err();
        assert!(err.to_string().starts_with("stage `granger` failed"));
        assert_eq!(err.class(), crate::ErrorClass::Usage);
    }
}
