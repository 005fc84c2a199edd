//! Renders a [`ReportBundle`] as text, CSV files or JSON.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::run::{ReportBundle, StageOutcome};
use crate::ardl::coefficient_table;
use crate::error::{Error, Result};
use crate::factor::{loadings_table, pca_table, PcaResult};
use crate::format::{sig_str, text_table};
use crate::series::TradingSeries;
use crate::stattests::{adf_table, correlation_table, granger_table, johansen_table, white_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Text => "text",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::Config(format!("unknown report format `{s}` (expected text, csv or json)"))),
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn report_json(b: &ReportBundle) -> Result<String> {
    let mut s = serde_json::to_string_pretty(b)?;
    s.push('\n');
    Ok(s)
}

fn section<T>(out: &mut String, title: &str, outcome: &StageOutcome<T>, body: impl FnOnce(&T) -> String) {
    out.push_str(title);
    out.push('\n');
    out.push_str(&"=".repeat(title.chars().count()));
    out.push('\n');
    match outcome {
        StageOutcome::Completed { result } => out.push_str(&body(result)),
        StageOutcome::Skipped { reason } => {
            out.push_str("skipped: ");
            out.push_str(reason);
            out.push('\n');
        }
    }
    out.push('\n');
}

pub fn report_text(b: &ReportBundle) -> String {
    let mut out = String::new();
    let m = &b.metadata;
    out.push_str(&format!(
        "econkit {} | settings {} | seed {}\n\n",
        m.crate_version,
        &m.settings_hash[..12],
        m.seed
    ));
    section(&mut out, "Data", &b.ingest, |s| {
        let mut t = format!(
            "{} aligned observations, {} to {} ({:?} policy)\n",
            s.observations, s.first_date, s.last_date, s.policy
        );
        for (role, n) in &s.dropped {
            if *n > 0 {
                t.push_str(&format!("{role}: {n} observation(s) not on the common calendar\n"));
            }
        }
        t
    });
    section(&mut out, "GARCH(1,1) volatility", &b.volatility, |v| {
        let p = &v.params;
        let rows = vec![
            vec!["mu".into(), sig_str(p.mu)],
            vec!["omega".into(), sig_str(p.omega)],
            vec!["alpha".into(), format!("{:.4}", p.alpha)],
            vec!["beta".into(), format!("{:.4}", p.beta)],
            vec!["alpha + beta".into(), format!("{:.4}", p.alpha + p.beta)],
            vec!["log-likelihood".into(), format!("{:.2}", v.log_likelihood)],
            vec!["converged".into(), v.converged.to_string()],
        ];
        text_table(&["Parameter", "Estimate"], &rows)
    });
    section(&mut out, "Descriptive statistics (YIELD in percent)", &b.descriptive, |rows| {
        let header = ["Variable", "Obs", "Mean", "Std. Dev.", "Skewness", "Kurtosis", "Min", "Max"];
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let scale = if r.variable == "YIELD" { 100.0 } else { 1.0 };
                let s = &r.stats;
                vec![
                    r.variable.clone(),
                    s.n.to_string(),
                    format!("{:.4}", s.mean * scale),
                    format!("{:.4}", s.sd * scale),
                    format!("{:.4}", s.skewness),
                    format!("{:.4}", s.kurtosis_raw()),
                    format!("{:.4}", s.min * scale),
                    format!("{:.4}", s.max * scale),
                ]
            })
            .collect();
        text_table(&header, &body)
    });
    section(&mut out, "Unit-root tests (ADF)", &b.stationarity, |rows| {
        let pairs: Vec<(String, _)> = rows.iter().map(|r| (r.label(), r.result.clone())).collect();
        adf_table(&pairs)
    });
    section(&mut out, "Correlation screen", &b.correlation, |c| {
        let mut t = correlation_table(&c.matrix);
        if c.flagged.is_empty() {
            t.push_str(&format!("no pair reaches |r| >= {}\n", c.threshold));
        }
        for f in &c.flagged {
            t.push_str(&format!(
                "flagged: {} / {} r = {:.3} (threshold {})\n",
                f.first, f.second, f.correlation, c.threshold
            ));
        }
        t
    });
    section(&mut out, "Principal components", &b.pca, |p| {
        let mut t = pca_table(&p.result);
        t.push('\n');
        t.push_str(&loadings_table(&p.result, p.components_used.len()));
        t.push_str(&format!(
            "retained {} component(s) under the {} rule (tau {})\n",
            p.components_used.len(),
            p.result.rule,
            p.result.tau
        ));
        t
    });
    section(&mut out, "Regression of VOL", &b.regression, |r| coefficient_table(&r.fit));
    section(&mut out, "Johansen cointegration", &b.cointegration, |c| {
        format!(
            "series: {}\n{}selected rank: {}\n",
            c.roles.join(", "),
            johansen_table(&c.result),
            c.result.selected_rank
        )
    });
    section(&mut out, "Granger causality", &b.granger, |g| granger_table(g));
    section(&mut out, "White heteroskedasticity test", &b.white, white_table);
    if !b.warnings.is_empty() {
        out.push_str("Warnings\n========\n");
        for w in &b.warnings {
            out.push_str(&format!("- {w}\n"));
        }
    }
    out
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let csv_err = |e: csv::Error| Error::Numerical(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn series_rows(s: &TradingSeries) -> Vec<Vec<String>> {
    s.dates()
        .iter()
        .zip(s.values())
        .map(|(d, v)| vec![d.to_string(), sig_str(*v)])
        .collect()
}

fn eigen_rows(p: &PcaResult) -> Vec<Vec<String>> {
    (0..p.eigenvalues.len())
        .map(|j| {
            let diff = p.eigenvalues.get(j + 1).map_or(String::new(), |next| sig_str(p.eigenvalues[j] - next));
            vec![
                PcaResult::component_label(j),
                sig_str(p.eigenvalues[j]),
                diff,
                sig_str(p.proportions[j]),
                sig_str(p.cumulative[j]),
            ]
        })
        .collect()
}

/// One CSV file per table or series; returns the files written.
pub fn report_csv(b: &ReportBundle, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    let mut put = |name: &str, header: &[&str], rows: Vec<Vec<String>>| -> Result<()> {
        let path = dir.join(name);
        write_csv(&path, header, &rows)?;
        files.push(path);
        Ok(())
    };

    let m = &b.metadata;
    let mut meta = vec![
        vec!["crate_version".to_string(), m.crate_version.clone()],
        vec!["settings_hash".to_string(), m.settings_hash.clone()],
        vec!["seed".to_string(), m.seed.to_string()],
    ];
    for (role, h) in &m.dataset_sha256 {
        meta.push(vec![format!("sha256:{role}"), h.clone()]);
    }
    put("metadata.csv", &["key", "value"], meta)?;

    if let Some(v) = b.volatility.result() {
        let p = &v.params;
        put(
            "garch.csv",
            &["parameter", "estimate"],
            [("mu", p.mu), ("omega", p.omega), ("alpha", p.alpha), ("beta", p.beta), ("log_likelihood", v.log_likelihood)]
                .iter()
                .map(|(k, x)| vec![k.to_string(), sig_str(*x)])
                .collect(),
        )?;
        put("volatility_daily.csv", &["date", "VOL"], series_rows(&v.daily))?;
        if let Some(s) = &v.monthly.series {
            put("volatility_monthly.csv", &["date", "monthly_volatility"], series_rows(s))?;
        }
    }
    if let Some(rows) = b.descriptive.result() {
        put(
            "descriptive.csv",
            &["variable", "n", "mean", "sd", "skewness", "kurtosis_excess", "min", "max"],
            rows.iter()
                .map(|r| {
                    let s = &r.stats;
                    let mut row = vec![r.variable.clone(), s.n.to_string()];
                    row.extend([s.mean, s.sd, s.skewness, s.kurtosis_excess, s.min, s.max].map(sig_str));
                    row
                })
                .collect(),
        )?;
    }
    if let Some(rows) = b.stationarity.result() {
        put(
            "stationarity.csv",
            &[
                "variable",
                "statistic",
                "critical_1pct",
                "critical_5pct",
                "critical_10pct",
                "p_value",
                "lags",
                "nobs",
                "decision",
            ],
            rows.iter()
                .map(|r| {
                    let a = &r.result;
                    let mut row = vec![r.label()];
                    row.extend([a.statistic, a.critical_1pct, a.critical_5pct, a.critical_10pct, a.p_value].map(sig_str));
                    row.extend([a.lags_used.to_string(), a.nobs.to_string(), a.decision.to_string()]);
                    row
                })
                .collect(),
        )?;
    }
    if let Some(c) = b.correlation.result() {
        let mut header = vec!["variable"];
        header.extend(c.matrix.roles.iter().map(String::as_str));
        let rows = c
            .matrix
            .roles
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = vec![r.clone()];
                row.extend((0..c.matrix.roles.len()).map(|j| sig_str(c.matrix.matrix[(i, j)])));
                row
            })
            .collect();
        put("correlation.csv", &header, rows)?;
    }
    if let Some(p) = b.pca.result() {
        let r = &p.result;
        put(
            "pca_eigenvalues.csv",
            &["component", "eigenvalue", "difference", "proportion", "cumulative"],
            eigen_rows(r),
        )?;
        put(
            "scree.csv",
            &["component", "eigenvalue"],
            r.eigenvalues.iter().enumerate().map(|(j, e)| vec![(j + 1).to_string(), sig_str(*e)]).collect(),
        )?;
        let labels: Vec<String> = (0..r.loadings.cols()).map(PcaResult::component_label).collect();
        let mut header = vec!["variable"];
        header.extend(labels.iter().map(String::as_str));
        let rows = r
            .roles
            .iter()
            .enumerate()
            .map(|(i, role)| {
                let mut row = vec![role.clone()];
                row.extend((0..r.loadings.cols()).map(|j| sig_str(r.loadings[(i, j)])));
                row
            })
            .collect();
        put("pca_loadings.csv", &header, rows)?;
    }
    if let Some(r) = b.regression.result() {
        put(
            "regression.csv",
            &["variable", "coefficient", "std_error", "t_value", "p_value"],
            r.fit
                .coefficient_table
                .iter()
                .map(|c| {
                    let mut row = vec![c.name.clone()];
                    row.extend([c.estimate, c.stderr, c.t, c.p].map(sig_str));
                    row
                })
                .collect(),
        )?;
    }
    if let Some(c) = b.cointegration.result() {
        put(
            "cointegration.csv",
            &["rank_hypothesis", "eigenvalue", "trace_statistic", "trace_p", "max_eigen_statistic", "max_eigen_p"],
            c.result
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.rank_hypothesis.to_string()];
                    row.extend([r.eigenvalue, r.trace_stat, r.trace_p, r.max_stat, r.max_p].map(sig_str));
                    row
                })
                .collect(),
        )?;
    }
    if let Some(g) = b.granger.result() {
        put(
            "granger.csv",
            &["null_hypothesis", "lags", "obs", "f_statistic", "df_num", "df_den", "p_value"],
            g.iter()
                .map(|r| {
                    vec![
                        r.null_hypothesis(),
                        r.lags.to_string(),
                        r.nobs.to_string(),
                        sig_str(r.f_statistic),
                        r.df_num.to_string(),
                        r.df_den.to_string(),
                        sig_str(r.p_value),
                    ]
                })
                .collect(),
        )?;
    }
    if let Some(w) = b.white.result() {
        put(
            "white.csv",
            &["f_statistic", "f_p_value", "n_r_squared", "df", "chi2_p_value", "nobs"],
            vec![vec![
                sig_str(w.f_statistic),
                sig_str(w.f_p_value),
                sig_str(w.n_r_squared),
                w.df.to_string(),
                sig_str(w.chi2_p_value),
                w.nobs.to_string(),
            ]],
        )?;
    }
    Ok(files)
}

/// Writes the report into `out_dir` (created if missing) and returns the
/// files written: `report.txt`, `report.json`, or one CSV per table.
pub fn emit_report(b: &ReportBundle, format: ReportFormat, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let single = |name: &str, text: String| -> Result<Vec<PathBuf>> {
        let path = out_dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(vec![path])
    };
    match format {
        ReportFormat::Text => single("report.txt", report_text(b)),
        ReportFormat::Json => single("report.json", report_json(b)?),
        ReportFormat::Csv => report_csv(b, out_dir),
    }
}
