//! Per-variable CSV ingestion and calendar alignment into one panel.

use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::NaiveDate;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::sig_str;
use crate::series::TradingSeries;

/// Which raw input a file supplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceRole {
    /// Stock index levels; returns and volatility are derived from it.
    #[serde(rename = "YIELD-SOURCE-PRICE")]
    YieldSourcePrice,
    #[serde(rename = "FXR")]
    Fxr,
    #[serde(rename = "CNB")]
    Cnb,
    #[serde(rename = "USB")]
    Usb,
}

impl SourceRole {
    pub const ALL: [SourceRole; 4] = [
        SourceRole::YieldSourcePrice,
        SourceRole::Fxr,
        SourceRole::Cnb,
        SourceRole::Usb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SourceRole::YieldSourcePrice => "YIELD-SOURCE-PRICE",
            SourceRole::Fxr => "FXR",
            SourceRole::Cnb => "CNB",
            SourceRole::Usb => "USB",
        }
    }
}

impl fmt::Display for SourceRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SourceRole::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown series role `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub role: SourceRole,
    pub path: PathBuf,
    #[serde(default = "default_date_column")]
    pub date_column: String,
    #[serde(default = "default_value_column")]
    pub value_column: String,
}

fn default_date_column() -> String {
    "date".into()
}

fn default_value_column() -> String {
    "value".into()
}

impl SeriesSpec {
    pub fn new(role: SourceRole, path: impl Into<PathBuf>) -> Self {
        Self {
            role,
            path: path.into(),
            date_column: default_date_column(),
            value_column: default_value_column(),
        }
    }
}

/// Reads one `date,value` series. Rows are sorted by date; duplicate dates
/// are rejected.
pub fn read_series(spec: &SeriesSpec) -> Result<TradingSeries> {
    let path_str = spec.path.display().to_string();
    let file = File::open(&spec.path).map_err(|e| Error::io(&spec.path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let ingest_err = |line: usize, msg: String| Error::Ingest {
        path: path_str.clone(),
        line,
        msg,
    };

    let headers = reader
        .headers()
        .map_err(|e| ingest_err(1, e.to_string()))?
        .clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim_start_matches('\u{feff}') == name)
            .ok_or_else(|| ingest_err(1, format!("missing column `{name}`")))
    };
    let date_idx = find(&spec.date_column)?;
    let value_idx = find(&spec.value_column)?;

    let mut rows: Vec<(NaiveDate, f64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            ingest_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let raw_date = record.get(date_idx).unwrap_or("");
        let raw_value = record.get(value_idx).unwrap_or("");
        let date = NaiveDate::parse_from_str(raw_date, "%Y-%m-%d")
            .map_err(|e| ingest_err(line, format!("invalid date `{raw_date}`: {e}")))?;
        let value: f64 = raw_value
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| ingest_err(line, format!("invalid value `{raw_value}`")))?;
        rows.push((date, value));
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput(path_str));
    }
    rows.sort_by_key(|(d, _)| *d);
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateDate {
            path: path_str,
            date: w[0].0,
        });
    }
    let (dates, values) = rows.into_iter().unzip();
    TradingSeries::new(dates, values)
}

/// Writes `date,<value_header>` with full round-trip precision.
pub fn write_series(path: &Path, series: &TradingSeries, value_header: &str) -> Result<()> {
    let mut out = String::with_capacity(series.len() * 24);
    out.push_str("date,");
    out.push_str(value_header);
    out.push('\n');
    for (d, v) in series.dates().iter().zip(series.values()) {
        out.push_str(&format!("{d},{v}\n"));
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlignPolicy {
    /// Keep only dates on which every series trades.
    #[default]
    Intersect,
    /// Keep the base calendar and carry other series forward.
    ForwardFill,
}

impl FromStr for AlignPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "intersect" => Ok(AlignPolicy::Intersect),
            "forward-fill" | "ffill" => Ok(AlignPolicy::ForwardFill),
            _ => Err(Error::Config(format!("unknown alignment policy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlignOptions {
    pub policy: AlignPolicy,
    /// Longest forward-fill carry, in calendar days.
    pub max_gap_days: i64,
}

impl Default for AlignOptions {
    fn default() -> Self {
        Self {
            policy: AlignPolicy::Intersect,
            max_gap_days: 7,
        }
    }
}

/// Several named columns on one shared, strictly increasing calendar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedPanel {
    dates: Vec<NaiveDate>,
    columns: IndexMap<String, Vec<f64>>,
}

impl AlignedPanel {
    pub fn new(dates: Vec<NaiveDate>, columns: IndexMap<String, Vec<f64>>) -> Result<Self> {
        if let Some(w) = dates.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Alignment(format!(
                "panel dates must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if let Some((name, col)) = columns.iter().find(|(_, c)| c.len() != dates.len()) {
            return Err(Error::Dimension(format!(
                "column {name} has {} values for {} dates",
                col.len(),
                dates.len()
            )));
        }
        Ok(Self { dates, columns })
    }

    pub fn from_series(cols: &[(&str, &TradingSeries)]) -> Result<Self> {
        let dates = cols
            .first()
            .map(|(_, s)| s.dates().to_vec())
            .unwrap_or_default();
        let mut columns = IndexMap::new();
        for (name, s) in cols {
            if s.dates() != dates.as_slice() {
                return Err(Error::Alignment(format!(
                    "series {name} is not on the panel calendar"
                )));
            }
            columns.insert(name.to_string(), s.values().to_vec());
        }
        Self::new(dates, columns)
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn roles(&self) -> impl Iterator<Item = &str> {
        self.columns.keys().map(String::as_str)
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, role: &str) -> Result<&[f64]> {
        self.columns
            .get(role)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Config(format!("panel has no column `{role}`")))
    }

    pub fn series(&self, role: &str) -> Result<TradingSeries> {
        TradingSeries::new(self.dates.clone(), self.column(role)?.to_vec())
    }

    pub fn columns(&self) -> &IndexMap<String, Vec<f64>> {
        &self.columns
    }

    pub fn insert(&mut self, role: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let role = role.into();
        if values.len() != self.dates.len() {
            return Err(Error::Dimension(format!(
                "column {role} has {} values for {} dates",
                values.len(),
                self.dates.len()
            )));
        }
        self.columns.insert(role, values);
        Ok(())
    }

    /// Sub-panel with the given columns, in order.
    pub fn select(&self, roles: &[&str]) -> Result<Self> {
        let mut columns = IndexMap::new();
        for r in roles {
            columns.insert(r.to_string(), self.column(r)?.to_vec());
        }
        Self::new(self.dates.clone(), columns)
    }

    /// Rows from `start` on.
    pub fn tail_from(&self, start: usize) -> Self {
        Self {
            dates: self.dates[start..].to_vec(),
            columns: self
                .columns
                .iter()
                .map(|(k, v)| (k.clone(), v[start..].to_vec()))
                .collect(),
        }
    }

    /// Writes `date,<roles...>` with 10 significant digits.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = String::from("date");
        for k in self.columns.keys() {
            out.push(',');
            out.push_str(k);
        }
        out.push('\n');
        for (i, d) in self.dates.iter().enumerate() {
            out.push_str(&d.to_string());
            for col in self.columns.values() {
                out.push(',');
                out.push_str(&sig_str(col[i]));
            }
            out.push('\n');
        }
        let mut f = File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
    }

    /// Reads the layout written by [`AlignedPanel::write_csv`]: a `date`
    /// column followed by one numeric column per role.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let path_str = path.display().to_string();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
        let ingest_err = |line: usize, msg: String| Error::Ingest {
            path: path_str.clone(),
            line,
            msg,
        };
        let headers = reader.headers().map_err(|e| ingest_err(1, e.to_string()))?.clone();
        if headers.get(0).map(|h| h.trim_start_matches('\u{feff}')) != Some("date") || headers.len() < 2 {
            return Err(ingest_err(1, "expected a `date` column followed by value columns".into()));
        }
        let mut dates = Vec::new();
        let mut columns: IndexMap<String, Vec<f64>> =
            headers.iter().skip(1).map(|h| (h.to_string(), Vec::new())).collect();
        for record in reader.records() {
            let record = record.map_err(|e| ingest_err(e.position().map_or(0, |p| p.line() as usize), e.to_string()))?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let raw_date = record.get(0).unwrap_or("");
            dates.push(
                NaiveDate::parse_from_str(raw_date, "%Y-%m-%d")
                    .map_err(|e| ingest_err(line, format!("invalid date `{raw_date}`: {e}")))?,
            );
            for (j, col) in columns.values_mut().enumerate() {
                let raw = record.get(j + 1).unwrap_or("");
                col.push(raw.parse().map_err(|_| ingest_err(line, format!("invalid value `{raw}`")))?);
            }
        }
        if dates.is_empty() {
            return Err(Error::EmptyInput(path_str));
        }
        Self::new(dates, columns)
    }
}

/// Joins named series onto one calendar. Under forward-fill the first
/// series supplies the base calendar.
pub fn align_panel(series: &[(String, TradingSeries)], options: &AlignOptions) -> Result<AlignedPanel> {
    if series.len() < 2 {
        return Err(Error::insufficient("panel alignment (series)", 2, series.len()));
    }
    let ranges = || {
        series
            .iter()
            .map(|(n, s)| format!("{n}: {}..{}", s.first_date(), s.last_date()))
            .collect::<Vec<_>>()
            .join(", ")
    };
    match options.policy {
        AlignPolicy::Intersect => {
            let mut dates: Vec<NaiveDate> = series[0].1.dates().to_vec();
            for (_, s) in &series[1..] {
                dates.retain(|d| s.dates().binary_search(d).is_ok());
            }
            if dates.is_empty() {
                return Err(Error::Alignment(format!(
                    "calendars do not intersect ({})",
                    ranges()
                )));
            }
            let mut columns = IndexMap::new();
            for (name, s) in series {
                let col = dates
                    .iter()
                    .map(|d| s.values()[s.dates().binary_search(d).expect("date in intersection")])
                    .collect();
                columns.insert(name.clone(), col);
            }
            AlignedPanel::new(dates, columns)
        }
        AlignPolicy::ForwardFill => {
            let base = &series[0].1;
            let start = series
                .iter()
                .map(|(_, s)| s.first_date())
                .max()
                .expect("at least two series");
            let dates: Vec<NaiveDate> = base.dates().iter().copied().filter(|d| *d >= start).collect();
            if dates.is_empty() {
                return Err(Error::Alignment(format!(
                    "no base date on or after every series starts ({})",
                    ranges()
                )));
            }
            let mut columns = IndexMap::new();
            for (name, s) in series {
                let mut col = Vec::with_capacity(dates.len());
                for d in &dates {
                    // latest observation on or before d
                    let idx = s.dates().partition_point(|x| x <= d) - 1;
                    let from = s.dates()[idx];
                    let gap = (*d - from).num_days();
                    if gap > options.max_gap_days {
                        return Err(Error::StaleData {
                            role: name.clone(),
                            from,
                            to: *d,
                            gap_days: gap,
                            max_gap: options.max_gap_days,
                        });
                    }
                    col.push(s.values()[idx]);
                }
                columns.insert(name.clone(), col);
            }
            AlignedPanel::new(dates, columns)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueKind {
    NonFinite,
    Constant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelIssue {
    pub role: String,
    pub kind: IssueKind,
    pub date: Option<NaiveDate>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnCheck {
    pub role: String,
    pub observations: usize,
    pub all_finite: bool,
    pub constant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub columns: Vec<ColumnCheck>,
    pub issues: Vec<PanelIssue>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn has_non_finite(&self) -> bool {
        self.issues.iter().any(|i| i.kind == IssueKind::NonFinite)
    }
}

pub fn validate_panel(p: &AlignedPanel) -> ValidationReport {
    let mut columns = Vec::new();
    let mut issues = Vec::new();
    for (role, col) in p.columns() {
        let mut all_finite = true;
        for (i, v) in col.iter().enumerate() {
            if !v.is_finite() {
                all_finite = false;
                issues.push(PanelIssue {
                    role: role.clone(),
                    kind: IssueKind::NonFinite,
                    date: Some(p.dates()[i]),
                    message: format!("non-finite value {v}"),
                });
            }
        }
        let constant = col.windows(2).all(|w| w[0] == w[1]);
        if constant {
            issues.push(PanelIssue {
                role: role.clone(),
                kind: IssueKind::Constant,
                date: None,
                message: "constant column; unit-root tests and PCA would degenerate".into(),
            });
        }
        columns.push(ColumnCheck {
            role: role.clone(),
            observations: col.len(),
            all_finite,
            constant,
        });
    }
    ValidationReport { columns, issues }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetConfig {
    #[serde(default)]
    pub policy: AlignPolicy,
    #[serde(default = "default_max_gap")]
    pub max_gap_days: i64,
    pub series: Vec<SeriesSpec>,
}

fn default_max_gap() -> i64 {
    7
}

impl DatasetConfig {
    /// Parses a TOML dataset description. Relative paths are resolved
    /// against `base_dir`.
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: DatasetConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.resolve_paths(base_dir);
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub(crate) fn resolve_paths(&mut self, base_dir: &Path) {
        for s in &mut self.series {
            if s.path.is_relative() {
                s.path = base_dir.join(&s.path);
            }
        }
    }

    pub fn check(&self) -> Result<()> {
        for (i, s) in self.series.iter().enumerate() {
            if self.series[..i].iter().any(|o| o.role == s.role) {
                return Err(Error::Config(format!("role {} declared twice", s.role)));
            }
        }
        if self.max_gap_days < 0 {
            return Err(Error::Config("max_gap_days must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn spec(&self, role: SourceRole) -> Result<&SeriesSpec> {
        self.series
            .iter()
            .find(|s| s.role == role)
            .ok_or_else(|| Error::Config(format!("dataset has no {role} series")))
    }

    pub fn align_options(&self) -> AlignOptions {
        AlignOptions {
            policy: self.policy,
            max_gap_days: self.max_gap_days,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(day: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(2024, 3, day).unwrap()
    }

    fn ts(days: &[u32], values: &[f64]) -> TradingSeries {
        TradingSeries::new(days.iter().map(|x| d(*x)).collect(), values.to_vec()).unwrap()
    }

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn reads_well_formed_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "a.csv",
            "date,value\n2015-06-12,5166.35\n2015-06-10,5106.04\n2015-06-11,5121.59\n",
        );
        let s = read_series(&SeriesSpec::new(SourceRole::YieldSourcePrice, p)).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.values()[0], 5106.04);
    }

    #[test]
    fn invalid_calendar_date_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "date,value\n2015-06-30,1\n2015-06-31,2\n");
        match read_series(&SeriesSpec::new(SourceRole::Fxr, p)) {
            Err(Error::Ingest { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_value_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "date,value\n2015-06-29,1\n2015-06-30,n/a\n");
        match read_series(&SeriesSpec::new(SourceRole::Fxr, p)) {
            Err(Error::Ingest { line, msg, .. }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("n/a"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_and_empty() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "date,value\n2015-06-29,1\n2015-06-29,2\n");
        assert!(matches!(
            read_series(&SeriesSpec::new(SourceRole::Cnb, p)),
            Err(Error::DuplicateDate { .. })
        ));
        let p = write(dir.path(), "b.csv", "date,value\n");
        assert!(matches!(
            read_series(&SeriesSpec::new(SourceRole::Cnb, p)),
            Err(Error::EmptyInput(_))
        ));
        let p = write(dir.path(), "c.csv", "day,value\n2015-06-29,1\n");
        assert!(matches!(
            read_series(&SeriesSpec::new(SourceRole::Cnb, p)),
            Err(Error::Ingest { line: 1, .. })
        ));
    }

    #[test]
    fn write_then_read_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let s = ts(&[1, 4, 5], &[0.1 + 0.2, 1.0 / 3.0, -6.093e-7]);
        let p = dir.path().join("s.csv");
        write_series(&p, &s, "value").unwrap();
        let back = read_series(&SeriesSpec::new(SourceRole::Usb, p)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn identical_calendars_agree_across_policies() {
        let a = ts(&[1, 2, 3], &[1.0, 2.0, 3.0]);
        let b = ts(&[1, 2, 3], &[4.0, 5.0, 6.0]);
        let input = vec![("A".to_string(), a), ("B".to_string(), b)];
        let i = align_panel(&input, &AlignOptions::default()).unwrap();
        let f = align_panel(
            &input,
            &AlignOptions {
                policy: AlignPolicy::ForwardFill,
                max_gap_days: 7,
            },
        )
        .unwrap();
        assert_eq!(i, f);
    }

    #[test]
    fn intersect_and_forward_fill() {
        let cn = ts(&[1, 2, 3], &[1.0, 2.0, 3.0]);
        let us = ts(&[1, 3], &[10.0, 30.0]);
        let input = vec![("CN".to_string(), cn), ("US".to_string(), us)];
        let i = align_panel(&input, &AlignOptions::default()).unwrap();
        assert_eq!(i.dates(), &[d(1), d(3)]);
        assert_eq!(i.column("US").unwrap(), &[10.0, 30.0]);

        let f = align_panel(
            &input,
            &AlignOptions {
                policy: AlignPolicy::ForwardFill,
                max_gap_days: 7,
            },
        )
        .unwrap();
        assert_eq!(f.dates(), &[d(1), d(2), d(3)]);
        assert_eq!(f.column("US").unwrap(), &[10.0, 10.0, 30.0]);
    }

    #[test]
    fn alignment_errors() {
        let a = ts(&[1, 2], &[1.0, 2.0]);
        let b = ts(&[3, 4], &[1.0, 2.0]);
        let input = vec![("A".to_string(), a.clone()), ("B".to_string(), b)];
        match align_panel(&input, &AlignOptions::default()) {
            Err(Error::Alignment(msg)) => assert!(msg.contains("A: 2024-03-01..2024-03-02")),
            other => panic!("{other:?}"),
        }
        let base = ts(&[1, 2, 20], &[1.0, 2.0, 3.0]);
        let input = vec![("BASE".to_string(), base), ("A".to_string(), a)];
        let r = align_panel(
            &input,
            &AlignOptions {
                policy: AlignPolicy::ForwardFill,
                max_gap_days: 7,
            },
        );
        assert!(matches!(r, Err(Error::StaleData { gap_days: 18, .. })));
    }

    #[test]
    fn intersect_is_order_insensitive() {
        let a = ts(&[1, 2, 3, 5], &[1.0, 2.0, 3.0, 5.0]);
        let b = ts(&[2, 3, 4, 5], &[20.0, 30.0, 40.0, 50.0]);
        let c = ts(&[1, 3, 5], &[100.0, 300.0, 500.0]);
        let fwd = vec![
            ("A".to_string(), a.clone()),
            ("B".to_string(), b.clone()),
            ("C".to_string(), c.clone()),
        ];
        let rev = vec![("C".to_string(), c), ("B".to_string(), b), ("A".to_string(), a)];
        let p1 = align_panel(&fwd, &AlignOptions::default()).unwrap();
        let p2 = align_panel(&rev, &AlignOptions::default()).unwrap();
        assert_eq!(p1.dates(), p2.dates());
        for r in ["A", "B", "C"] {
            assert_eq!(p1.column(r).unwrap(), p2.column(r).unwrap());
        }
    }

    #[test]
    fn validation_report() {
        let mut cols = IndexMap::new();
        cols.insert("X".to_string(), vec![1.0, 2.0, 3.0]);
        let clean = AlignedPanel::new(vec![d(1), d(2), d(3)], cols.clone()).unwrap();
        assert!(validate_panel(&clean).is_clean());

        cols.insert("BAD".to_string(), vec![1.0, f64::NAN, 3.0]);
        cols.insert("FLAT".to_string(), vec![2.0, 2.0, 2.0]);
        let p = AlignedPanel::new(vec![d(1), d(2), d(3)], cols).unwrap();
        let r = validate_panel(&p);
        assert_eq!(r.issues.len(), 2);
        assert_eq!(r.issues[0].role, "BAD");
        assert_eq!(r.issues[0].date, Some(d(2)));
        assert_eq!(r.issues[1].kind, IssueKind::Constant);
        assert_eq!(r.columns[1].observations, 3);
    }

    #[test]
    fn dataset_config_parses_and_resolves() {
        let text = r#"
policy = "forward-fill"
max_gap_days = 5

[[series]]
role = "YIELD-SOURCE-PRICE"
path = "price.csv"

[[series]]
role = "FXR"
path = "/abs/fxr.csv"
value_column = "close"
"#;
        let cfg = DatasetConfig::from_toml(text, Path::new("/data")).unwrap();
        assert_eq!(cfg.policy, AlignPolicy::ForwardFill);
        assert_eq!(cfg.spec(SourceRole::YieldSourcePrice).unwrap().path, Path::new("/data/price.csv"));
        assert_eq!(cfg.spec(SourceRole::Fxr).unwrap().value_column, "close");
        assert!(cfg.spec(SourceRole::Usb).is_err());

        let dup = "[[series]]\nrole = \"FXR\"\npath = \"a\"\n[[series]]\nrole = \"FXR\"\npath = \"b\"\n";
        assert!(matches!(
            DatasetConfig::from_toml(dup, Path::new(".")),
            Err(Error::Config(_))
        ));
    }
}
