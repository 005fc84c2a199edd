//! Standardization and correlation-matrix principal components.

use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::AlignedPanel;
use crate::numerics::{mean, sample_variance, sym_eigen, DenseMatrix};

/// Columns centered and scaled to unit sample standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardizedPanel {
    pub dates: Vec<NaiveDate>,
    pub roles: Vec<String>,
    /// Observations in rows, variables in columns.
    pub data: DenseMatrix,
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
}

pub fn standardize(p: &AlignedPanel, roles: &[&str]) -> Result<StandardizedPanel> {
    let n = p.len();
    let k = roles.len();
    if k == 0 {
        return Err(Error::Parameter("no columns to standardize".into()));
    }
    if n < 2 {
        return Err(Error::insufficient("standardization", 2, n));
    }
    let mut data = DenseMatrix::zeros(n, k);
    let mut means = Vec::with_capacity(k);
    let mut sds = Vec::with_capacity(k);
    for (j, role) in roles.iter().enumerate() {
        let col = p.column(role)?;
        if col.iter().all(|v| *v == col[0]) {
            return Err(Error::Degenerate(format!("column {role} is constant")));
        }
        let m = mean(col);
        let sd = sample_variance(col).sqrt();
        for (i, v) in col.iter().enumerate() {
            data[(i, j)] = (v - m) / sd;
        }
        means.push(m);
        sds.push(sd);
    }
    Ok(StandardizedPanel {
        dates: p.dates().to_vec(),
        roles: roles.iter().map(|r| r.to_string()).collect(),
        data,
        means,
        sds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionRule {
    /// Eigenvalues strictly above 1.
    Kaiser,
    /// Smallest k whose cumulative proportion reaches `tau`.
    Cumulative,
    /// The larger of the two counts.
    #[default]
    Both,
}

impl FromStr for SelectionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kaiser" => Ok(Self::Kaiser),
            "cumulative" => Ok(Self::Cumulative),
            "both" => Ok(Self::Both),
            other => Err(Error::Parameter(format!(
                "unknown component rule {other:?} (expected kaiser, cumulative or both)"
            ))),
        }
    }
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Kaiser => "kaiser",
            Self::Cumulative => "cumulative",
            Self::Both => "both",
        })
    }
}

pub const DEFAULT_TAU: f64 = 0.70;

pub fn select_components(eigenvalues: &[f64], rule: SelectionRule, tau: f64) -> Result<usize> {
    if eigenvalues.is_empty() {
        return Err(Error::Parameter("no eigenvalues to select from".into()));
    }
    if eigenvalues.iter().any(|v| !(*v >= 0.0)) || eigenvalues.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Parameter("eigenvalues must be nonnegative and descending".into()));
    }
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::Parameter(format!("cumulative share {tau} must lie in (0, 1]")));
    }
    let kaiser = eigenvalues.iter().filter(|v| **v > 1.0).count();
    let total: f64 = eigenvalues.iter().sum();
    let mut acc = 0.0;
    let mut cumulative = eigenvalues.len();
    for (i, v) in eigenvalues.iter().enumerate() {
        acc += v;
        if acc / total >= tau {
            cumulative = i + 1;
            break;
        }
    }
    Ok(match rule {
        SelectionRule::Kaiser => kaiser,
        SelectionRule::Cumulative => cumulative,
        SelectionRule::Both => kaiser.max(cumulative),
    })
}

/// `(proportions, cumulative)` of a spectrum.
pub fn explained_variance(eigenvalues: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let total: f64 = eigenvalues.iter().sum();
    let proportions: Vec<f64> = eigenvalues.iter().map(|v| v / total).collect();
    let mut acc = 0.0;
    let mut cumulative: Vec<f64> = proportions
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    if let Some(last) = cumulative.last_mut() {
        *last = 1.0;
    }
    (proportions, cumulative)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaResult {
    pub roles: Vec<String>,
    pub eigenvalues: Vec<f64>,
    pub proportions: Vec<f64>,
    pub cumulative: Vec<f64>,
    /// Variables in rows, components in columns; unit-norm columns whose
    /// largest-magnitude entry is positive.
    pub loadings: DenseMatrix,
    pub selected_k: usize,
    pub rule: SelectionRule,
    pub tau: f64,
    pub column_means: Vec<f64>,
    pub column_sds: Vec<f64>,
}

impl PcaResult {
    pub fn component_label(j: usize) -> String {
        format!("F{}", j + 1)
    }
}

pub fn pca(z: &StandardizedPanel) -> Result<PcaResult> {
    pca_with(z, SelectionRule::Both, DEFAULT_TAU)
}

pub fn pca_with(z: &StandardizedPanel, rule: SelectionRule, tau: f64) -> Result<PcaResult> {
    let n = z.data.rows();
    let p = z.data.cols();
    if p < 2 {
        return Err(Error::Parameter("principal components need at least two columns".into()));
    }
    if n <= p {
        return Err(Error::insufficient("principal components (rows > columns)", p + 1, n));
    }
    let mut corr = z.data.gram();
    for i in 0..p {
        for j in 0..p {
            corr[(i, j)] /= (n - 1) as f64;
        }
    }
    let eig = sym_eigen(&corr)?;
    let mut loadings = eig.eigenvectors;
    for j in 0..p {
        let mut best = 0;
        for i in 1..p {
            if loadings[(i, j)].abs() > loadings[(best, j)].abs() {
                best = i;
            }
        }
        if loadings[(best, j)] < 0.0 {
            for i in 0..p {
                loadings[(i, j)] = -loadings[(i, j)];
            }
        }
    }
    let eigenvalues: Vec<f64> = eig.eigenvalues.iter().map(|v| v.max(0.0)).collect();
    let (proportions, cumulative) = explained_variance(&eigenvalues);
    let selected_k = select_components(&eigenvalues, rule, tau)?;
    Ok(PcaResult {
        roles: z.roles.clone(),
        eigenvalues,
        proportions,
        cumulative,
        loadings,
        selected_k,
        rule,
        tau,
        column_means: z.means.clone(),
        column_sds: z.sds.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScorePanel {
    pub dates: Vec<NaiveDate>,
    pub scores: IndexMap<String, Vec<f64>>,
}

impl ScorePanel {
    pub fn to_panel(&self) -> Result<AlignedPanel> {
        AlignedPanel::new(self.dates.clone(), self.scores.clone())
    }
}

/// Scores on the `selected_k` retained components.
pub fn scores(result: &PcaResult, z: &StandardizedPanel) -> Result<ScorePanel> {
    component_scores(result, z, result.selected_k)
}

/// Projections of the standardized data on the first `k` loading columns,
/// labelled `F1..Fk`.
pub fn component_scores(result: &PcaResult, z: &StandardizedPanel, k: usize) -> Result<ScorePanel> {
    let p = result.loadings.rows();
    if z.data.cols() != p || z.roles != result.roles {
        return Err(Error::Dimension(format!(
            "panel has columns {:?} but the loadings are for {:?}",
            z.roles, result.roles
        )));
    }
    if k > result.loadings.cols() {
        return Err(Error::Parameter(format!("{k} components requested, {p} available")));
    }
    let mut scores = IndexMap::new();
    for j in 0..k {
        let col = result.loadings.column(j);
        scores.insert(PcaResult::component_label(j), z.data.matvec(&col)?);
    }
    Ok(ScorePanel {
        dates: z.dates.clone(),
        scores,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProxyFlag {
    pub component: String,
    pub variable: String,
    pub loading: f64,
}

/// Components dominated by a single variable: one loading above 0.9 in
/// magnitude and every other below 0.1.
pub fn proxies(result: &PcaResult, k: usize) -> Vec<ProxyFlag> {
    let p = result.loadings.rows();
    let mut out = Vec::new();
    for j in 0..k.min(result.loadings.cols()) {
        let col = result.loadings.column(j);
        if let Some(i) = col.iter().position(|v| v.abs() > 0.9) {
            if (0..p).all(|r| r == i || col[r].abs() < 0.1) {
                out.push(ProxyFlag {
                    component: PcaResult::component_label(j),
                    variable: result.roles[i].clone(),
                    loading: col[i],
                });
            }
        }
    }
    out
}

/// Eigenvalue table: Component, Eigenvalue, Difference, Proportion,
/// Cumulative.
pub fn pca_table(result: &PcaResult) -> String {
    let header = ["Component", "Eigenvalue", "Difference", "Proportion", "Cumulative"];
    let m = result.eigenvalues.len();
    let rows: Vec<Vec<String>> = (0..m)
        .map(|j| {
            let diff = if j + 1 < m {
                format!("{:.4}", result.eigenvalues[j] - result.eigenvalues[j + 1])
            } else {
                String::new()
            };
            vec![
                format!("Comp{}", j + 1),
                format!("{:.4}", result.eigenvalues[j]),
                diff,
                format!("{:.4}", result.proportions[j]),
                format!("{:.4}", result.cumulative[j]),
            ]
        })
        .collect();
    crate::format::text_table(&header, &rows)
}

/// Loadings of the first `k` components, one row per variable.
pub fn loadings_table(result: &PcaResult, k: usize) -> String {
    let k = k.min(result.loadings.cols());
    let mut header = vec!["Variable".to_string()];
    header.extend((0..k).map(PcaResult::component_label));
    let rows: Vec<Vec<String>> = result
        .roles
        .iter()
        .enumerate()
        .map(|(i, role)| {
            let mut row = vec![role.clone()];
            row.extend((0..k).map(|j| format!("{:.5}", result.loadings[(i, j)])));
            row
        })
        .collect();
    crate::format::text_table(&header, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    const PUBLISHED: [f64; 7] = [3.3865, 2.0067, 0.9993, 0.6012, 0.0033, 0.0020, 0.0009];

    fn panel(cols: &[Vec<f64>]) -> AlignedPanel {
        let n = cols[0].len();
        let start = NaiveDate::from_ymd_opt(2020, 1, 1).unwrap();
        let dates = (0..n).map(|i| start + chrono::Days::new(i as u64)).collect();
        let mut map = IndexMap::new();
        for (j, c) in cols.iter().enumerate() {
            map.insert(format!("V{j}"), c.clone());
        }
        AlignedPanel::new(dates, map).unwrap()
    }

    fn roles(k: usize) -> Vec<String> {
        (0..k).map(|j| format!("V{j}")).collect()
    }

    #[test]
    fn standardize_hand_value_and_idempotence() {
        let p = panel(&[vec![1.0, 2.0, 3.0]]);
        let z = standardize(&p, &["V0"]).unwrap();
        assert_eq!(z.data.column(0), vec![-1.0, 0.0, 1.0]);
        let again = standardize(&panel(&[z.data.column(0)]), &["V0"]).unwrap();
        for (a, b) in again.data.column(0).iter().zip(z.data.column(0)) {
            assert!((a - b).abs() < 1e-12);
        }
        let flat = panel(&[vec![1.0, 2.0, 3.0], vec![4.0; 3]]);
        assert!(matches!(standardize(&flat, &["V0", "V1"]), Err(Error::Degenerate(m)) if m.contains("V1")));
    }

    #[test]
    fn selection_rules() {
        assert_eq!(select_components(&PUBLISHED, SelectionRule::Both, 0.70).unwrap(), 2);
        let (_, cum) = explained_variance(&PUBLISHED);
        assert!((cum[1] - 5.3932 / 6.9999).abs() < 1e-12);
        assert_eq!(select_components(&[1.0; 4], SelectionRule::Kaiser, 0.7).unwrap(), 0);
        assert_eq!(select_components(&[1.0; 4], SelectionRule::Both, 0.7).unwrap(), 3);
        assert_eq!(select_components(&[3.0, 1.0], SelectionRule::Both, 0.7).unwrap(), 1);
        assert_eq!(select_components(&[3.0, 1.0], SelectionRule::Kaiser, 0.7).unwrap(), 1);
        assert!(select_components(&[], SelectionRule::Both, 0.7).is_err());
    }

    #[test]
    fn two_column_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a: Vec<f64> = (0..200).map(|_| StandardNormal.sample(&mut rng)).collect();
        let b: Vec<f64> = (0..200).map(|_| StandardNormal.sample(&mut rng)).collect();
        let p = panel(&[a, b]);
        let z = standardize(&p, &["V0", "V1"]).unwrap();
        let r = crate::numerics::pearson(&z.data.column(0), &z.data.column(1));
        let pc = pca(&z).unwrap();
        assert!((pc.eigenvalues[0] - (1.0 + r.abs())).abs() < 1e-12);
        assert!((pc.eigenvalues[1] - (1.0 - r.abs())).abs() < 1e-12);
    }

    #[test]
    fn identities_and_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let base: Vec<f64> = (0..300).map(|_| StandardNormal.sample(&mut rng)).collect();
        let cols: Vec<Vec<f64>> = (0..4)
            .map(|j| {
                base.iter()
                    .map(|b| {
                        let e: f64 = StandardNormal.sample(&mut rng);
                        b * j as f64 + e
                    })
                    .collect()
            })
            .collect();
        let p = panel(&cols);
        let names = roles(4);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let z = standardize(&p, &refs).unwrap();
        let pc = pca(&z).unwrap();
        assert!((pc.eigenvalues.iter().sum::<f64>() - 4.0).abs() < 1e-8);
        let ltl = pc.loadings.transpose().matmul(&pc.loadings).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ltl[(i, j)] - want).abs() < 1e-8);
            }
        }
        let s = component_scores(&pc, &z, 4).unwrap();
        for (j, (_, col)) in s.scores.iter().enumerate() {
            assert!((sample_variance(col) - pc.eigenvalues[j]).abs() < 1e-8);
        }
        for i in 0..300 {
            for v in 0..4 {
                let rec: f64 = (0..4).map(|j| s.scores[j][i] * pc.loadings[(v, j)]).sum();
                assert!((rec - z.data[(i, v)]).abs() < 1e-8);
            }
        }
        assert_eq!(pca(&z).unwrap().loadings, pc.loadings);
    }

    #[test]
    fn identity_loadings_give_standardized_scores() {
        let p = panel(&[vec![1.0, 3.0, 2.0, 5.0], vec![2.0, 1.0, 4.0, 3.0]]);
        let z = standardize(&p, &["V0", "V1"]).unwrap();
        let mut pc = pca(&z).unwrap();
        pc.loadings = DenseMatrix::identity(2);
        let s = component_scores(&pc, &z, 2).unwrap();
        assert_eq!(s.scores["F1"], z.data.column(0));
        assert_eq!(s.scores["F2"], z.data.column(1));
    }

    #[test]
    fn proxy_flag_on_published_loadings() {
        let f1 = [0.00493, -0.27164, -0.27132, 0.24877, 0.24899, 0.20148, 0.20131];
        let f2 = [0.95855, -0.08663, -0.08472, -0.01422, -0.01268, -0.03435, -0.03411];
        let rows: Vec<Vec<f64>> = (0..7).map(|i| vec![f1[i], f2[i]]).collect();
        let names = ["VOL(L)", "FXR", "FXR(L)", "CNB", "CNB(L)", "USB", "USB(L)"];
        let pc = PcaResult {
            roles: names.iter().map(|s| s.to_string()).collect(),
            eigenvalues: PUBLISHED.to_vec(),
            proportions: vec![],
            cumulative: vec![],
            loadings: DenseMatrix::from_rows(&rows).unwrap(),
            selected_k: 2,
            rule: SelectionRule::Both,
            tau: 0.7,
            column_means: vec![],
            column_sds: vec![],
        };
        let flags = proxies(&pc, 2);
        assert_eq!(flags.len(), 1);
        assert_eq!((flags[0].component.as_str(), flags[0].variable.as_str()), ("F2", "VOL(L)"));
        assert!(loadings_table(&pc, 2).contains("0.95855"));
    }
}
