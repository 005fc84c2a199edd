//! Johansen reduced-rank cointegration test (trace and maximum eigenvalue).
//!
//! The VECM `dY_t = a b' (Y_{t-1}, d_t) + G_1 dY_{t-1} + ... + e_t` is
//! estimated by canonical correlations between `dY_t` and the lagged levels
//! after both are purged of the lagged differences. With
//! [`JohansenDeterministic::Constant`] the constant enters the cointegrating
//! relation only (no linear trend in the levels).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::johansen_tables::{MAX_DIM, MAX_CONSTANT, MAX_NONE, TAIL_PROBS, TRACE_CONSTANT, TRACE_NONE};
use crate::error::{Error, Result};
use crate::ingest::AlignedPanel;
use crate::numerics::{cholesky, forward_substitute, residualize, sym_eigen, DenseMatrix};

/// Cholesky pivot tolerance used to detect a singular panel.
const SINGULAR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum JohansenDeterministic {
    None,
    #[default]
    Constant,
}

impl JohansenDeterministic {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Constant => "constant",
        }
    }
}

impl fmt::Display for JohansenDeterministic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for JohansenDeterministic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" | "n" => Ok(Self::None),
            "constant" | "c" => Ok(Self::Constant),
            other => Err(Error::Parameter(format!(
                "unknown Johansen deterministic spec {other:?} (expected none or constant)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankStatistic {
    Trace,
    MaxEigen,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub rank_hypothesis: usize,
    pub eigenvalue: f64,
    pub trace_stat: f64,
    pub trace_p: f64,
    pub max_stat: f64,
    pub max_p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CointegrationResult {
    pub rows: Vec<RankRow>,
    pub selected_rank: usize,
    pub nobs: usize,
    pub var_lags: usize,
    pub det_spec: JohansenDeterministic,
}

/// Smallest rank whose trace null is not rejected at `alpha`; the full
/// dimension when every null is rejected.
pub fn select_rank(trace_p: &[f64], alpha: f64) -> usize {
    trace_p.iter().position(|p| *p >= alpha).unwrap_or(trace_p.len())
}

#[derive(Debug, Clone, PartialEq)]
pub struct JohansenEigen {
    /// Squared canonical correlations, descending, one per variable.
    pub eigenvalues: Vec<f64>,
    /// Effective sample size `T`.
    pub nobs: usize,
}

impl JohansenEigen {
    /// `-T sum_{i > r} ln(1 - l_i)`.
    pub fn trace(&self, r: usize) -> f64 {
        let t = self.nobs as f64;
        -t * self.eigenvalues[r..].iter().map(|l| (1.0 - l).ln()).sum::<f64>()
    }

    /// `-T ln(1 - l_{r+1})`.
    pub fn max_eigen(&self, r: usize) -> f64 {
        -(self.nobs as f64) * (1.0 - self.eigenvalues[r]).ln()
    }
}

/// Eigenvalues of the reduced-rank problem for the columns of `levels`
/// (rows are time).
pub fn johansen_eigenvalues(
    levels: &DenseMatrix,
    var_lags: usize,
    det: JohansenDeterministic,
) -> Result<JohansenEigen> {
    let m = levels.cols();
    let n = levels.rows();
    if var_lags == 0 {
        return Err(Error::Parameter("VAR lag order must be at least 1".into()));
    }
    if n < 20 * m || n <= var_lags + m + 1 {
        return Err(Error::insufficient("Johansen test", (20 * m).max(var_lags + m + 2), n));
    }
    let t_len = n - var_lags;
    let p1 = m + usize::from(det == JohansenDeterministic::Constant);
    let nz2 = m * (var_lags - 1);
    let mut z0 = DenseMatrix::zeros(t_len, m);
    let mut z1 = DenseMatrix::zeros(t_len, p1);
    let mut z2 = DenseMatrix::zeros(t_len, nz2.max(1));
    for (row, t) in (var_lags..n).enumerate() {
        for j in 0..m {
            z0[(row, j)] = levels[(t, j)] - levels[(t - 1, j)];
            z1[(row, j)] = levels[(t - 1, j)];
            for i in 1..var_lags {
                z2[(row, (i - 1) * m + j)] = levels[(t - i, j)] - levels[(t - i - 1, j)];
            }
        }
        if p1 > m {
            z1[(row, m)] = 1.0;
        }
    }
    let singular = |e: Error| match e {
        Error::SingularDesign { .. } | Error::SingularPanel(_) => {
            Error::SingularPanel("panel columns are linearly dependent".into())
        }
        other => other,
    };
    let (r0, r1) = if nz2 > 0 {
        (
            residualize(&z2, &z0).map_err(singular)?,
            residualize(&z2, &z1).map_err(singular)?,
        )
    } else {
        (z0, z1)
    };
    let s00 = r0.gram();
    let s11 = r1.gram();
    let s10 = r1.transpose().matmul(&r0)?;
    let l = cholesky(&s11, SINGULAR_TOL).map_err(singular)?;
    let c = cholesky(&s00, SINGULAR_TOL).map_err(singular)?;
    // A = L⁻¹ S10 S00⁻¹ S01 L⁻ᵀ = BᵀB with B = C⁻¹ (L⁻¹ S10)ᵀ
    let a1 = forward_substitute(&l, &s10);
    let b = forward_substitute(&c, &a1.transpose());
    let a = b.gram();
    let eig = sym_eigen(&a)?;
    let eigenvalues = eig.eigenvalues[..m]
        .iter()
        .map(|v| v.clamp(0.0, 1.0 - 1e-15))
        .collect();
    Ok(JohansenEigen {
        eigenvalues,
        nobs: t_len,
    })
}

pub fn johansen_test(
    panel: &AlignedPanel,
    roles: &[&str],
    var_lags: usize,
    det: JohansenDeterministic,
) -> Result<CointegrationResult> {
    let cols = roles.iter().map(|r| panel.column(r)).collect::<Result<Vec<_>>>()?;
    johansen_test_matrix(&DenseMatrix::from_columns(&cols)?, var_lags, det)
}

pub fn johansen_test_matrix(
    levels: &DenseMatrix,
    var_lags: usize,
    det: JohansenDeterministic,
) -> Result<CointegrationResult> {
    let m = levels.cols();
    if m < 2 {
        return Err(Error::Parameter("cointegration needs at least two series".into()));
    }
    if m > MAX_DIM {
        return Err(Error::Parameter(format!(
            "Johansen p-values are tabulated for at most {MAX_DIM} series, got {m}"
        )));
    }
    let eig = johansen_eigenvalues(levels, var_lags, det)?;
    let rows: Vec<RankRow> = (0..m)
        .map(|r| {
            let trace_stat = eig.trace(r);
            let max_stat = eig.max_eigen(r);
            RankRow {
                rank_hypothesis: r,
                eigenvalue: eig.eigenvalues[r],
                trace_stat,
                trace_p: johansen_p_value(trace_stat, m - r, det, RankStatistic::Trace),
                max_stat,
                max_p: johansen_p_value(max_stat, m - r, det, RankStatistic::MaxEigen),
            }
        })
        .collect();
    let p: Vec<f64> = rows.iter().map(|r| r.trace_p).collect();
    Ok(CointegrationResult {
        selected_rank: select_rank(&p, 0.05),
        rows,
        nobs: eig.nobs,
        var_lags,
        det_spec: det,
    })
}

/// Asymptotic p-value of a trace or maximum-eigenvalue statistic when
/// `dim` common stochastic trends remain under the null. Tail
/// probabilities are interpolated log-linearly between tabulated
/// quantiles.
pub fn johansen_p_value(stat: f64, dim: usize, det: JohansenDeterministic, kind: RankStatistic) -> f64 {
    assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} outside the tables");
    let q: &[f64] = match (det, kind) {
        (JohansenDeterministic::None, RankStatistic::Trace) => &TRACE_NONE[dim - 1],
        (JohansenDeterministic::None, RankStatistic::MaxEigen) => &MAX_NONE[dim - 1],
        (JohansenDeterministic::Constant, RankStatistic::Trace) => &TRACE_CONSTANT[dim - 1],
        (JohansenDeterministic::Constant, RankStatistic::MaxEigen) => &MAX_CONSTANT[dim - 1],
    };
    tail_probability(stat, q, &TAIL_PROBS)
}

fn tail_probability(stat: f64, q: &[f64], probs: &[f64]) -> f64 {
    if stat.is_nan() {
        return f64::NAN;
    }
    if stat <= q[0] {
        if stat <= 0.0 {
            return 1.0;
        }
        return 1.0 - (1.0 - probs[0]) * stat / q[0];
    }
    let k = q.len();
    let i = q.partition_point(|v| *v < stat).clamp(1, k - 1);
    let (x0, x1) = (q[i - 1], q[i]);
    let (l0, l1) = (probs[i - 1].ln(), probs[i].ln());
    let lp = l0 + (l1 - l0) * (stat - x0) / (x1 - x0);
    lp.exp().min(1.0)
}

pub fn johansen_table(c: &CointegrationResult) -> String {
    let header = [
        "Hypothesized No. of CE(s)",
        "Eigenvalue",
        "Trace Statistic",
        "Prob.",
        "Max-Eigen Statistic",
        "Prob.",
    ];
    let rows: Vec<Vec<String>> = c
        .rows
        .iter()
        .map(|r| {
            let label = match r.rank_hypothesis {
                0 => "None".to_string(),
                k => format!("At most {k}"),
            };
            vec![
                label,
                format!("{:.4}", r.eigenvalue),
                format!("{:.4}", r.trace_stat),
                format!("{:.4}", r.trace_p),
                format!("{:.4}", r.max_stat),
                format!("{:.4}", r.max_p),
            ]
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

    fn system(n: usize, seed: u64, cointegrated: bool) -> DenseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = 0.0;
        let mut b = 0.0;
        let mut data = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let e1: f64 = StandardNormal.sample(&mut rng);
            let e2: f64 = StandardNormal.sample(&mut rng);
            a += e1;
            if cointegrated {
                b = a + e2;
            } else {
                b += e2;
            }
            data.push(a);
            data.push(b);
        }
        DenseMatrix::new(n, 2, data).unwrap()
    }

    #[test]
    fn published_p_values_select_rank_two() {
        assert_eq!(select_rank(&[0.0001, 0.0000, 0.8929], 0.05), 2);
        assert_eq!(select_rank(&[0.2, 0.5], 0.05), 0);
        assert_eq!(select_rank(&[0.001, 0.01], 0.05), 2);
    }

    #[test]
    fn detects_cointegration_and_orders_statistics() {
        for det in [JohansenDeterministic::None, JohansenDeterministic::Constant] {
            let c = johansen_test_matrix(&system(1000, 1, true), 1, det).unwrap();
            assert_eq!(c.selected_rank, 1, "{det}");
            assert!(c.rows[0].trace_stat >= c.rows[1].trace_stat);
            assert!(c.rows.iter().all(|r| (0.0..1.0).contains(&r.eigenvalue)));
            let c = johansen_test_matrix(&system(1000, 2, false), 2, det).unwrap();
            assert_eq!(c.selected_rank, 0, "{det}");
            assert_eq!(c.nobs, 998);
        }
    }

    #[test]
    fn trace_equals_sum_of_max_statistics() {
        let c = johansen_test_matrix(&system(500, 3, true), 2, JohansenDeterministic::Constant).unwrap();
        let total: f64 = c.rows.iter().map(|r| r.max_stat).sum();
        assert!((total - c.rows[0].trace_stat).abs() < 1e-9);
    }

    #[test]
    fn duplicated_column_is_singular() {
        let s = system(200, 4, false);
        let a = s.column(0);
        let dup = DenseMatrix::from_columns(&[&a, &a]).unwrap();
        assert!(matches!(
            johansen_test_matrix(&dup, 1, JohansenDeterministic::Constant),
            Err(Error::SingularPanel(_))
        ));
        let short = DenseMatrix::from_columns(&[&a[..30], &s.column(1)[..30]]).unwrap();
        assert!(matches!(
            johansen_test_matrix(&short, 1, JohansenDeterministic::Constant),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn p_values_are_monotone_and_match_tabulated_quantiles() {
        for det in [JohansenDeterministic::None, JohansenDeterministic::Constant] {
            for kind in [RankStatistic::Trace, RankStatistic::MaxEigen] {
                for dim in 1..=MAX_DIM {
                    let mut prev = 1.0;
                    for i in 0..600 {
                        let p = johansen_p_value(i as f64 * 0.5, dim, det, kind);
                        assert!((0.0..=1.0).contains(&p));
                        assert!(p <= prev + 1e-12);
                        prev = p;
                    }
                }
            }
        }
        let i5 = TAIL_PROBS.iter().position(|p| *p == 0.05).unwrap();
        let q = TRACE_CONSTANT[0][i5];
        let p = johansen_p_value(q, 1, JohansenDeterministic::Constant, RankStatistic::Trace);
        assert!((p - 0.05).abs() < 1e-12);
    }

    #[test]
    fn tabulated_five_percent_points_are_near_published_ones() {
        let i5 = TAIL_PROBS.iter().position(|p| *p == 0.05).unwrap();
        // restricted constant and no deterministic terms, dims 1..5
        let trace_c = [9.16, 20.26, 35.19, 54.08, 76.97];
        let max_c = [9.16, 15.89, 22.30, 28.59, 34.81];
        let trace_n = [4.13, 12.32, 24.28, 40.17, 60.06];
        let max_n = [4.13, 11.22, 17.80, 24.16, 30.44];
        for d in 0..5 {
            let close = |a: f64, b: f64| (a - b).abs() / b < 0.05;
            assert!(close(TRACE_CONSTANT[d][i5], trace_c[d]), "trace c {d}");
            assert!(close(MAX_CONSTANT[d][i5], max_c[d]), "max c {d}");
            assert!(close(TRACE_NONE[d][i5], trace_n[d]), "trace n {d}");
            assert!(close(MAX_NONE[d][i5], max_n[d]), "max n {d}");
        }
    }
}
