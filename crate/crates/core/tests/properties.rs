use chrono::NaiveDate;
use indexmap::IndexMap;
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor, Normal, StudentsT};

use econkit::factor::{pca, standardize};
use econkit::ingest::AlignedPanel;
use econkit::numerics::{dist_cdf, dist_sf, ols_solve, sym_eigen, DenseMatrix, Distribution};
use econkit::series::{cumulative_sum, describe_values, first_difference, log_returns, weekdays};
use econkit::stattests::{
    adf_test_values, correlation_matrix, granger_test_values, white_test, DeterministicSpec, LagSelection,
};
use econkit::theory::{
    capm_expected_return, perpetuity_value, present_value, CapmInputs, CashflowSchedule,
};
use econkit::volatility::{conditional_variances, monthly_volatility, GarchParams};
use econkit::TradingSeries;

fn start() -> NaiveDate {
    NaiveDate::from_ymd_opt(2015, 1, 5).unwrap()
}

fn series(values: Vec<f64>) -> TradingSeries {
    TradingSeries::new(weekdays(start(), values.len()), values).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn walk(steps: &[f64]) -> Vec<f64> {
    cumulative_sum(0.0, steps)
}

fn panel(cols: &[(&str, Vec<f64>)]) -> AlignedPanel {
    let n = cols[0].1.len();
    let map: IndexMap<String, Vec<f64>> = cols.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    AlignedPanel::new(weekdays(start(), n), map).unwrap()
}

fn design(cols: &[Vec<f64>]) -> DenseMatrix {
    let refs: Vec<&[f64]> = cols.iter().map(|c| c.as_slice()).collect();
    DenseMatrix::from_columns(&refs).unwrap()
}

fn noise(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cdf_matches_reference_library(x in 0.01..30.0f64, k in 1.0..40.0f64, m in 1.0..60.0f64) {
        let chi = ChiSquared::new(k).unwrap().cdf(x);
        prop_assert!(close(dist_cdf(Distribution::ChiSquare(k), x).unwrap(), chi, 1e-8));
        let f = FisherSnedecor::new(k, m).unwrap().cdf(x);
        prop_assert!(close(dist_cdf(Distribution::FisherF(k, m), x).unwrap(), f, 1e-8));
        let t = StudentsT::new(0.0, 1.0, k).unwrap().cdf(x - 5.0);
        prop_assert!(close(dist_cdf(Distribution::StudentT(k), x - 5.0).unwrap(), t, 1e-8));
        let z = Normal::new(0.0, 1.0).unwrap().cdf(x / 4.0 - 2.0);
        prop_assert!(close(dist_cdf(Distribution::StandardNormal, x / 4.0 - 2.0).unwrap(), z, 1e-8));
        let sum = dist_cdf(Distribution::FisherF(k, m), x).unwrap() + dist_sf(Distribution::FisherF(k, m), x).unwrap();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_preserves_trace_and_orthogonality(a in prop::collection::vec(-5.0..5.0f64, 25)) {
        let raw = DenseMatrix::new(5, 5, a).unwrap();
        let sym = DenseMatrix::new(5, 5, raw.as_slice().iter().zip(raw.transpose().as_slice()).map(|(x, y)| x + y).collect()).unwrap();
        let e = sym_eigen(&sym).unwrap();
        let total: f64 = e.eigenvalues.iter().sum();
        prop_assert!(close(total, sym.trace(), 1e-9));
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let vtv = e.eigenvectors.transpose().matmul(&e.eigenvectors).unwrap();
        let id = DenseMatrix::identity(5);
        for (x, y) in vtv.as_slice().iter().zip(id.as_slice()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn ols_residuals_are_orthogonal_to_the_design(
        x1 in noise(30..60), seed in noise(60..61), extra in noise(60..61),
    ) {
        let n = x1.len();
        let x2: Vec<f64> = seed[..n].iter().map(|v| v * v).collect();
        let y: Vec<f64> = (0..n).map(|i| 1.0 + 2.0 * x1[i] - x2[i] + 0.3 * extra[i]).collect();
        let x = design(&[x1.clone(), x2.clone()]);
        let fit = ols_solve(&x, &y, true).unwrap();
        let xi = x.with_intercept();
        let xte = xi.transpose().matvec(&fit.residuals).unwrap();
        prop_assert!(xte.iter().all(|v| v.abs() < 1e-9), "{xte:?}");
        for i in 0..n {
            prop_assert!((fit.fitted[i] + fit.residuals[i] - y[i]).abs() < 1e-12);
        }
        prop_assert!(close(fit.r_squared, 1.0 - fit.rss / fit.tss, 1e-12));

        let wider = design(&[x1, x2, extra[..n].iter().map(|v| v.sin()).collect()]);
        let more = ols_solve(&wider, &y, true).unwrap();
        prop_assert!(more.rss <= fit.rss * (1.0 + 1e-12));
    }

    #[test]
    fn log_returns_ignore_price_scale(steps in noise(5..40), c in 0.01..100.0f64) {
        let prices: Vec<f64> = walk(&steps).iter().map(|v| 100.0 * (0.05 * v).exp()).collect();
        let a = log_returns(&series(prices.clone())).unwrap();
        let b = log_returns(&series(prices.iter().map(|p| p * c).collect())).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn moments_ignore_order_and_affine_maps(
        v in noise(5..50), a in 0.1..10.0f64, b in -5.0..5.0f64,
    ) {
        let d = describe_values(&v);
        prop_assume!(d.is_ok());
        let d = d.unwrap();
        let mut rev = v.clone();
        rev.reverse();
        rev.rotate_left(v.len() / 3);
        let p = describe_values(&rev).unwrap();
        prop_assert!(close(d.mean, p.mean, 1e-12) && close(d.sd, p.sd, 1e-12));
        prop_assert!(close(d.skewness, p.skewness, 1e-9) && close(d.kurtosis_excess, p.kurtosis_excess, 1e-9));

        let t = describe_values(&v.iter().map(|x| a * x + b).collect::<Vec<_>>()).unwrap();
        prop_assert!(close(t.mean, a * d.mean + b, 1e-10));
        prop_assert!(close(t.sd, a * d.sd, 1e-10));
        prop_assert!(close(t.skewness, d.skewness, 1e-7));
        prop_assert!(close(t.kurtosis_excess, d.kurtosis_excess, 1e-7));
    }

    #[test]
    fn differencing_then_summing_reconstructs(v in noise(2..60)) {
        let s = series(v.clone());
        let d = first_difference(&s).unwrap();
        let back = cumulative_sum(v[0], d.values());
        for (x, y) in back.iter().zip(&v) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn garch_recursion_matches_definition(
        r in prop::collection::vec(-0.05..0.05f64, 2..80),
        alpha in 0.01..0.3f64, beta in 0.3..0.68f64,
    ) {
        let p = GarchParams::new(0.001, 1e-5, alpha, beta).unwrap();
        let s0 = 2e-4;
        let cv = conditional_variances(&p, &r, s0);
        prop_assert_eq!(cv[0], s0);
        for t in 1..r.len() {
            let e = r[t - 1] - p.mu;
            let want = p.omega + p.alpha * e * e + p.beta * cv[t - 1];
            prop_assert!(close(cv[t], want, 1e-14));
        }
    }

    #[test]
    fn monthly_volatility_ignores_order_within_month(v in prop::collection::vec(-0.03..0.03f64, 66)) {
        let dates = weekdays(start(), 66);
        let a = monthly_volatility(&TradingSeries::new(dates.clone(), v.clone()).unwrap()).unwrap();
        let mut shuffled = v.clone();
        let mut i = 0;
        while i < dates.len() {
            let j = (i..dates.len()).find(|&k| dates[k].format("%Y%m").to_string() != dates[i].format("%Y%m").to_string()).unwrap_or(dates.len());
            shuffled[i..j].reverse();
            i = j;
        }
        let b = monthly_volatility(&TradingSeries::new(dates, shuffled).unwrap()).unwrap();
        let (sa, sb) = (a.series.unwrap(), b.series.unwrap());
        prop_assert_eq!(sa.dates(), sb.dates());
        for (x, y) in sa.values().iter().zip(sb.values()) {
            prop_assert!(close(*x, *y, 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn adf_statistic_ignores_scale(steps in noise(80..150), c in 0.01..100.0f64) {
        let y = walk(&steps);
        let scaled: Vec<f64> = y.iter().map(|v| v * c).collect();
        for spec in [DeterministicSpec::Constant, DeterministicSpec::ConstantTrend] {
            let a = adf_test_values(&y, spec, LagSelection::Fixed(2)).unwrap();
            let b = adf_test_values(&scaled, spec, LagSelection::Fixed(2)).unwrap();
            prop_assert!(close(a.statistic, b.statistic, 1e-8));
            prop_assert!((0.0..=1.0).contains(&a.p_value));
        }
    }

    #[test]
    fn granger_statistic_is_a_valid_f(cause in noise(60..61), effect in noise(60..61), lags in 1usize..4) {
        let g = granger_test_values(&cause, &effect, lags, "X", "Y").unwrap();
        prop_assert!(g.f_statistic >= 0.0);
        prop_assert!((0.0..=1.0).contains(&g.p_value));
        prop_assert_eq!(g.df_num, lags);
    }

    #[test]
    fn white_test_ignores_residual_scale(
        x1 in noise(50..51), x2 in noise(50..51), e in noise(50..51), c in 0.01..100.0f64,
    ) {
        let x = design(&[x1, x2]);
        let scaled: Vec<f64> = e.iter().map(|v| v * c).collect();
        let a = white_test(&e, &x, true).unwrap();
        let b = white_test(&scaled, &x, true).unwrap();
        prop_assert!(close(a.n_r_squared, b.n_r_squared, 1e-8));
        prop_assert!(close(a.f_statistic, b.f_statistic, 1e-8));
        prop_assert_eq!(a.df, 5);
    }

    #[test]
    fn correlation_matrix_is_positive_semidefinite(a in noise(20..21), b in noise(20..21), c in noise(20..21)) {
        let p = panel(&[("A", a.clone()), ("B", b), ("C", a.iter().zip(&c).map(|(x, y)| x + 0.1 * y).collect())]);
        let corr = correlation_matrix(&p, &["A", "B", "C"]).unwrap();
        let e = sym_eigen(&corr.matrix).unwrap();
        prop_assert!(e.eigenvalues.iter().all(|l| *l > -1e-10), "{:?}", e.eigenvalues);
        prop_assert!(close(corr.matrix.trace(), 3.0, 1e-12));
    }

    #[test]
    fn pca_loadings_are_orthonormal_and_repeatable(a in noise(30..31), b in noise(30..31), c in noise(30..31)) {
        let p = panel(&[("A", a), ("B", b), ("C", c)]);
        let z = standardize(&p, &["A", "B", "C"]).unwrap();
        let r = pca(&z).unwrap();
        let ltl = r.loadings.transpose().matmul(&r.loadings).unwrap();
        let id = DenseMatrix::identity(3);
        for (x, y) in ltl.as_slice().iter().zip(id.as_slice()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
        prop_assert!(close(r.eigenvalues.iter().sum::<f64>(), 3.0, 1e-9));
        prop_assert_eq!(pca(&z).unwrap(), r);
    }

    #[test]
    fn present_value_is_linear_in_cash_flows(
        d in prop::collection::vec(0.0..10.0f64, 1..10), tv in 0.0..100.0f64,
        k in -3.0..3.0f64, r in 0.0..0.3f64,
    ) {
        let base = CashflowSchedule { dividends: d.clone(), terminal_value: tv, discount_rate: r };
        let scaled = CashflowSchedule { dividends: d.iter().map(|v| k * v).collect(), terminal_value: k * tv, discount_rate: r };
        let (a, b) = (present_value(&base).unwrap(), present_value(&scaled).unwrap());
        prop_assert!(close(b, k * a, 1e-12));
    }

    #[test]
    fn capm_is_affine_in_beta(beta in -3.0..3.0f64, rf in -0.02..0.1f64, rm in -0.1..0.2f64) {
        let c = CapmInputs { sigma_i: 0.2, sigma_m: 0.1, rho_im: 0.5, risk_free: rf, expected_market: rm };
        let at = |b: f64| capm_expected_return(b, &c).unwrap();
        prop_assert!(close(at(beta) - at(0.0), beta * (at(1.0) - at(0.0)), 1e-12));
        prop_assert!(close(at(0.0), rf, 1e-15));
        prop_assert!(close(at(1.0), rm, 1e-15));
    }

    #[test]
    fn perpetuity_times_rate_is_the_dividend(d in 0.01..100.0f64, r in 0.001..1.0f64) {
        prop_assert!(close(perpetuity_value(d, r).unwrap() * r, d, 1e-14));
    }
}
