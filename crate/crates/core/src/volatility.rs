//! Realized monthly volatility and GARCH(1,1) conditional volatility.
//!
//! The GARCH model is
//!
//! ```text
//! r_t  = mu + e_t,            e_t = sigma_t * z_t,  z_t ~ N(0, 1)
//! s2_t = omega + alpha * e_{t-1}^2 + beta * s2_{t-1}
//! ```
//!
//! with the first conditional variance set to the sample variance of the
//! returns. Parameters are estimated by Gaussian maximum likelihood using a
//! Nelder-Mead search over an unconstrained reparameterization:
//! `omega = s2 * exp(x1)`, `alpha + beta = logistic(x2)`,
//! `alpha / (alpha + beta) = logistic(x3)`.

use chrono::{Datelike, NaiveDate};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution as _, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{mean, minimize, sample_variance, MinimizeOptions};
use crate::series::TradingSeries;

/// Hard floor on the sample size accepted by [`garch_fit`].
pub const GARCH_MIN_OBS: usize = 30;
/// Below this many observations the fit succeeds but carries a warning.
pub const GARCH_RECOMMENDED_OBS: usize = 250;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GarchParams {
    pub mu: f64,
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GarchParams {
    pub fn new(mu: f64, omega: f64, alpha: f64, beta: f64) -> Result<Self> {
        let p = Self {
            mu,
            omega,
            alpha,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.mu.is_finite()
            && self.omega > 0.0
            && self.omega.is_finite()
            && self.alpha >= 0.0
            && self.beta >= 0.0
            && self.alpha + self.beta < 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "GARCH(1,1) needs omega > 0, alpha >= 0, beta >= 0, alpha + beta < 1: {self:?}"
            )))
        }
    }

    pub fn persistence(&self) -> f64 {
        self.alpha + self.beta
    }

    pub fn unconditional_variance(&self) -> f64 {
        self.omega / (1.0 - self.persistence())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GarchFit {
    pub params: GarchParams,
    pub log_likelihood: f64,
    /// Conditional variance on the dates of the fitted returns.
    pub conditional_variance: TradingSeries,
    pub converged: bool,
    pub iterations: usize,
    pub warnings: Vec<String>,
}

/// Variance recursion over `returns`, started at `initial_variance`.
pub fn conditional_variances(params: &GarchParams, returns: &[f64], initial_variance: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(returns.len());
    let mut s2 = initial_variance;
    for t in 0..returns.len() {
        if t > 0 {
            let e = returns[t - 1] - params.mu;
            s2 = params.omega + params.alpha * e * e + params.beta * s2;
        }
        out.push(s2);
    }
    out
}

/// Gaussian log-likelihood of `returns` under `params`.
pub fn garch_log_likelihood(params: &GarchParams, returns: &[f64], initial_variance: f64) -> f64 {
    let ln2pi = (2.0 * std::f64::consts::PI).ln();
    let mut ll = 0.0;
    let mut s2 = initial_variance;
    for t in 0..returns.len() {
        if t > 0 {
            let e = returns[t - 1] - params.mu;
            s2 = params.omega + params.alpha * e * e + params.beta * s2;
        }
        let e = returns[t] - params.mu;
        ll -= 0.5 * (ln2pi + s2.ln() + e * e / s2);
    }
    ll
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GarchOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Extra simplex restarts from the incumbent optimum.
    pub restarts: usize,
}

impl Default for GarchOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-7,
            max_iterations: 4_000,
            restarts: 2,
        }
    }
}

struct Reparam {
    mean: f64,
    sd: f64,
    var: f64,
}

impl Reparam {
    fn to_params(&self, x: &[f64]) -> Option<GarchParams> {
        let logistic = |v: f64| 1.0 / (1.0 + (-v).exp());
        let rho = logistic(x[2]);
        let share = logistic(x[3]);
        let p = GarchParams {
            mu: self.mean + self.sd * x[0],
            omega: self.var * x[1].exp(),
            alpha: rho * share,
            beta: rho * (1.0 - share),
        };
        p.validate().ok().map(|_| p)
    }

    fn to_unconstrained(&self, p: &GarchParams) -> Vec<f64> {
        let logit = |v: f64| (v / (1.0 - v)).ln();
        let rho = p.persistence();
        vec![
            (p.mu - self.mean) / self.sd,
            (p.omega / self.var).ln(),
            logit(rho),
            logit(p.alpha / rho),
        ]
    }
}

pub fn garch_fit(returns: &TradingSeries) -> Result<GarchFit> {
    garch_fit_with(returns, &GarchOptions::default())
}

pub fn garch_fit_with(returns: &TradingSeries, options: &GarchOptions) -> Result<GarchFit> {
    let r = returns.values();
    if r.len() < GARCH_MIN_OBS {
        return Err(Error::insufficient("GARCH(1,1) fit", GARCH_MIN_OBS, r.len()));
    }
    let var = sample_variance(r);
    if r.iter().all(|v| *v == r[0]) || !(var > 0.0) {
        return Err(Error::Degenerate("returns are constant".into()));
    }
    let mut warnings = Vec::new();
    if r.len() < GARCH_RECOMMENDED_OBS {
        warnings.push(format!(
            "only {} observations; at least {GARCH_RECOMMENDED_OBS} are recommended",
            r.len()
        ));
    }
    let m = mean(r);
    let reparam = Reparam {
        mean: m,
        sd: var.sqrt(),
        var,
    };
    let (a0, b0) = (0.05, 0.90);
    let init = GarchParams::new(m, (1.0 - a0 - b0) * var, a0, b0)?;
    let objective = |x: &[f64]| match reparam.to_params(x) {
        Some(p) => -garch_log_likelihood(&p, r, var),
        None => f64::INFINITY,
    };

    let mut x = reparam.to_unconstrained(&init);
    let mut best = objective(&x);
    let nm = MinimizeOptions {
        tolerance: options.tolerance,
        max_iterations: options.max_iterations,
        initial_step: 0.5,
    };
    let mut converged = false;
    let mut iterations = 0;
    for round in 0..=options.restarts {
        let step = MinimizeOptions {
            initial_step: nm.initial_step / (1 << round) as f64,
            ..nm
        };
        let (point, value, ok, iters) = match minimize(objective, &x, &step) {
            Ok(min) => (min.argmin, min.value, true, min.iterations),
            Err(Error::NonConvergence {
                best,
                value,
                iterations,
            }) => (best, value, false, iterations),
            Err(e) => return Err(e),
        };
        iterations += iters;
        converged = ok;
        let improvement = best - value;
        if value <= best {
            x = point;
            best = value;
        }
        if ok && improvement < 1e-9 {
            break;
        }
    }
    if !converged {
        warnings.push(format!(
            "likelihood maximization did not converge after {iterations} iterations"
        ));
    }
    let params = reparam
        .to_params(&x)
        .ok_or_else(|| Error::Numerical("optimizer left the feasible region".into()))?;
    let cv = conditional_variances(&params, r, var);
    Ok(GarchFit {
        params,
        log_likelihood: -best,
        conditional_variance: TradingSeries::new(returns.dates().to_vec(), cv)?,
        converged,
        iterations,
        warnings,
    })
}

/// Conditional volatility `sqrt(s2_t)`; the VOL variable.
pub fn garch_volatility(fit: &GarchFit) -> Result<TradingSeries> {
    if fit.conditional_variance.values().iter().any(|v| !(*v > 0.0)) {
        return Err(Error::Numerical("conditional variance is not positive".into()));
    }
    fit.conditional_variance.map(f64::sqrt)
}

/// Simulates `n` GARCH(1,1) returns on a weekday calendar starting
/// 2000-01-03. Innovations are standard normal draws (ziggurat) from a
/// ChaCha20 stream seeded with `seed`; the variance starts at its
/// unconditional level.
pub fn garch_simulate(params: &GarchParams, n: usize, seed: u64) -> Result<TradingSeries> {
    params.validate()?;
    if n == 0 {
        return Err(Error::Parameter("simulation length must be at least 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let values = simulate_path(params, n, &mut rng);
    let start = NaiveDate::from_ymd_opt(2000, 1, 3).expect("valid date");
    TradingSeries::new(crate::series::weekdays(start, n), values)
}

pub(crate) fn simulate_path<R: rand::Rng>(params: &GarchParams, n: usize, rng: &mut R) -> Vec<f64> {
    let mut s2 = params.unconditional_variance();
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        if t > 0 {
            let e: f64 = out[t - 1] - params.mu;
            s2 = params.omega + params.alpha * e * e + params.beta * s2;
        }
        let z: f64 = StandardNormal.sample(rng);
        out.push(params.mu + s2.sqrt() * z);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonthlyVolatility {
    /// One value per month, dated at the last calendar day of the month.
    pub series: Option<TradingSeries>,
    /// Months left out for having fewer than two returns.
    pub skipped: Vec<SkippedMonth>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedMonth {
    pub year: i32,
    pub month: u32,
    pub observations: usize,
}

/// Within-month sample standard deviation (`n - 1` divisor) of daily
/// returns.
pub fn monthly_volatility(daily_returns: &TradingSeries) -> Result<MonthlyVolatility> {
    let mut dates = Vec::new();
    let mut values = Vec::new();
    let mut skipped = Vec::new();
    let d = daily_returns.dates();
    let v = daily_returns.values();
    let mut start = 0;
    while start < d.len() {
        let key = (d[start].year(), d[start].month());
        let end = start + d[start..].partition_point(|x| (x.year(), x.month()) == key);
        let slice = &v[start..end];
        if slice.len() < 2 {
            skipped.push(SkippedMonth {
                year: key.0,
                month: key.1,
                observations: slice.len(),
            });
        } else {
            dates.push(month_end(key.0, key.1));
            values.push(sample_variance(slice).sqrt());
        }
        start = end;
    }
    let series = if dates.is_empty() {
        None
    } else {
        Some(TradingSeries::new(dates, values)?)
    };
    Ok(MonthlyVolatility { series, skipped })
}

fn month_end(year: i32, month: u32) -> NaiveDate {
    let (y, m) = if month == 12 { (year + 1, 1) } else { (year, month + 1) };
    NaiveDate::from_ymd_opt(y, m, 1).expect("valid date").pred_opt().expect("valid date")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::describe_values;

    fn on_days(values: &[f64], start: NaiveDate) -> TradingSeries {
        TradingSeries::new(crate::series::weekdays(start, values.len()), values.to_vec()).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(GarchParams::new(0.0, 0.0, 0.1, 0.8).is_err());
        assert!(GarchParams::new(0.0, 1e-6, -0.1, 0.8).is_err());
        assert!(GarchParams::new(0.0, 1e-6, 0.5, 0.5).is_err());
        assert!(GarchParams::new(0.0, 1e-6, 0.0, 0.0).is_ok());
    }

    #[test]
    fn monthly_hand_value_and_flat_month() {
        let start = NaiveDate::from_ymd_opt(2024, 1, 2).unwrap();
        let mv = monthly_volatility(&on_days(&[0.01, -0.01, 0.02], start)).unwrap();
        let s = mv.series.unwrap();
        assert!((s.values()[0] - 0.0152753).abs() < 1e-7);
        assert_eq!(s.dates()[0], NaiveDate::from_ymd_opt(2024, 1, 31).unwrap());

        let mv = monthly_volatility(&on_days(&[0.003; 5], start)).unwrap();
        assert_eq!(mv.series.unwrap().values()[0], 0.0);
    }

    #[test]
    fn monthly_matches_describe_and_lists_short_months() {
        let dates = vec![
            NaiveDate::from_ymd_opt(2024, 1, 30).unwrap(),
            NaiveDate::from_ymd_opt(2024, 2, 1).unwrap(),
            NaiveDate::from_ymd_opt(2024, 2, 2).unwrap(),
            NaiveDate::from_ymd_opt(2024, 2, 5).unwrap(),
            NaiveDate::from_ymd_opt(2024, 2, 6).unwrap(),
            NaiveDate::from_ymd_opt(2024, 2, 7).unwrap(),
        ];
        let vals = vec![0.5, 0.013, -0.004, 0.021, -0.017, 0.002];
        let s = TradingSeries::new(dates, vals.clone()).unwrap();
        let mv = monthly_volatility(&s).unwrap();
        assert_eq!(mv.skipped, vec![SkippedMonth { year: 2024, month: 1, observations: 1 }]);
        let series = mv.series.unwrap();
        assert_eq!(series.dates()[0], NaiveDate::from_ymd_opt(2024, 2, 29).unwrap());
        let sd = describe_values(&vals[1..]).unwrap().sd;
        assert!((series.values()[0] - sd).abs() < 1e-12);
    }

    #[test]
    fn recursion_and_volatility_identities() {
        let p = GarchParams::new(0.0002, 2e-6, 0.08, 0.90).unwrap();
        let r = garch_simulate(&p, 800, 5).unwrap();
        let fit = garch_fit(&r).unwrap();
        assert!(fit.converged);
        // independent re-run of the recursion
        let v = r.values();
        let s0 = sample_variance(v);
        let fp = fit.params;
        let mut s2 = s0;
        for t in 0..v.len() {
            if t > 0 {
                s2 = fp.omega + fp.alpha * (v[t - 1] - fp.mu).powi(2) + fp.beta * s2;
            }
            assert!((s2 - fit.conditional_variance.values()[t]).abs() <= 1e-12 * s2.max(1e-300));
        }
        let vol = garch_volatility(&fit).unwrap();
        assert!(vol.values().iter().all(|x| *x > 0.0));
        for (s, c) in vol.values().iter().zip(fit.conditional_variance.values()) {
            assert!((s * s - c).abs() <= 1e-15 * c.max(1.0));
        }
    }

    #[test]
    fn likelihood_improves_on_initial_guess() {
        let p = GarchParams::new(0.0, 1e-5, 0.15, 0.6).unwrap();
        let r = garch_simulate(&p, 1500, 99).unwrap();
        let v = r.values();
        let s0 = sample_variance(v);
        let init = GarchParams::new(mean(v), 0.05 * s0, 0.05, 0.90).unwrap();
        let fit = garch_fit(&r).unwrap();
        assert!(fit.log_likelihood >= garch_log_likelihood(&init, v, s0));
        assert!(fit.params.validate().is_ok());
    }

    #[test]
    fn constant_variance_fit_is_flat() {
        let p = GarchParams::new(0.0, 1e-4, 0.0, 0.0).unwrap();
        let r = garch_simulate(&p, 400, 1).unwrap();
        let mut fit = garch_fit(&r).unwrap();
        fit.params.alpha = 0.0;
        fit.params.beta = 0.0;
        fit.params.omega = sample_variance(r.values());
        let cv = conditional_variances(&fit.params, r.values(), fit.params.omega);
        fit.conditional_variance = TradingSeries::new(r.dates().to_vec(), cv).unwrap();
        let vol = garch_volatility(&fit).unwrap();
        let want = fit.params.omega.sqrt();
        assert!(vol.values().iter().all(|x| (x - want).abs() < 1e-15));
    }

    #[test]
    fn short_and_constant_inputs() {
        let start = NaiveDate::from_ymd_opt(2024, 1, 2).unwrap();
        let r = on_days(&[0.01; 10], start);
        assert!(matches!(garch_fit(&r), Err(Error::InsufficientData { .. })));
        let r = on_days(&[0.01; 40], start);
        assert!(matches!(garch_fit(&r), Err(Error::Degenerate(_))));
        let p = GarchParams::new(0.0, 1e-4, 0.05, 0.9).unwrap();
        let fit = garch_fit(&garch_simulate(&p, 100, 3).unwrap()).unwrap();
        assert!(!fit.warnings.is_empty());
    }

    #[test]
    fn simulation_is_deterministic_and_validated() {
        let p = GarchParams::new(0.0, 1e-5, 0.1, 0.85).unwrap();
        assert_eq!(garch_simulate(&p, 50, 7).unwrap(), garch_simulate(&p, 50, 7).unwrap());
        assert_ne!(garch_simulate(&p, 50, 7).unwrap(), garch_simulate(&p, 50, 8).unwrap());
        let bad = GarchParams {
            mu: 0.0,
            omega: 1e-5,
            alpha: 0.5,
            beta: 0.6,
        };
        assert!(garch_simulate(&bad, 10, 1).is_err());
    }
}
