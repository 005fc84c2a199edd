//! Closed-form valuation and macro sensitivity calculators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominators at or below this magnitude are treated as singular.
pub const SINGULARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CashflowSchedule {
    /// Dividends `D_1..D_n`, one per period.
    pub dividends: Vec<f64>,
    pub terminal_value: f64,
    pub discount_rate: f64,
}

/// `PV = sum_i D_i / (1 + r)^i + TV / (1 + r)^n`.
pub fn present_value(s: &CashflowSchedule) -> Result<f64> {
    let r = s.discount_rate;
    if !(r > -1.0) || !r.is_finite() {
        return Err(Error::Parameter(format!("discount rate {r} must exceed -1")));
    }
    if s.dividends.iter().chain([&s.terminal_value]).any(|v| !v.is_finite()) {
        return Err(Error::Parameter("cash flows must be finite".into()));
    }
    let growth = 1.0 + r;
    let mut factor = 1.0;
    let mut pv = 0.0;
    for d in &s.dividends {
        factor *= growth;
        pv += d / factor;
    }
    Ok(pv + s.terminal_value / factor)
}

/// Constant dividend forever: `D / r`.
pub fn perpetuity_value(dividend: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Divergence(format!(
            "a constant perpetuity diverges at discount rate {r}"
        )));
    }
    if !(dividend > 0.0) {
        return Err(Error::Parameter(format!("dividend {dividend} must be positive")));
    }
    Ok(dividend / r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapmInputs {
    pub sigma_i: f64,
    pub sigma_m: f64,
    pub rho_im: f64,
    pub risk_free: f64,
    pub expected_market: f64,
}

impl CapmInputs {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_i > 0.0 && self.sigma_m > 0.0) {
            return Err(Error::Parameter("return standard deviations must be positive".into()));
        }
        if !(self.rho_im.abs() <= 1.0) {
            return Err(Error::Parameter(format!("correlation {} outside [-1, 1]", self.rho_im)));
        }
        Ok(())
    }
}

/// `beta = rho_im * sigma_i / sigma_m`.
pub fn capm_beta(c: &CapmInputs) -> Result<f64> {
    c.validate()?;
    Ok(c.rho_im * c.sigma_i / c.sigma_m)
}

/// `E(R_i) = R_f + beta (E(R_m) - R_f)`.
pub fn capm_expected_return(beta: f64, c: &CapmInputs) -> Result<f64> {
    c.validate()?;
    Ok(c.risk_free + beta * (c.expected_market - c.risk_free))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IaCurveInputs {
    pub core_inflation: f64,
    pub lambda: f64,
    pub output: f64,
    pub natural_output: f64,
}

/// Inflation-adjustment curve `pi = pi* + lambda (Y - Ybar)`.
pub fn ia_inflation(c: &IaCurveInputs) -> Result<f64> {
    if !(c.lambda > 0.0) {
        return Err(Error::Parameter(format!("lambda {} must be positive", c.lambda)));
    }
    Ok(c.core_inflation + c.lambda * (c.output - c.natural_output))
}

/// Partial derivatives of aggregate demand (`phi_*`) and money demand
/// (`l_*`) in the IS-LM-IA system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsLmIaPartials {
    pub phi_s: f64,
    pub phi_y: f64,
    pub phi_q: f64,
    pub l_s: f64,
    pub l_y: f64,
}

impl IsLmIaPartials {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("phi_s", self.phi_s), ("phi_y", self.phi_y), ("phi_q", self.phi_q), ("l_y", self.l_y)] {
            if !(v > 0.0) {
                return Err(Error::Parameter(format!("{name} = {v} must be positive")));
            }
        }
        if !self.l_s.is_finite() {
            return Err(Error::Parameter("l_s must be finite".into()));
        }
        Ok(())
    }
}

/// Response of the stock price to the real exchange rate:
/// `dS/dq = -L_y phi_q / (L_s (1 - phi_y) + L_y phi_s)`.
pub fn stock_price_fx_sensitivity(p: &IsLmIaPartials) -> Result<f64> {
    p.validate()?;
    let denominator = p.l_s * (1.0 - p.phi_y) + p.l_y * p.phi_s;
    if denominator.abs() <= SINGULARITY_TOL {
        return Err(Error::Singularity { denominator });
    }
    Ok(-p.l_y * p.phi_q / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capm(rho: f64, si: f64, sm: f64) -> CapmInputs {
        CapmInputs {
            sigma_i: si,
            sigma_m: sm,
            rho_im: rho,
            risk_free: 0.03,
            expected_market: 0.08,
        }
    }

    #[test]
    fn present_value_cases() {
        let s = CashflowSchedule {
            dividends: vec![1.0, 2.0, 3.0],
            terminal_value: 10.0,
            discount_rate: 0.0,
        };
        assert_eq!(present_value(&s).unwrap(), 16.0);
        let s = CashflowSchedule {
            dividends: vec![105.0],
            terminal_value: 0.0,
            discount_rate: 0.05,
        };
        assert!((present_value(&s).unwrap() - 100.0).abs() < 1e-12);
        let bad = CashflowSchedule {
            discount_rate: -1.0,
            ..s
        };
        assert!(present_value(&bad).is_err());
    }

    #[test]
    fn perpetuity_cases() {
        assert!((perpetuity_value(5.0, 0.05).unwrap() - 100.0).abs() < 1e-12);
        assert!(matches!(perpetuity_value(5.0, 0.0), Err(Error::Divergence(_))));
        let s = CashflowSchedule {
            dividends: vec![5.0; 2000],
            terminal_value: 0.0,
            discount_rate: 0.05,
        };
        let truncated = present_value(&s).unwrap();
        assert!((truncated - 100.0).abs() / 100.0 < 1e-6);
    }

    #[test]
    fn capm_cases() {
        assert_eq!(capm_beta(&capm(1.0, 0.2, 0.2)).unwrap(), 1.0);
        assert_eq!(capm_beta(&capm(0.0, 0.3, 0.2)).unwrap(), 0.0);
        assert!((capm_beta(&capm(0.5, 0.3, 0.2)).unwrap() - 0.75).abs() < 1e-15);
        let c = capm(0.5, 0.3, 0.2);
        assert_eq!(capm_expected_return(0.0, &c).unwrap(), 0.03);
        assert_eq!(capm_expected_return(1.0, &c).unwrap(), 0.08);
        assert!((capm_expected_return(1.2, &c).unwrap() - 0.09).abs() < 1e-15);
        assert!(capm_beta(&capm(1.5, 0.3, 0.2)).is_err());
    }

    #[test]
    fn ia_curve_cases() {
        let mut c = IaCurveInputs {
            core_inflation: 0.02,
            lambda: 0.5,
            output: 1.0,
            natural_output: 1.0,
        };
        assert_eq!(ia_inflation(&c).unwrap(), 0.02);
        c.output = 1.01;
        assert!((ia_inflation(&c).unwrap() - 0.025).abs() < 1e-12);
    }

    #[test]
    fn fx_sensitivity_cases() {
        let p = IsLmIaPartials {
            phi_s: 0.3,
            phi_y: 0.5,
            phi_q: 0.2,
            l_s: 0.5,
            l_y: 1.0,
        };
        assert!((stock_price_fx_sensitivity(&p).unwrap() + 0.2 / 0.55).abs() < 1e-15);
        // l_s (1 - phi_y) = -l_y phi_s
        let singular = IsLmIaPartials { l_s: -0.6, ..p };
        match stock_price_fx_sensitivity(&singular) {
            Err(Error::Singularity { denominator }) => assert!(denominator.abs() <= SINGULARITY_TOL),
            other => panic!("{other:?}"),
        }
    }
}
