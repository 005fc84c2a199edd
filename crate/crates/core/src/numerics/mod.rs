//! Dense linear algebra, least squares, simplex minimization and
//! distribution functions shared by the statistical modules.

mod dist;
mod eigen;
mod matrix;
mod ols;
mod optimize;

pub use dist::{beta_reg, dist_cdf, dist_sf, gamma_p, gamma_q, ln_gamma, normal_cdf, Distribution};
pub use eigen::{sym_eigen, EigenDecomposition};
pub use matrix::{cholesky, forward_substitute, spd_inverse, DenseMatrix};
pub use ols::{ols_solve, OlsFit};
pub use optimize::{minimize, MinimizeOptions, Minimum};

pub(crate) use ols::{ols_design, residualize};

/// Arithmetic mean; `NaN` for an empty slice.
pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample variance with the `n - 1` divisor (two-pass).
pub fn sample_variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() as f64 - 1.0)
}

pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let ma = mean(a);
    let mb = mean(b);
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        let dx = x - ma;
        let dy = y - mb;
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    (sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0)
}
