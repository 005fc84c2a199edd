//! Pearson correlation matrix and the pairwise multicollinearity screen.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::AlignedPanel;
use crate::numerics::{pearson, DenseMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub roles: Vec<String>,
    pub matrix: DenseMatrix,
}

impl CorrelationMatrix {
    /// Wraps an existing matrix after checking it is a valid correlation
    /// matrix (square, symmetric, unit diagonal, entries in [-1, 1]).
    pub fn new(roles: Vec<String>, matrix: DenseMatrix) -> Result<Self> {
        let n = matrix.rows();
        if !matrix.is_square() || roles.len() != n {
            return Err(Error::Dimension(format!(
                "{} labels for a {}x{} correlation matrix",
                roles.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        for i in 0..n {
            if (matrix[(i, i)] - 1.0).abs() > 1e-12 {
                return Err(Error::Parameter(format!("diagonal entry {i} is not 1")));
            }
            for j in 0..n {
                let v = matrix[(i, j)];
                if v.abs() > 1.0 + 1e-12 || (v - matrix[(j, i)]).abs() > 1e-12 {
                    return Err(Error::Parameter(format!(
                        "entry ({i}, {j}) = {v} is not a valid correlation"
                    )));
                }
            }
        }
        Ok(Self { roles, matrix })
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.roles.iter().position(|r| r == a)?;
        let j = self.roles.iter().position(|r| r == b)?;
        Some(self.matrix[(i, j)])
    }
}

pub fn correlation_matrix(p: &AlignedPanel, roles: &[&str]) -> Result<CorrelationMatrix> {
    let cols = roles.iter().map(|r| p.column(r)).collect::<Result<Vec<_>>>()?;
    for (role, c) in roles.iter().zip(&cols) {
        if c.iter().all(|v| *v == c[0]) {
            return Err(Error::Degenerate(format!("column {role} is constant")));
        }
    }
    let n = roles.len();
    let mut m = DenseMatrix::identity(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let r = pearson(cols[i], cols[j]);
            m[(i, j)] = r;
            m[(j, i)] = r;
        }
    }
    Ok(CorrelationMatrix {
        roles: roles.iter().map(|r| r.to_string()).collect(),
        matrix: m,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedPair {
    pub first: String,
    pub second: String,
    pub correlation: f64,
}

/// All off-diagonal pairs with `|r| >= threshold`, in row-major order.
/// A threshold of exactly 1 only flags perfectly collinear pairs.
pub fn multicollinearity_screen(corr: &CorrelationMatrix, threshold: f64) -> Result<Vec<FlaggedPair>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::Parameter(format!(
            "multicollinearity threshold {threshold} must lie in (0, 1]"
        )));
    }
    let n = corr.roles.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let r = corr.matrix[(i, j)];
            if r.abs() >= threshold {
                out.push(FlaggedPair {
                    first: corr.roles[i].clone(),
                    second: corr.roles[j].clone(),
                    correlation: r,
                });
            }
        }
    }
    Ok(out)
}

/// Lower-triangular layout of the correlation table.
pub fn correlation_table(corr: &CorrelationMatrix) -> String {
    let mut header = vec![String::new()];
    header.extend(corr.roles.iter().cloned());
    let rows: Vec<Vec<String>> = corr
        .roles
        .iter()
        .enumerate()
        .map(|(i, role)| {
            let mut row = vec![role.clone()];
            for j in 0..corr.roles.len() {
                row.push(if j <= i {
                    format!("{:.3}", corr.matrix[(i, j)])
                } else {
                    String::new()
                });
            }
            row
        })
        .collect();
    crate::format::text_table(&header, &rows)
}
