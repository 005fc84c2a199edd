//! Nelder-Mead simplex minimization.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    /// Stop once every vertex lies within this distance of the best one.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Edge length of the initial simplex along each axis.
    pub initial_step: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 10_000,
            initial_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub argmin: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `objective` from `start`. Non-finite objective values are
/// treated as `+inf`, so penalized regions are simply never accepted.
///
/// On exhausting `max_iterations` the best point so far is returned inside
/// [`Error::NonConvergence`].
pub fn minimize<F>(mut objective: F, start: &[f64], options: &MinimizeOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    if start.is_empty() {
        return Err(Error::Parameter("cannot minimize over zero dimensions".into()));
    }
    if !(options.tolerance > 0.0) || !(options.initial_step > 0.0) {
        return Err(Error::Parameter(
            "tolerance and initial step must be positive".into(),
        ));
    }
    let f0 = objective(start);
    if !f0.is_finite() {
        return Err(Error::InvalidStart);
    }
    let n = start.len();
    let mut evaluations = 1;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        let v = objective(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f0));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += options.initial_step;
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
    }

    let mut iterations = 0;
    let converged = loop {
        // stable: ties keep their current order, so the start vertex stays first
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| distance(x, &simplex[0].0))
            .fold(0.0, f64::max);
        if diameter < options.tolerance {
            break true;
        }
        if iterations >= options.max_iterations {
            break false;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let fr = eval(&xr, &mut evaluations);
        if fr < simplex[0].1 {
            let xe = along(REFLECT * EXPAND);
            let fe = eval(&xe, &mut evaluations);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = along(REFLECT * CONTRACT);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = along(-CONTRACT);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, v)| b + SHRINK * (v - b))
                .collect();
            let v = eval(&x, &mut evaluations);
            *vertex = (x, v);
        }
    };

    let (argmin, value) = if simplex[0].1 < f0 {
        simplex.swap_remove(0)
    } else {
        (start.to_vec(), f0)
    };
    if converged {
        Ok(Minimum {
            argmin,
            value,
            iterations,
            evaluations,
        })
    } else {
        Err(Error::NonConvergence {
            best: argmin,
            value,
            iterations,
        })
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_bowl() {
        let m = minimize(
            |v| v.iter().map(|x| x * x).sum(),
            &[1.0, 1.0],
            &MinimizeOptions::default(),
        )
        .unwrap();
        assert!(m.argmin.iter().all(|x| x.abs() < 1e-6));
    }

    #[test]
    fn rosenbrock() {
        let f = |v: &[f64]| (1.0 - v[0]).powi(2) + 100.0 * (v[1] - v[0] * v[0]).powi(2);
        let opts = MinimizeOptions {
            tolerance: 1e-10,
            ..Default::default()
        };
        let m = minimize(f, &[-1.2, 1.0], &opts).unwrap();
        assert!(m.value < 1e-6, "value {}", m.value);
        assert!((m.argmin[0] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn flat_objective_returns_start() {
        let m = minimize(|_| 3.5, &[0.2, -4.0, 1.0], &MinimizeOptions::default()).unwrap();
        assert_eq!(m.argmin, vec![0.2, -4.0, 1.0]);
        assert_eq!(m.value, 3.5);
    }

    #[test]
    fn invalid_start() {
        let r = minimize(|_| f64::NAN, &[0.0], &MinimizeOptions::default());
        assert!(matches!(r, Err(Error::InvalidStart)));
    }

    #[test]
    fn exhausted_iterations_carry_best_point() {
        let f = |v: &[f64]| (1.0 - v[0]).powi(2) + 100.0 * (v[1] - v[0] * v[0]).powi(2);
        let opts = MinimizeOptions {
            max_iterations: 5,
            ..Default::default()
        };
        match minimize(f, &[-1.2, 1.0], &opts) {
            Err(Error::NonConvergence { best, value, .. }) => {
                assert_eq!(best.len(), 2);
                assert!(value <= f(&[-1.2, 1.0]));
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
