//! Regenerates `src/stattests/johansen_tables.rs`: quantiles of the trace
//! and maximum-eigenvalue statistics under the null of no cointegration,
//! simulated from driftless Gaussian random walks of length `T`.
//!
//! ```text
//! cargo run --release -p econkit --example johansen_tables -- [reps] [T] [out]
//! ```

use std::fmt::Write as _;

use econkit::numerics::DenseMatrix;
use econkit::stattests::{johansen_eigenvalues, JohansenDeterministic, JOHANSEN_MAX_DIM, JOHANSEN_TAIL_PROBS};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

const SEED: u64 = 20_240_401;

fn quantiles(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    JOHANSEN_TAIL_PROBS
        .iter()
        .map(|p| {
            let pos = (1.0 - p) * (v.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(v.len() - 1);
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        })
        .collect()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let reps: usize = args.get(1).map_or(20_000, |s| s.parse().expect("reps"));
    let t: usize = args.get(2).map_or(1_000, |s| s.parse().expect("T"));
    let out = args
        .get(3)
        .cloned()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/src/stattests/johansen_tables.rs").into());

    let mut rng = ChaCha20Rng::seed_from_u64(SEED);
    let mut tables: Vec<(&str, Vec<Vec<f64>>)> = vec![
        ("TRACE_NONE", vec![]),
        ("MAX_NONE", vec![]),
        ("TRACE_CONSTANT", vec![]),
        ("MAX_CONSTANT", vec![]),
    ];
    for dim in 1..=JOHANSEN_MAX_DIM {
        let mut stats: [Vec<f64>; 4] = Default::default();
        for _ in 0..reps {
            let mut level = vec![0.0; dim];
            let mut data = Vec::with_capacity((t + 1) * dim);
            for _ in 0..=t {
                for l in level.iter_mut() {
                    let e: f64 = StandardNormal.sample(&mut rng);
                    *l += e;
                }
                data.extend_from_slice(&level);
            }
            let m = DenseMatrix::new(t + 1, dim, data).expect("finite draws");
            for (k, det) in [JohansenDeterministic::None, JohansenDeterministic::Constant]
                .into_iter()
                .enumerate()
            {
                let e = johansen_eigenvalues(&m, 1, det).expect("nonsingular draw");
                stats[2 * k].push(e.trace(0));
                stats[2 * k + 1].push(e.max_eigen(0));
            }
        }
        for (slot, s) in tables.iter_mut().zip(stats) {
            slot.1.push(quantiles(s));
        }
        eprintln!("dimension {dim} done");
    }

    let mut src = String::new();
    writeln!(src, "// Generated by `examples/johansen_tables.rs` ({reps} replications, T = {t}, seed {SEED}).").unwrap();
    writeln!(src, "// Row d - 1 holds quantiles for d common trends; column i is the upper").unwrap();
    writeln!(src, "// quantile with tail probability TAIL_PROBS[i].").unwrap();
    writeln!(src).unwrap();
    writeln!(src, "pub const MAX_DIM: usize = {JOHANSEN_MAX_DIM};").unwrap();
    let probs: Vec<String> = JOHANSEN_TAIL_PROBS.iter().map(|p| format!("{p:?}")).collect();
    writeln!(src, "pub const TAIL_PROBS: [f64; {}] = [{}];", probs.len(), probs.join(", ")).unwrap();
    for (name, rows) in &tables {
        writeln!(src).unwrap();
        writeln!(src, "pub const {name}: [[f64; {}]; MAX_DIM] = [", probs.len()).unwrap();
        for row in rows {
            let cells: Vec<String> = row.iter().map(|q| format!("{q:.4}")).collect();
            writeln!(src, "    [{}],", cells.join(", ")).unwrap();
        }
        writeln!(src, "];").unwrap();
    }
    std::fs::write(&out, src).expect("write tables");
    eprintln!("wrote {out}");
}
