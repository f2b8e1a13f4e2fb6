//! Seeded benchmark runs over random permutations.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revsynth_core::{synthesize, Permutation, RestStrategy, SynthError, SynthOptions};
use serde::Serialize;

/// Widest `n` at which bench rows are checked against the simulator.
pub const BENCH_VERIFY_MAX: usize = 14;

/// One CSV row. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub trial: usize,
    pub strategy: RestStrategy,
    pub gate_count: usize,
    pub elementary_estimate: u64,
    pub iterations: usize,
    pub wall_time_ms: u64,
    pub verified: bool,
    #[serde(skip)]
    pub rest_elementary: u64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub widths: std::ops::RangeInclusive<usize>,
    pub trials: usize,
    pub seed: u64,
    pub strategies: Vec<RestStrategy>,
    pub options: SynthOptions,
    /// Record wall-clock time; off by default so the CSV is reproducible.
    pub timing: bool,
}

/// Generator for trial `trial` at width `n`: ChaCha8 seeded with `seed`,
/// one stream per `(n, trial)` so rows do not depend on the range chosen.
pub fn trial_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial as u64);
    rng
}

/// Uniform permutation of `{0,1}^n` for one trial.
pub fn trial_permutation(seed: u64, n: usize, trial: usize) -> Permutation {
    Permutation::random(n, &mut trial_rng(seed, n, trial)).expect("width checked by caller")
}

/// Random permutation with `P(0) = 0` moving exactly `size` points.
pub fn random_with_support<R: Rng + ?Sized>(n: usize, size: usize, rng: &mut R) -> Permutation {
    assert!(
        size != 1 && size < 1 << n,
        "no permutation moves exactly {size} points"
    );
    let mut points: Vec<usize> = (1..1 << n).collect();
    points.shuffle(rng);
    points.truncate(size);
    let mut images: Vec<usize> = (0..1 << n).collect();
    loop {
        let mut shuffled = points.clone();
        shuffled.shuffle(rng);
        if points.iter().zip(&shuffled).all(|(a, b)| a != b) {
            for (&a, &b) in points.iter().zip(&shuffled) {
                images[a] = b;
            }
            break;
        }
    }
    Permutation::from_images(n, images).expect("shuffle of a subset is a bijection")
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error("verification failed for n = {n}, trial {trial}, {strategy}")]
    Verification {
        n: usize,
        trial: usize,
        strategy: RestStrategy,
    },
}

/// Rows in `(n, trial, strategy)` order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let mut rows = Vec::new();
    for n in cfg.widths.clone() {
        for trial in 0..cfg.trials {
            let p = trial_permutation(cfg.seed, n, trial);
            for &strategy in &cfg.strategies {
                let opts = SynthOptions {
                    rest_strategy: strategy,
                    ..cfg.options.clone()
                };
                let start = Instant::now();
                let (circuit, report) = synthesize(&p, &opts)?;
                let wall_time_ms = if cfg.timing {
                    start.elapsed().as_millis() as u64
                } else {
                    0
                };
                let verified = n <= BENCH_VERIFY_MAX;
                if verified && circuit.simulate().ok().as_ref() != Some(&p) {
                    return Err(BenchError::Verification { n, trial, strategy });
                }
                rows.push(BenchRecord {
                    n,
                    trial,
                    strategy,
                    gate_count: report.gate_count,
                    elementary_estimate: report.elementary_estimate,
                    iterations: report.iterations,
                    wall_time_ms,
                    verified,
                    rest_elementary: report.phase("rest").map_or(0, |s| s.elementary),
                });
            }
        }
    }
    Ok(rows)
}

/// `2^n · n / log2 n`.
pub fn scaling_term(n: usize) -> f64 {
    let n = n as f64;
    n.exp2() * n / n.log2()
}

/// Least-squares `c` in `cost ≈ c · 2^n · n / log2 n` (n ≥ 2 rows only).
pub fn fit_constant(rows: &[BenchRecord]) -> Option<f64> {
    let (num, den) = rows
        .iter()
        .filter(|r| r.n >= 2)
        .fold((0.0, 0.0), |(num, den), r| {
            let g = scaling_term(r.n);
            (num + r.elementary_estimate as f64 * g, den + g * g)
        });
    (den > 0.0).then(|| num / den)
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
