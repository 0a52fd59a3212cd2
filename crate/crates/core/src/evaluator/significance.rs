//! Paired significance tests over per-document scores.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TestKind {
    #[default]
    Bootstrap,
    TTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SignificanceOptions {
    pub test: TestKind,
    pub resamples: usize,
    pub seed: u64,
}

impl Default for SignificanceOptions {
    fn default() -> Self {
        Self { test: TestKind::Bootstrap, resamples: 10_000, seed: 0 }
    }
}

fn differences(a: &[f64], b: &[f64]) -> Result<Vec<f64>, EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.len() < 2 {
        return Err(EvalError::TooFewPairs(a.len()));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    if d.iter().any(|v| !v.is_finite()) {
        return Err(EvalError::NonFinite);
    }
    Ok(d)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Two-sided p-value for the mean paired difference between `a` and `b`.
pub fn paired_significance(a: &[f64], b: &[f64], opts: &SignificanceOptions) -> Result<f64, EvalError> {
    let d = differences(a, b)?;
    match opts.test {
        TestKind::Bootstrap => Ok(bootstrap(d, opts.resamples.max(1), opts.seed)),
        TestKind::TTest => Ok(t_test(&d)),
    }
}

/// Resamples the centred differences (the null of zero mean difference) and
/// counts resampled means at least as extreme as the observed one.
fn bootstrap(mut d: Vec<f64>, resamples: usize, seed: u64) -> f64 {
    // the result depends only on the multiset of differences, not document order
    d.sort_by(f64::total_cmp);
    let observed = mean(&d);
    let centred: Vec<f64> = d.iter().map(|x| x - observed).collect();
    let n = centred.len();
    let tolerance = 1e-12 * (1.0 + observed.abs());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut extreme = 0usize;
    for _ in 0..resamples {
        let s: f64 = (0..n).map(|_| centred[rng.gen_range(0..n)]).sum();
        if (s / n as f64).abs() >= observed.abs() - tolerance {
            extreme += 1;
        }
    }
    (extreme + 1) as f64 / (resamples + 1) as f64
}

fn t_test(d: &[f64]) -> f64 {
    let n = d.len() as f64;
    let m = mean(d);
    let var = d.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    if var == 0.0 {
        return if m == 0.0 { 1.0 } else { 0.0 };
    }
    let t = m / (var / n).sqrt();
    let dist = StudentsT::new(0.0, 1.0, n - 1.0).expect("degrees of freedom are positive");
    (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
}

/// `††` below 0.01, `†` below 0.05.
pub fn marker(p: f64) -> &'static str {
    if p < 0.01 {
        "††"
    } else if p < 0.05 {
        "†"
    } else {
        ""
    }
}
