//! Small statistics helpers for experiment summaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Inverse empirical CDF: smallest sample `x` with `F(x) >= p`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let n = sorted.len();
    let rank = (p.clamp(0.0, 1.0) * n as f64).ceil() as usize;
    sorted[rank.saturating_sub(1).min(n - 1)]
}

/// Quantile levels `0, 1/(points-1), ..., 1`.
pub fn quantile_levels(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.5],
        _ => (0..points).map(|i| i as f64 / (points - 1) as f64).collect(),
    }
}

/// `(level, value)` pairs of the empirical quantile function.
pub fn empirical_quantiles(samples: &[f64], points: usize) -> Vec<(f64, f64)> {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_levels(points)
        .into_iter()
        .map(|p| (p, quantile_sorted(&sorted, p)))
        .collect()
}

/// Two-sample Kolmogorov-Smirnov statistic `sup |F_a - F_b|`.
pub fn ks_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

/// Percentile bootstrap of a statistic over resampled clusters.
///
/// `clusters` holds one row per independent unit (e.g. a seed); `statistic`
/// maps a resampled list of rows to a scalar. Returns the `(lo, hi)` bounds
/// of the two-sided interval at `confidence`.
pub fn bootstrap_interval<T, F>(
    clusters: &[T],
    statistic: F,
    resamples: usize,
    confidence: f64,
    seed: u64,
) -> (f64, f64)
where
    F: Fn(&[&T]) -> f64,
{
    assert!(!clusters.is_empty(), "bootstrap of an empty sample");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws: Vec<f64> = (0..resamples)
        .map(|_| {
            let pick: Vec<&T> = (0..clusters.len())
                .map(|_| &clusters[rng.gen_range(0..clusters.len())])
                .collect();
            statistic(&pick)
        })
        .collect();
    draws.sort_by(f64::total_cmp);
    let alpha = (1.0 - confidence) / 2.0;
    (
        quantile_sorted(&draws, alpha),
        quantile_sorted(&draws, 1.0 - alpha),
    )
}
