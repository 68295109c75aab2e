//! Goodness-of-fit diagnostics: histogram KL divergence against a fitted
//! model, two-sample Kolmogorov–Smirnov score with the asymptotic p-value
//! series, and Q-Q pairs.

use crate::distributions::{self, DistError, DistSpec};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Equal-width histogram normalized to proportions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Histogram {
    /// Bin edges, length = bins + 1, strictly increasing.
    pub edges: Vec<f64>,
    /// Bin proportions, summing to one.
    pub mass: Vec<f64>,
}

/// Two-sample KS outcome.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct KsResult {
    pub score: f64,
    pub p_value: f64,
    /// √(n·m/(n+m)) for sample sizes n and m.
    pub n_effective: f64,
}

/// Equal-width histogram over [min, max] of the data.
pub fn histogram(data: &[f64], bin_count: usize) -> Result<Histogram, DistError> {
    if data.is_empty() {
        return Err(DistError::EmptyData);
    }
    if bin_count < 2 {
        return Err(DistError::InvalidParameter(format!(
            "need at least 2 bins, got {bin_count}"
        )));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &x in data {
        if !x.is_finite() {
            return Err(DistError::NonFiniteInput(x));
        }
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if !(hi > lo) {
        return Err(DistError::InvalidParameter(
            "data range has zero width".into(),
        ));
    }
    let width = (hi - lo) / bin_count as f64;
    let edges: Vec<f64> = (0..=bin_count)
        .map(|i| {
            if i == bin_count {
                hi
            } else {
                lo + width * i as f64
            }
        })
        .collect();
    let mut counts = vec![0usize; bin_count];
    for &x in data {
        let idx = (((x - lo) / width) as usize).min(bin_count - 1);
        counts[idx] += 1;
    }
    let n = data.len() as f64;
    let mass = counts.iter().map(|&c| c as f64 / n).collect();
    Ok(Histogram { edges, mass })
}

/// Discrete KL divergence Σ p_i ln(p_i / g_i) between histogram proportions
/// and the model's bin masses (CDF differences, floored at 1e-12 and
/// renormalized over the histogram support). Zero-mass bins contribute
/// nothing.
pub fn kl_divergence(hist: &Histogram, spec: &DistSpec) -> f64 {
    let bins = hist.mass.len();
    let mut model = Vec::with_capacity(bins);
    let mut total = 0.0;
    for i in 0..bins {
        let m = (distributions::cdf(spec, hist.edges[i + 1]) - distributions::cdf(spec, hist.edges[i]))
            .max(1e-12);
        model.push(m);
        total += m;
    }
    let mut kl = 0.0;
    for (p, g) in hist.mass.iter().zip(&model) {
        if *p > 0.0 {
            kl += p * (p / (g / total)).ln();
        }
    }
    kl
}

/// Two-sample KS test of the data against `m` synthetic draws from the
/// model. The score is the largest gap between the two empirical CDFs.
pub fn ks_two_sample<R: Rng + ?Sized>(
    data: &[f64],
    spec: &DistSpec,
    m: usize,
    rng: &mut R,
) -> Result<KsResult, DistError> {
    if data.is_empty() {
        return Err(DistError::EmptyData);
    }
    let synthetic = distributions::sample(spec, m, rng)?;
    Ok(ks_two_sample_from(data, &synthetic))
}

/// KS score between two explicit samples.
pub fn ks_two_sample_from(a: &[f64], b: &[f64]) -> KsResult {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let v = if xs[i] <= ys[j] { xs[i] } else { ys[j] };
        while i < n && xs[i] <= v {
            i += 1;
        }
        while j < m && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let n_effective = ((n as f64) * (m as f64) / (n + m) as f64).sqrt();
    KsResult {
        score: d,
        p_value: ks_p_value(d, n_effective),
        n_effective,
    }
}

/// Asymptotic KS p-value: with t = D·(N_e + 0.12 + 0.11/N_e),
/// p = 2 Σ_{i≥1} (−1)^{i−1} exp(−2 i² t²), clamped to [0, 1]. Below
/// t = 0.2 the alternating series no longer resolves the value from 1 at
/// working precision, so 1 is returned directly.
pub fn ks_p_value(d: f64, n_effective: f64) -> f64 {
    assert!((0.0..=1.0).contains(&d), "KS score must lie in [0,1], got {d}");
    assert!(n_effective > 0.0);
    let t = d * (n_effective + 0.12 + 0.11 / n_effective);
    if t < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0_f64;
    for i in 1..=10_000 {
        let term = (-2.0 * (i as f64) * (i as f64) * t * t).exp();
        let signed = if i % 2 == 1 { term } else { -term };
        sum += signed;
        if term < 1e-12 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Sorted-quantile pairs of the data against a same-sized reference draw
/// from the model.
pub fn qq_points<R: Rng + ?Sized>(
    data: &[f64],
    spec: &DistSpec,
    m: usize,
    rng: &mut R,
) -> Result<Vec<(f64, f64)>, DistError> {
    if data.is_empty() {
        return Err(DistError::EmptyData);
    }
    let mut xs = data.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let mut ys = distributions::sample(spec, m.max(1), rng)?;
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    // Pair order statistics; when sizes differ, walk the reference at the
    // matching quantile level.
    let n = xs.len();
    let pairs = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let level = if n == 1 { 0.5 } else { i as f64 / (n - 1) as f64 };
            let j = ((ys.len() - 1) as f64 * level).round() as usize;
            (x, ys[j])
        })
        .collect();
    Ok(pairs)
}
