//! Scalar statistics shared across the pipeline: standard-normal CDF and
//! quantile, numerically stable logistic helpers, and small-sample summaries.

use statrs::function::erf;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erf::erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Lower-tail standard normal quantile, Newton-polished so that
/// `normal_cdf(normal_quantile(p))` reproduces `p` to machine precision.
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile requires p in (0, 1), got {p}");
    let mut z = -SQRT_2 * erf::erfc_inv(2.0 * p);
    for _ in 0..2 {
        let d = normal_pdf(z);
        if d <= f64::MIN_POSITIVE {
            break;
        }
        z -= (normal_cdf(z) - p) / d;
    }
    z
}

/// Two-sided p-value of a standard normal statistic.
pub fn two_sided_p(z: f64) -> f64 {
    (2.0 * normal_cdf(-z.abs())).min(1.0)
}

/// Logistic function, stable across the whole real line.
pub fn sigmoid(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + (-eta).exp())
    } else {
        let e = eta.exp();
        e / (1.0 + e)
    }
}

/// log(1 + exp(eta)) without overflow.
pub fn ln_1p_exp(eta: f64) -> f64 {
    if eta > 0.0 {
        eta + (-eta).exp().ln_1p()
    } else {
        eta.exp().ln_1p()
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation with the n-1 divisor; 0 for fewer than 2 values.
pub fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss = xs.iter().map(|&v| (v - m) * (v - m)).sum::<f64>();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Median; the average of the two middle order statistics for even lengths.
pub fn median(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty(), "median of an empty slice");
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Kolmogorov-Smirnov statistic of `sample` against the distribution given by
/// `cdf`.
pub fn ks_statistic<F>(sample: &[f64], cdf: F) -> f64
where
    F: Fn(f64) -> f64,
{
    assert!(!sample.is_empty());
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &v) in sorted.iter().enumerate() {
        let f = cdf(v);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

/// Approximate two-sided KS critical value at level `alpha` (Stephens'
/// small-sample correction of the asymptotic Kolmogorov quantile).
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    assert!(n > 0 && alpha > 0.0 && alpha < 1.0);
    let c = (-0.5 * (alpha / 2.0).ln()).sqrt();
    let sqrt_n = (n as f64).sqrt();
    c / (sqrt_n + 0.12 + 0.11 / sqrt_n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_round_trip() {
        for &p in &[1e-12, 1e-8, 2.5e-2, 0.5, 0.975, 1.0 - 1e-9] {
            let z = normal_quantile(p);
            assert!((normal_cdf(z) - p).abs() <= 1e-14 * p.max(1e-300));
        }
    }

    #[test]
    fn quantile_known_values() {
        assert!((normal_quantile(0.025) + 1.959_963_984_540_054).abs() < 1e-12);
        assert!((normal_quantile(0.5)).abs() < 1e-15);
    }

    #[test]
    fn two_sided_p_at_zero_is_one() {
        assert_eq!(two_sided_p(0.0), 1.0);
    }

    #[test]
    fn ks_critical_matches_table() {
        // classical table value for n = 50, alpha = 0.01 is about 0.226
        let d = ks_critical(50, 0.01);
        assert!((d - 0.226).abs() < 2e-3, "got {d}");
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
