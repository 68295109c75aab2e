//! Student's t family with shape `alpha` (degrees of freedom) and a pure
//! scale multiplier `gamma`: f(x) = t_α(x/γ)/γ. Shape 1 is Cauchy with
//! scale γ.

use crate::special::{inv_reg_gamma_lower, ln_gamma, norm_quantile, reg_beta};
use std::f64::consts::PI;

pub(super) fn log_pdf(alpha: f64, gamma: f64, x: f64) -> f64 {
    let z = x / gamma;
    ln_gamma((alpha + 1.0) / 2.0)
        - ln_gamma(alpha / 2.0)
        - gamma.ln()
        - 0.5 * (PI * alpha).ln()
        - 0.5 * (alpha + 1.0) * (z * z / alpha).ln_1p()
}

pub(super) fn cdf(alpha: f64, gamma: f64, x: f64) -> f64 {
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    let z = x / gamma;
    let w = alpha / (alpha + z * z);
    let half_tail = 0.5 * reg_beta(alpha / 2.0, 0.5, w);
    if z >= 0.0 {
        1.0 - half_tail
    } else {
        half_tail
    }
}

/// z / sqrt(w/α) with z standard normal and w ~ χ²_α, both by quantile
/// transform so the draw consumes exactly two uniforms.
pub(super) fn sample_from_uniforms(alpha: f64, gamma: f64, u1: f64, u2: f64) -> f64 {
    let z = norm_quantile(super::clamp_unit_open(u1));
    let chi2 = 2.0 * inv_reg_gamma_lower(alpha / 2.0, super::clamp_unit_open(u2));
    gamma * z / (chi2 / alpha).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_one_is_cauchy() {
        for &gamma in &[0.5, 1.0, 3.0] {
            for &x in &[-7.0, -1.0, 0.0, 0.4, 2.0, 10.0] {
                let expected = (gamma / (PI * (x * x + gamma * gamma))).ln();
                assert!(
                    (log_pdf(1.0, gamma, x) - expected).abs() < 1e-12,
                    "gamma={gamma}, x={x}"
                );
                let expected_cdf = 0.5 + (x / gamma).atan() / PI;
                assert!((cdf(1.0, gamma, x) - expected_cdf).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn cauchy_quartile() {
        assert!((cdf(1.0, 1.0, 1.0) - 0.75).abs() < 1e-13);
    }

    #[test]
    fn log_pdf_at_zero() {
        // t(1, 1) at 0 is 1/pi.
        assert!((log_pdf(1.0, 1.0, 0.0) - (1.0 / PI).ln()).abs() < 1e-13);
    }

    #[test]
    fn cdf_monotone_and_symmetric() {
        let mut prev = 0.0;
        for i in 0..400 {
            let x = -20.0 + 0.1 * i as f64;
            let c = cdf(3.0, 1.4, x);
            assert!(c >= prev);
            prev = c;
        }
        for &x in &[0.3, 1.0, 5.5] {
            let s = cdf(2.5, 0.8, x) + cdf(2.5, 0.8, -x);
            assert!((s - 1.0).abs() < 1e-13);
        }
    }
}
