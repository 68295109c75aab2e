//! Generalized Gaussian family.
//!
//! Density f(x) = α / (2γ Γ(1/α)) · exp(−(|x|/γ)^α). Shape 1 is Laplace,
//! shape 2 is Normal(0, γ²/2).

use crate::special::{inv_reg_gamma_lower, ln_gamma, reg_gamma_lower};

pub(super) fn log_pdf(alpha: f64, gamma: f64, x: f64) -> f64 {
    alpha.ln() - (2.0 * gamma).ln() - ln_gamma(1.0 / alpha) - (x.abs() / gamma).powf(alpha)
}

pub(super) fn cdf(alpha: f64, gamma: f64, x: f64) -> f64 {
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    let half_tail = 0.5 * reg_gamma_lower(1.0 / alpha, (x.abs() / gamma).powf(alpha));
    if x >= 0.0 {
        0.5 + half_tail
    } else {
        0.5 - half_tail
    }
}

/// |x| = γ G^{1/α} with G ~ Gamma(1/α, 1) by quantile transform, signed by
/// the second uniform.
pub(super) fn sample_from_uniforms(alpha: f64, gamma: f64, u1: f64, u2: f64) -> f64 {
    let g = inv_reg_gamma_lower(1.0 / alpha, super::clamp_unit_open(u1));
    let magnitude = gamma * g.powf(1.0 / alpha);
    if u2 < 0.5 {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::norm_cdf;

    #[test]
    fn shape_two_is_normal() {
        // GG(2, γ) = Normal(0, γ²/2)
        let gamma: f64 = 1.0;
        let expected0 = (1.0 / std::f64::consts::PI.sqrt()).ln();
        assert!((log_pdf(2.0, gamma, 0.0) - expected0).abs() < 1e-14);
        let sigma = (gamma * gamma / 2.0).sqrt();
        for &x in &[-3.0, -0.5, 0.0, 0.7, 2.5, 9.0] {
            let normal = -0.5 * (x / sigma).powi(2)
                - (sigma * (2.0 * std::f64::consts::PI).sqrt()).ln();
            assert!((log_pdf(2.0, gamma, x) - normal).abs() < 1e-12, "x={x}");
            assert!((cdf(2.0, gamma, x) - norm_cdf(x / sigma)).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn shape_one_is_laplace() {
        // f(x) = exp(-|x|/γ) / (2γ)
        for &x in &[-4.0_f64, 0.0, 1.3] {
            let expected = -x.abs() / 2.0 - 4.0_f64.ln();
            assert!((log_pdf(1.0, 2.0, x) - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn cdf_basics() {
        assert!((cdf(0.7, 1.3, 0.0) - 0.5).abs() < 1e-15);
        assert!(cdf(0.7, 1.3, 1e6) > 1.0 - 1e-12);
        assert!(cdf(0.7, 1.3, -1e6) < 1e-12);
        let mut prev = 0.0;
        for i in 0..200 {
            let x = -10.0 + 0.1 * i as f64;
            let c = cdf(1.7, 0.6, x);
            assert!(c >= prev);
            prev = c;
        }
    }
}
