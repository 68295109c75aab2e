//! Inverse-gamma prior on the scale parameter, shape–scale form:
//! f(γ) = b^a / Γ(a) · γ^{−a−1} e^{−b/γ}.

use super::SamplerError;
use crate::special::{inv_reg_gamma_lower, ln_gamma};

pub fn inv_gamma_log_pdf(gamma: f64, a: f64, b: f64) -> Result<f64, SamplerError> {
    if !(gamma > 0.0 && a > 0.0 && b > 0.0) {
        return Err(SamplerError::Config(format!(
            "inverse-gamma density needs positive arguments, got gamma={gamma}, a={a}, b={b}"
        )));
    }
    Ok(a * b.ln() - ln_gamma(a) - (a + 1.0) * gamma.ln() - b / gamma)
}

/// Quantile of the inverse-gamma law: X = b / G with G ~ Gamma(a, 1), so
/// F_X(x) = Q(a, b/x) and the quantile inverts the upper incomplete gamma.
pub fn inv_gamma_quantile(p: f64, a: f64, b: f64) -> f64 {
    assert!((0.0..1.0).contains(&p) && a > 0.0 && b > 0.0);
    if p == 0.0 {
        return 0.0;
    }
    b / inv_reg_gamma_lower(a, 1.0 - p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_hyperparameters_at_one() {
        // b^a/Γ(a)·γ^{−a−1}e^{−b/γ} at γ=a=b=1 is e^{−1}.
        assert!((inv_gamma_log_pdf(1.0, 1.0, 1.0).unwrap() - (-1.0)).abs() < 1e-14);
    }

    #[test]
    fn substitution_at_two() {
        // γ=2, a=b=1: density 0.25·e^{−0.5}.
        let expected = (0.25_f64 * (-0.5_f64).exp()).ln();
        assert!((inv_gamma_log_pdf(2.0, 1.0, 1.0).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn mode_matches_grid_search() {
        // argmax over γ is b/(a+1); confirm by scanning a fine grid.
        for &(a, b) in &[(1.0, 1.0), (2.5, 0.7), (0.8, 3.0)] {
            let mut best = (f64::NEG_INFINITY, 0.0);
            let mut g = 1e-3;
            while g < 10.0 {
                let v = inv_gamma_log_pdf(g, a, b).unwrap();
                if v > best.0 {
                    best = (v, g);
                }
                g += 1e-3;
            }
            let analytic = b / (a + 1.0);
            assert!(
                (best.1 - analytic).abs() < 2e-3,
                "a={a}, b={b}, grid argmax {} vs {}",
                best.1,
                analytic
            );
        }
    }

    #[test]
    fn rejects_non_positive_arguments() {
        assert!(inv_gamma_log_pdf(0.0, 1.0, 1.0).is_err());
        assert!(inv_gamma_log_pdf(1.0, -1.0, 1.0).is_err());
        assert!(inv_gamma_log_pdf(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn quantile_round_trip() {
        // F(quantile(p)) = p with F(x) = Q(a, b/x).
        use crate::special::reg_gamma_upper;
        for &(a, b) in &[(1.0, 1.0), (3.0, 2.0)] {
            for &p in &[0.01, 0.3, 0.5, 0.9, 0.999] {
                let x = inv_gamma_quantile(p, a, b);
                let back = reg_gamma_upper(a, b / x);
                assert!((back - p).abs() < 1e-10, "a={a}, b={b}, p={p}");
            }
        }
    }
}
