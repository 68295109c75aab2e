//! Deterministic shape and scale maps used by the switch moves.
//!
//! A switch move carries the current scale to the candidate space by
//! equating absolute fractional moments of order p on both sides:
//!
//!   C_from(p, α) γ^{e_from} = C_to(p, α′) γ′^{e_to}
//!
//! with exponent e = p/α for the stable family and e = p otherwise. Solving
//! for γ′ gives every within- and between-family transition as one formula,
//! and the scale part of the Jacobian is ∂γ′/∂γ = (e_from/e_to)·γ′/γ.
//! Everything is computed in log space; the constant ratios get raised to
//! powers of order α′/p and would overflow otherwise.

use super::SamplerConfig;
use crate::distributions::{flom_constant, DistError, FamilyId};
use crate::special::{logit, sigmoid};

/// A proposal transition that cannot be carried out (undefined moment,
/// off-grid image, singular shape map). The caller records a rejection.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("switch move invalid: {0}")]
pub struct MoveInvalid(pub String);

impl From<DistError> for MoveInvalid {
    fn from(e: DistError) -> Self {
        MoveInvalid(e.to_string())
    }
}

/// Result of a scale map: the new scale and log|∂γ′/∂γ|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleMap {
    pub gamma_new: f64,
    pub log_jacobian_gamma: f64,
}

/// Result of a shape map: the grid-snapped image, the raw (pre-snap) image,
/// and the analytic derivative dψ/dα at the source shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeMap {
    pub alpha_new: f64,
    pub alpha_raw: f64,
    pub dpsi_dalpha: f64,
}

/// Moment order for a transition between shapes: the smaller endpoint shape
/// divided by `flom_divisor`, capped at safety·min(α, α′) whenever either
/// endpoint family restricts moment existence to p < α.
///
/// Using min(α, α′) instead of the candidate shape alone makes the order
/// identical for a transition and its reverse, so the forward and reverse
/// scale maps are exact inverses of each other. With a candidate-based
/// order the two directions match different moments, the maps stop being
/// mutually inverse, and the chain develops a systematic scale drift that
/// is plainly visible in prior-only runs.
pub fn flom_order(
    cfg: &SamplerConfig,
    from: FamilyId,
    alpha: f64,
    to: FamilyId,
    alpha_new: f64,
) -> f64 {
    let min_shape = alpha.min(alpha_new);
    let mut p = min_shape / cfg.flom_divisor;
    if from.moment_order_restricted() || to.moment_order_restricted() {
        let cap = cfg.flom_safety * min_shape;
        if p >= cap {
            p = cap;
        }
    }
    p
}

fn flom_exponent(family: FamilyId, p: f64, alpha: f64) -> f64 {
    match family {
        FamilyId::Sas => p / alpha,
        FamilyId::Gg | FamilyId::StudentT => p,
    }
}

fn map_scale(
    from: FamilyId,
    alpha: f64,
    to: FamilyId,
    alpha_new: f64,
    gamma: f64,
    p: f64,
) -> Result<ScaleMap, MoveInvalid> {
    let ln_c_from = flom_constant(from, p, alpha)?.ln();
    let ln_c_to = flom_constant(to, p, alpha_new)?.ln();
    let e_from = flom_exponent(from, p, alpha);
    let e_to = flom_exponent(to, p, alpha_new);
    let ln_gamma_new = (ln_c_from - ln_c_to + e_from * gamma.ln()) / e_to;
    let gamma_new = ln_gamma_new.exp();
    if !(gamma_new.is_finite() && gamma_new > 0.0) {
        return Err(MoveInvalid(format!(
            "scale map produced gamma'={gamma_new} ({from:?} a={alpha} -> {to:?} a'={alpha_new})"
        )));
    }
    let log_jacobian_gamma = ln_gamma_new - gamma.ln() + (e_from / e_to).ln();
    Ok(ScaleMap {
        gamma_new,
        log_jacobian_gamma,
    })
}

/// Scale carry within one family (shape α → α′ at moment order p).
pub fn map_scale_intra(
    family: FamilyId,
    alpha: f64,
    alpha_new: f64,
    gamma: f64,
    p: f64,
) -> Result<ScaleMap, MoveInvalid> {
    map_scale(family, alpha, family, alpha_new, gamma, p)
}

/// Scale carry between families.
pub fn map_scale_inter(
    alpha: f64,
    alpha_new: f64,
    gamma: f64,
    p: f64,
    from: FamilyId,
    to: FamilyId,
) -> Result<ScaleMap, MoveInvalid> {
    map_scale(from, alpha, to, alpha_new, gamma, p)
}

// Shape bridges anchored at the shared special members: f1 maps the stable
// shape to the GG shape (Gaussian at 2 ↔ 2), f2 maps the stable shape to the
// t shape (Cauchy anchor near 1; unbounded as the Gaussian end is
// approached, which the grid bound cuts off).
fn f1(a: f64) -> f64 {
    a * a / 2.0
}

fn f1_deriv(a: f64) -> f64 {
    a
}

fn f1_inv(a: f64) -> f64 {
    (2.0 * a).sqrt()
}

fn f1_inv_deriv(a: f64) -> f64 {
    1.0 / (2.0 * a).sqrt()
}

fn f2(a: f64) -> f64 {
    logit((a + 2.0) / 4.0)
}

fn f2_deriv(a: f64) -> f64 {
    4.0 / ((a + 2.0) * (2.0 - a))
}

fn f2_inv(y: f64) -> f64 {
    4.0 * sigmoid(y) - 2.0
}

fn f2_inv_deriv(y: f64) -> f64 {
    let s = sigmoid(y);
    4.0 * s * (1.0 - s)
}

/// Deterministic shape transport ψ(α, from → to) with its derivative,
/// snapped onto the destination grid. Singular or out-of-range images are
/// move-invalid.
pub fn map_shape_inter(
    alpha: f64,
    from: FamilyId,
    to: FamilyId,
    cfg: &SamplerConfig,
) -> Result<ShapeMap, MoveInvalid> {
    assert_ne!(from, to, "inter-family map needs distinct families");
    use FamilyId::*;
    let (raw, deriv) = match (from, to) {
        (Sas, Gg) => (f1(alpha), f1_deriv(alpha)),
        (Sas, StudentT) => {
            if alpha >= 2.0 {
                return Err(MoveInvalid("shape map singular at the Gaussian end".into()));
            }
            (f2(alpha), f2_deriv(alpha))
        }
        (Gg, Sas) => (f1_inv(alpha), f1_inv_deriv(alpha)),
        (Gg, StudentT) => {
            let mid = f1_inv(alpha);
            if mid >= 2.0 {
                return Err(MoveInvalid("shape map singular at the Gaussian end".into()));
            }
            (f2(mid), f2_deriv(mid) * f1_inv_deriv(alpha))
        }
        (StudentT, Sas) => (f2_inv(alpha), f2_inv_deriv(alpha)),
        (StudentT, Gg) => {
            let mid = f2_inv(alpha);
            (f1(mid), f1_deriv(mid) * f2_inv_deriv(alpha))
        }
        _ => unreachable!(),
    };
    if !raw.is_finite() || !deriv.is_finite() || deriv <= 0.0 {
        return Err(MoveInvalid(format!(
            "shape map produced alpha'={raw}, dpsi={deriv}"
        )));
    }
    let grid = cfg.grid(to);
    let idx = grid
        .snap(raw)
        .ok_or_else(|| MoveInvalid(format!("shape image {raw} snaps outside the grid")))?;
    Ok(ShapeMap {
        alpha_new: grid.value(idx),
        alpha_raw: raw,
        dpsi_dalpha: deriv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{flom_value, DistSpec};

    fn cfg() -> SamplerConfig {
        SamplerConfig::default()
    }

    #[test]
    fn identity_transition_is_neutral() {
        for family in FamilyId::ALL {
            let m = map_scale_intra(family, 1.2, 1.2, 0.8, 0.12).unwrap();
            assert!((m.gamma_new - 0.8).abs() < 1e-14);
            assert!(m.log_jacobian_gamma.abs() < 1e-14);
        }
    }

    #[test]
    fn intra_map_conserves_fractional_moment() {
        for family in FamilyId::ALL {
            for &(a, ap, g) in &[(1.5, 1.0, 2.0), (0.5, 1.9, 0.4), (1.05, 0.3, 7.0)] {
                let p = 0.1;
                let m = map_scale_intra(family, a, ap, g, p).unwrap();
                let before = flom_value(&DistSpec::new(family, a, g).unwrap(), p).unwrap();
                let after =
                    flom_value(&DistSpec::new(family, ap, m.gamma_new).unwrap(), p).unwrap();
                assert!(
                    ((before - after) / before).abs() < 1e-10,
                    "family={family:?}, {a}->{ap}: {before} vs {after}"
                );
            }
        }
    }

    #[test]
    fn intra_map_matches_published_form() {
        // Closed forms written out per family, as an independent route.
        let p = 0.08;
        let (a, ap, g) = (1.4, 0.9, 2.3);
        let c = |fam, alpha| flom_constant(fam, p, alpha).unwrap();
        // Stable: γ' = (C(p,α)/C(p,α'))^{α'/p} γ^{α'/α}
        let m = map_scale_intra(FamilyId::Sas, a, ap, g, p).unwrap();
        let expected =
            (c(FamilyId::Sas, a) / c(FamilyId::Sas, ap)).powf(ap / p) * g.powf(ap / a);
        assert!(((m.gamma_new - expected) / expected).abs() < 1e-11);
        let expected_j =
            (c(FamilyId::Sas, a) / c(FamilyId::Sas, ap)).powf(ap / p) * (ap / a)
                * g.powf((ap - a) / a);
        assert!(((m.log_jacobian_gamma.exp() - expected_j) / expected_j).abs() < 1e-11);
        // GG and t: γ' = (C/C')^{1/p} γ, |J| = (C/C')^{1/p}
        for fam in [FamilyId::Gg, FamilyId::StudentT] {
            let m = map_scale_intra(fam, a, ap, g, p).unwrap();
            let ratio = (c(fam, a) / c(fam, ap)).powf(1.0 / p);
            assert!(((m.gamma_new - ratio * g) / (ratio * g)).abs() < 1e-11);
            assert!(((m.log_jacobian_gamma.exp() - ratio) / ratio).abs() < 1e-11);
        }
    }

    #[test]
    fn inter_map_matches_published_form() {
        let p = 0.08;
        let g = 1.7;
        let c = |fam, alpha| flom_constant(fam, p, alpha).unwrap();
        // Stable(α) → GG(α'): γ' = (C_s/C_gg)^{1/p} γ^{1/α}
        let (a, ap) = (1.2, 0.72);
        let m = map_scale_inter(a, ap, g, p, FamilyId::Sas, FamilyId::Gg).unwrap();
        let expected = (c(FamilyId::Sas, a) / c(FamilyId::Gg, ap)).powf(1.0 / p) * g.powf(1.0 / a);
        assert!(((m.gamma_new - expected) / expected).abs() < 1e-11);
        // GG(α) → Stable(α'): γ' = (C_gg/C_s)^{α'/p} γ^{α'}
        let (a, ap) = (0.72, 1.2);
        let m = map_scale_inter(a, ap, g, p, FamilyId::Gg, FamilyId::Sas).unwrap();
        let expected = (c(FamilyId::Gg, a) / c(FamilyId::Sas, ap)).powf(ap / p) * g.powf(ap);
        assert!(((m.gamma_new - expected) / expected).abs() < 1e-11);
        // GG(α) → t(α'): γ' = (C_gg/C_t)^{1/p} γ
        let (a, ap) = (0.9, 2.4);
        let m = map_scale_inter(a, ap, g, p, FamilyId::Gg, FamilyId::StudentT).unwrap();
        let expected = (c(FamilyId::Gg, a) / c(FamilyId::StudentT, ap)).powf(1.0 / p) * g;
        assert!(((m.gamma_new - expected) / expected).abs() < 1e-11);
    }

    #[test]
    fn inter_map_conserves_fractional_moment() {
        let p = 0.05;
        for &(from, to, a, ap) in &[
            (FamilyId::Sas, FamilyId::Gg, 1.0, 0.5),
            (FamilyId::Gg, FamilyId::Sas, 0.5, 1.0),
            (FamilyId::Sas, FamilyId::StudentT, 1.4, 1.38),
            (FamilyId::StudentT, FamilyId::Gg, 2.0, 1.4),
            (FamilyId::Gg, FamilyId::StudentT, 1.4, 2.0),
            (FamilyId::StudentT, FamilyId::Sas, 0.6, 0.6),
        ] {
            let m = map_scale_inter(a, ap, 2.2, p, from, to).unwrap();
            let before = flom_value(&DistSpec::new(from, a, 2.2).unwrap(), p).unwrap();
            let after = flom_value(&DistSpec::new(to, ap, m.gamma_new).unwrap(), p).unwrap();
            assert!(
                ((before - after) / before).abs() < 1e-10,
                "{from:?}->{to:?}: {before} vs {after}"
            );
        }
    }

    #[test]
    fn scale_maps_invert_at_fixed_order() {
        let p = 0.07;
        for &(from, to, a, ap) in &[
            (FamilyId::Sas, FamilyId::Gg, 1.3, 0.845),
            (FamilyId::Gg, FamilyId::StudentT, 0.6, 1.1),
            (FamilyId::StudentT, FamilyId::Sas, 2.2, 0.47),
        ] {
            let fwd = map_scale_inter(a, ap, 3.3, p, from, to).unwrap();
            let back = map_scale_inter(ap, a, fwd.gamma_new, p, to, from).unwrap();
            assert!(
                ((back.gamma_new - 3.3) / 3.3).abs() < 1e-10,
                "{from:?}->{to:?} round trip gave {}",
                back.gamma_new
            );
            assert!((fwd.log_jacobian_gamma + back.log_jacobian_gamma).abs() < 1e-10);
        }
    }

    #[test]
    fn shape_map_gaussian_anchor() {
        // Stable shape 2 maps to GG shape 2.
        let m = map_shape_inter(2.0, FamilyId::Sas, FamilyId::Gg, &cfg()).unwrap();
        assert!((m.alpha_new - 2.0).abs() < 1e-12);
        assert!((m.alpha_raw - 2.0).abs() < 1e-12);
    }

    #[test]
    fn shape_map_cauchy_anchor_is_ln3() {
        let m = map_shape_inter(1.0, FamilyId::Sas, FamilyId::StudentT, &cfg()).unwrap();
        assert!((m.alpha_raw - 3.0_f64.ln()).abs() < 1e-12);
        // snapped to the 0.05 grid
        assert!((m.alpha_new - 1.10).abs() < 1e-12);
    }

    #[test]
    fn shape_map_inverse_composition() {
        let c = cfg();
        for i in 1..=40 {
            let a = 0.05 * i as f64;
            let fwd = f1(a);
            let back = map_shape_inter(fwd, FamilyId::Gg, FamilyId::Sas, &c);
            if let Ok(m) = back {
                assert!(
                    (m.alpha_raw - a).abs() < 1e-9,
                    "f1_inv(f1({a})) = {}",
                    m.alpha_raw
                );
            }
        }
    }

    #[test]
    fn shape_map_singularities_are_invalid() {
        let c = cfg();
        assert!(map_shape_inter(2.0, FamilyId::Sas, FamilyId::StudentT, &c).is_err());
        assert!(map_shape_inter(2.0, FamilyId::Gg, FamilyId::StudentT, &c).is_err());
        // t shape far above the stable image range snaps out of grid.
        assert!(map_shape_inter(5.0, FamilyId::StudentT, FamilyId::Sas, &c).is_ok());
        // tiny stable shape maps to f1 = a²/2 below half a grid step -> invalid
        assert!(map_shape_inter(0.05, FamilyId::Sas, FamilyId::Gg, &c).is_err());
    }

    #[test]
    fn flom_order_policy() {
        let c = cfg();
        // Direction symmetry: a transition and its reverse share one order.
        let fwd = flom_order(&c, FamilyId::Gg, 0.1, FamilyId::Gg, 2.0);
        let rev = flom_order(&c, FamilyId::Gg, 2.0, FamilyId::Gg, 0.1);
        assert_eq!(fwd, rev);
        assert!((fwd - 0.01).abs() < 1e-15);
        let p = flom_order(&c, FamilyId::Sas, 1.5, FamilyId::Sas, 1.0);
        assert!((p - 0.1).abs() < 1e-15);
        // The safety cap binds when the divisor is aggressive.
        let tight = SamplerConfig {
            flom_divisor: 1.5,
            ..cfg()
        };
        let p = flom_order(&tight, FamilyId::Sas, 0.5, FamilyId::Sas, 2.0);
        assert!((p - 0.45 * 0.5).abs() < 1e-15);
        // Moments stay defined on both endpoints for restricted families.
        assert!(p < 0.5);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let p = 0.09;
        let h = 1e-6;
        for &(from, to, a, ap, g) in &[
            (FamilyId::Sas, FamilyId::Sas, 1.5, 0.9, 2.0),
            (FamilyId::Gg, FamilyId::Gg, 0.5, 1.8, 0.7),
            (FamilyId::StudentT, FamilyId::StudentT, 3.0, 1.2, 1.1),
            (FamilyId::Sas, FamilyId::Gg, 1.1, 0.6, 2.4),
            (FamilyId::Gg, FamilyId::Sas, 0.6, 1.1, 0.9),
            (FamilyId::StudentT, FamilyId::Gg, 2.6, 1.2, 1.6),
        ] {
            let f = |gamma: f64| {
                map_scale(from, a, to, ap, gamma, p).unwrap().gamma_new
            };
            let fd = (f(g + h) - f(g - h)) / (2.0 * h);
            let analytic = map_scale(from, a, to, ap, g, p)
                .unwrap()
                .log_jacobian_gamma
                .exp();
            assert!(
                ((fd - analytic) / analytic).abs() < 1e-6,
                "{from:?}->{to:?}: fd={fd}, analytic={analytic}"
            );
        }
    }
}
