//! The three move kinds and their acceptance tests.

use super::chain::ChainCtx;
use super::maps::{flom_order, map_scale_inter, map_scale_intra, map_shape_inter, MoveInvalid};
use super::prior::inv_gamma_log_pdf;
use super::{ModelState, MoveKind, MoveRecord};
use crate::distributions::{DistSpec, FamilyId};
use crate::special::norm_cdf;
use rand::Rng;

const TRUNC_NORMAL_MAX_TRIES: usize = 10_000;

fn accept<R: Rng + ?Sized>(log_ratio: f64, rng: &mut R) -> bool {
    log_ratio >= 0.0 || rng.gen::<f64>() < log_ratio.exp()
}

fn rejected(state: &ModelState, kind: MoveKind, log_ratio: f64) -> (ModelState, MoveRecord) {
    (
        *state,
        MoveRecord {
            kind,
            accepted: false,
            log_ratio,
        },
    )
}

/// Scale-only Metropolis proposal: γ′ from a normal centred at γ, truncated
/// to (0, γ+1] by rejection. Returns the candidate state and the log
/// acceptance ratio, which carries both truncation normalizers (the kernel
/// terms cancel by symmetry). −∞ when the reverse move could not have
/// proposed γ, i.e. γ lies outside (0, γ′+1].
pub fn propose_life<R: Rng + ?Sized>(
    state: &ModelState,
    ctx: &ChainCtx<'_>,
    rng: &mut R,
) -> Result<(ModelState, f64), MoveInvalid> {
    let gamma = state.spec.gamma;
    let sigma = ctx.cfg.life_proposal_var.sqrt();
    let mut gamma_new = None;
    for _ in 0..TRUNC_NORMAL_MAX_TRIES {
        let z = crate::special::norm_quantile(rng.gen::<f64>().clamp(1e-16, 1.0 - 1e-16));
        let cand = gamma + sigma * z;
        if cand > 0.0 && cand <= gamma + 1.0 {
            gamma_new = Some(cand);
            break;
        }
    }
    let gamma_new = gamma_new.ok_or_else(|| {
        MoveInvalid("truncated-normal proposal exhausted its rejection budget".into())
    })?;
    let spec_new = DistSpec::new(state.spec.family, state.spec.alpha, gamma_new)?;
    let candidate = ctx.make_state(spec_new)?;
    if gamma > gamma_new + 1.0 {
        return Ok((candidate, f64::NEG_INFINITY));
    }
    // ln q(γ|γ′) − ln q(γ′|γ) reduces to ln Z(γ) − ln Z(γ′) with
    // Z(m) = Φ(1/σ) − Φ(−m/σ), the truncated-normal mass around mean m.
    let ln_z = |mean: f64| (norm_cdf(1.0 / sigma) - norm_cdf(-mean / sigma)).ln();
    let log_ratio = candidate.log_likelihood - state.log_likelihood + candidate.log_prior_gamma
        - state.log_prior_gamma
        + ln_z(gamma)
        - ln_z(gamma_new);
    Ok((candidate, log_ratio))
}

pub(super) fn step_life<R: Rng + ?Sized>(
    state: &ModelState,
    ctx: &ChainCtx<'_>,
    rng: &mut R,
) -> (ModelState, MoveRecord) {
    match propose_life(state, ctx, rng) {
        Ok((candidate, log_ratio)) => {
            let accepted = accept(log_ratio, rng);
            (
                if accepted { candidate } else { *state },
                MoveRecord {
                    kind: MoveKind::Life,
                    accepted,
                    log_ratio,
                },
            )
        }
        Err(_) => rejected(state, MoveKind::Life, f64::NEG_INFINITY),
    }
}

/// Signed grid offset from the discretized Laplace proposal: a symmetric
/// sign and a geometric magnitude, so P(j) ∝ exp(−|j|·step/scale) over all
/// non-zero integer offsets of the unbounded grid.
pub fn propose_alpha_offset<R: Rng + ?Sized>(
    grid_step: f64,
    laplace_scale: f64,
    rng: &mut R,
) -> i64 {
    let rho = (-grid_step / laplace_scale).exp();
    let negative = rng.gen::<f64>() < 0.5;
    let u: f64 = rng.gen::<f64>().clamp(1e-16, 1.0 - 1e-16);
    let magnitude = 1 + ((1.0 - u).ln() / rho.ln()).floor() as i64;
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Candidate shape on the unbounded grid around `alpha`; may land outside
/// (0, alpha_max], which the switch move rejects to keep the proposal
/// symmetric.
pub fn propose_alpha_discrete_laplace<R: Rng + ?Sized>(
    alpha: f64,
    cfg: &super::SamplerConfig,
    rng: &mut R,
) -> f64 {
    alpha + propose_alpha_offset(cfg.grid_step, cfg.laplace_scale, rng) as f64 * cfg.grid_step
}

/// Within-family switch: new shape from the discretized Laplace, scale
/// carried by fractional-moment matching, accepted on likelihood × prior ×
/// scale-Jacobian (the shape proposal is symmetric and the within-family
/// shape prior uniform, so both cancel).
pub fn step_intra<R: Rng + ?Sized>(
    state: &ModelState,
    ctx: &ChainCtx<'_>,
    rng: &mut R,
) -> (ModelState, MoveRecord) {
    let family = state.spec.family;
    let grid = ctx.cfg.grid(family);
    let idx = grid
        .index_of(state.spec.alpha)
        .expect("chain shape must lie on the grid") as i64;
    let offset = propose_alpha_offset(ctx.cfg.grid_step, ctx.cfg.laplace_scale, rng);
    let idx_new = idx + offset;
    if idx_new < 0 || idx_new >= grid.len() as i64 {
        return rejected(state, MoveKind::IntraSwitch, f64::NEG_INFINITY);
    }
    let alpha_new = grid.value(idx_new as usize);
    let p = flom_order(ctx.cfg, family, state.spec.alpha, family, alpha_new);
    let map = match map_scale_intra(family, state.spec.alpha, alpha_new, state.spec.gamma, p) {
        Ok(m) => m,
        Err(_) => return rejected(state, MoveKind::IntraSwitch, f64::NEG_INFINITY),
    };
    let candidate = match DistSpec::new(family, alpha_new, map.gamma_new)
        .map_err(MoveInvalid::from)
        .and_then(|s| ctx.make_state(s))
    {
        Ok(c) => c,
        Err(_) => return rejected(state, MoveKind::IntraSwitch, f64::NEG_INFINITY),
    };
    let log_ratio = candidate.log_likelihood - state.log_likelihood + candidate.log_prior_gamma
        - state.log_prior_gamma
        + map.log_jacobian_gamma;
    let accepted = accept(log_ratio, rng);
    (
        if accepted { candidate } else { *state },
        MoveRecord {
            kind: MoveKind::IntraSwitch,
            accepted,
            log_ratio,
        },
    )
}

/// Between-family switch: uniform pick of the other two families, shape
/// transported through the deterministic bridge map, scale through
/// fractional-moment matching. The grid snap must round-trip back to the
/// source shape, keeping the discretized shape map a bijection on the pairs
/// it allows.
pub fn step_inter<R: Rng + ?Sized>(
    state: &ModelState,
    ctx: &ChainCtx<'_>,
    rng: &mut R,
) -> (ModelState, MoveRecord) {
    let from = state.spec.family;
    let others: Vec<FamilyId> = FamilyId::ALL.iter().copied().filter(|f| *f != from).collect();
    let to = if rng.gen::<f64>() < 0.5 {
        others[0]
    } else {
        others[1]
    };
    match inter_log_ratio(state, to, ctx) {
        Ok((candidate, log_ratio)) => {
            let accepted = accept(log_ratio, rng);
            (
                if accepted { candidate } else { *state },
                MoveRecord {
                    kind: MoveKind::InterSwitch,
                    accepted,
                    log_ratio,
                },
            )
        }
        Err(_) => rejected(state, MoveKind::InterSwitch, f64::NEG_INFINITY),
    }
}

/// Candidate and log acceptance ratio of a between-family transition.
pub(super) fn inter_log_ratio(
    state: &ModelState,
    to: FamilyId,
    ctx: &ChainCtx<'_>,
) -> Result<(ModelState, f64), MoveInvalid> {
    let from = state.spec.family;
    let shape = map_shape_inter(state.spec.alpha, from, to, ctx.cfg)?;
    // Require the reverse snap to return the source shape exactly; pairs
    // where rounding breaks invertibility are not proposable in either
    // direction.
    let back = map_shape_inter(shape.alpha_new, to, from, ctx.cfg)?;
    if (back.alpha_new - state.spec.alpha).abs() > 1e-9 {
        return Err(MoveInvalid(format!(
            "snap round trip {} -> {} -> {} broke",
            state.spec.alpha, shape.alpha_new, back.alpha_new
        )));
    }
    let p = flom_order(ctx.cfg, from, state.spec.alpha, to, shape.alpha_new);
    let map = map_scale_inter(state.spec.alpha, shape.alpha_new, state.spec.gamma, p, from, to)?;
    let candidate = ctx.make_state(DistSpec::new(to, shape.alpha_new, map.gamma_new)?)?;
    // Shape-prior pmf ratio on the discrete grids, new over old. With a
    // shared grid step this equals alpha_max(from)/alpha_max(to). The
    // continuous-measure shape derivative dψ/dα is deliberately NOT part of
    // the ratio: shapes live on snapped grids where the transported cell
    // count does not change, and including it skews the family occupancy
    // toward wherever the bridge map stretches (visible as a large uniform-
    // prior violation in prior-only runs). Dropping it also makes the
    // forward and reverse log-ratios cancel exactly.
    let prior_alpha_ratio = (ctx.cfg.alpha_max(from) / ctx.cfg.alpha_max(to)).ln();
    let log_ratio = candidate.log_likelihood - state.log_likelihood + candidate.log_prior_gamma
        - state.log_prior_gamma
        + prior_alpha_ratio
        + map.log_jacobian_gamma;
    Ok((candidate, log_ratio))
}

impl ChainCtx<'_> {
    pub(super) fn make_state(&self, spec: DistSpec) -> Result<ModelState, MoveInvalid> {
        let log_likelihood = self.log_likelihood(&spec);
        let log_prior_gamma = inv_gamma_log_pdf(spec.gamma, self.cfg.prior_a, self.cfg.prior_b)
            .map_err(|e| MoveInvalid(e.to_string()))?;
        if log_likelihood.is_nan() || log_prior_gamma.is_nan() {
            return Err(MoveInvalid("non-finite target density".into()));
        }
        Ok(ModelState {
            spec,
            log_likelihood,
            log_prior_gamma,
        })
    }
}
