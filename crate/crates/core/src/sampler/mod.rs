//! The trans-family MCMC sampler.
//!
//! One chain walks the combined space of (family, shape, scale) states with
//! three move kinds: a scale-only Metropolis update (`life`), a shape/scale
//! jump within the current family (`intra` switch), and a jump between
//! families (`inter` switch). Both switch moves transport the scale through
//! fractional-moment matching so a jump lands where the candidate family
//! assigns comparable mass to the data.

mod chain;
mod grid;
mod maps;
mod moves;
mod prior;

pub use chain::{run_chain, run_chain_with_mode, summarize, ChainCtx, LikelihoodMode};
pub use grid::AlphaGrid;
pub use maps::{
    flom_order, map_scale_inter, map_scale_intra, map_shape_inter, MoveInvalid, ScaleMap, ShapeMap,
};
pub use moves::{
    propose_alpha_discrete_laplace, propose_alpha_offset, propose_life, step_inter, step_intra,
};
pub use prior::{inv_gamma_log_pdf, inv_gamma_quantile};

use crate::distributions::{DistError, DistSpec, FamilyId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SamplerError {
    #[error("invalid sampler configuration: {0}")]
    Config(String),
    #[error("degenerate data: interquartile range is zero")]
    DegenerateData,
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// Every tunable of a run. Defaults follow the experiment protocol the
/// sampler was calibrated with; see `Default`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerConfig {
    /// Probability of the scale-update move.
    pub p_life: f64,
    /// Probability of the within-family switch move.
    pub p_intra: f64,
    /// Probability of the between-family switch move.
    pub p_inter: f64,
    /// Inverse-gamma prior shape on the scale parameter.
    pub prior_a: f64,
    /// Inverse-gamma prior scale on the scale parameter.
    pub prior_b: f64,
    /// Variance of the truncated-normal scale proposal in the life move.
    pub life_proposal_var: f64,
    /// Scale of the discretized Laplace shape proposal.
    pub laplace_scale: f64,
    /// Shape-grid increment.
    pub grid_step: f64,
    pub alpha_max_sas: f64,
    pub alpha_max_gg: f64,
    pub alpha_max_t: f64,
    pub n_iter: usize,
    pub burn_in: usize,
    /// Fractional moment order is the smaller shape endpoint divided by this.
    pub flom_divisor: f64,
    /// Cap on the moment order as a fraction of the smaller shape endpoint,
    /// keeping restricted-moment families (stable, t) well defined.
    pub flom_safety: f64,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            p_life: 0.4,
            p_intra: 0.3,
            p_inter: 0.3,
            prior_a: 1.0,
            prior_b: 1.0,
            life_proposal_var: 0.01,
            laplace_scale: 0.4,
            grid_step: 0.05,
            alpha_max_sas: 2.0,
            alpha_max_gg: 2.0,
            alpha_max_t: 5.0,
            n_iter: 5000,
            burn_in: 2500,
            flom_divisor: 10.0,
            flom_safety: 0.45,
            seed: 0,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<(), SamplerError> {
        let sum = self.p_life + self.p_intra + self.p_inter;
        if (sum - 1.0).abs() > 1e-12 || self.p_life < 0.0 || self.p_intra < 0.0 || self.p_inter < 0.0
        {
            return Err(SamplerError::Config(format!(
                "move probabilities must be non-negative and sum to 1 (got {}, {}, {})",
                self.p_life, self.p_intra, self.p_inter
            )));
        }
        if !(self.prior_a > 0.0 && self.prior_b > 0.0) {
            return Err(SamplerError::Config(
                "prior hyperparameters must be positive".into(),
            ));
        }
        if !(self.life_proposal_var > 0.0) {
            return Err(SamplerError::Config(
                "life proposal variance must be positive".into(),
            ));
        }
        if !(self.laplace_scale > 0.0) {
            return Err(SamplerError::Config(
                "laplace scale must be positive".into(),
            ));
        }
        if !(self.grid_step > 0.0) {
            return Err(SamplerError::Config("grid step must be positive".into()));
        }
        if self.alpha_max_sas > 2.0 + 1e-12 {
            return Err(SamplerError::Config(format!(
                "stable shape bound must not exceed 2, got {}",
                self.alpha_max_sas
            )));
        }
        for (name, v) in [
            ("alpha_max_sas", self.alpha_max_sas),
            ("alpha_max_gg", self.alpha_max_gg),
            ("alpha_max_t", self.alpha_max_t),
        ] {
            if !(v >= self.grid_step) {
                return Err(SamplerError::Config(format!(
                    "{name} must be at least one grid step, got {v}"
                )));
            }
        }
        if self.burn_in >= self.n_iter {
            return Err(SamplerError::Config(format!(
                "burn-in ({}) must be smaller than the iteration count ({})",
                self.burn_in, self.n_iter
            )));
        }
        if !(self.flom_divisor > 0.0) || !(self.flom_safety > 0.0 && self.flom_safety < 1.0) {
            return Err(SamplerError::Config(
                "flom divisor must be positive and safety fraction in (0, 1)".into(),
            ));
        }
        Ok(())
    }

    pub fn alpha_max(&self, family: FamilyId) -> f64 {
        match family {
            FamilyId::Sas => self.alpha_max_sas,
            FamilyId::Gg => self.alpha_max_gg,
            FamilyId::StudentT => self.alpha_max_t,
        }
    }

    pub fn grid(&self, family: FamilyId) -> AlphaGrid {
        AlphaGrid::new(self.grid_step, self.alpha_max(family))
    }
}

/// Which move an iteration attempted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    /// Pseudo-move recording the initial state at iteration 0.
    Init,
    Life,
    IntraSwitch,
    InterSwitch,
}

impl MoveKind {
    pub fn label(self) -> &'static str {
        match self {
            MoveKind::Init => "init",
            MoveKind::Life => "life",
            MoveKind::IntraSwitch => "intra",
            MoveKind::InterSwitch => "inter",
        }
    }
}

/// Outcome of one iteration's move.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub accepted: bool,
    /// Log acceptance ratio of the proposal (0 for the init pseudo-move,
    /// −∞ for proposals rejected as invalid before the accept test).
    pub log_ratio: f64,
}

/// One Markov-chain state with its cached target-density pieces.
#[derive(Debug, Clone, Copy)]
pub struct ModelState {
    pub spec: DistSpec,
    pub log_likelihood: f64,
    pub log_prior_gamma: f64,
}

impl ModelState {
    /// Recomputes the caches and checks them; used behind debug assertions.
    #[allow(dead_code)]
    pub(crate) fn caches_consistent(&self, ctx: &ChainCtx<'_>) -> bool {
        let ll = ctx.log_likelihood(&self.spec);
        let lp = inv_gamma_log_pdf(self.spec.gamma, ctx.cfg.prior_a, ctx.cfg.prior_b)
            .unwrap_or(f64::NEG_INFINITY);
        (ll - self.log_likelihood).abs() < 1e-9 && (lp - self.log_prior_gamma).abs() < 1e-9
    }
}

/// Per-iteration record of the whole run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainTrace {
    /// State after each iteration: (family, alpha, gamma). Index equals the
    /// iteration number; entry 0 is the initial state.
    pub states: Vec<(FamilyId, f64, f64)>,
    pub moves: Vec<MoveRecord>,
}

impl ChainTrace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Goodness-of-fit numbers attached to a report by the caller that owns the
/// data (see the diagnostics module).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub kl_divergence: f64,
    pub ks_score: f64,
    pub ks_p_value: f64,
}

/// Posterior summary of one chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport {
    pub modal_family: FamilyId,
    /// Post-burn-in occupancy of (stable, gg, t); sums to one.
    pub family_frequencies: [f64; 3],
    /// Posterior means conditional on the modal family.
    pub alpha_hat: f64,
    pub gamma_hat: f64,
    /// ±1 posterior standard deviation around the means.
    pub alpha_ci: (f64, f64),
    pub gamma_ci: (f64, f64),
    pub diagnostics: Option<FitDiagnostics>,
    pub config: SamplerConfig,
    pub seed: u64,
}

impl FitReport {
    pub fn fitted_spec(&self) -> Result<DistSpec, DistError> {
        DistSpec::new(self.modal_family, self.alpha_hat, self.gamma_hat)
    }
}
