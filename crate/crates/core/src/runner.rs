//! Multi-chain orchestration: seed derivation, parallel execution,
//! aggregation across chains, and diagnostics attachment.

use crate::diagnostics::{histogram, kl_divergence, ks_two_sample, Histogram, KsResult};
use crate::distributions::{DistSpec, FamilyId};
use crate::sampler::{
    run_chain, summarize, ChainTrace, FitDiagnostics, FitReport, SamplerConfig, SamplerError,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Run-level options on top of the sampler configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Number of independent chains.
    pub chains: usize,
    /// Worker-thread cap; 0 means one thread per available core.
    pub jobs: usize,
    /// Histogram bin count for the KL diagnostic.
    pub bins: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            chains: 40,
            jobs: 0,
            bins: 100,
        }
    }
}

/// The random stream of chain `index` under a base seed: one ChaCha key per
/// run, one stream id per purpose. Streams 0..2³² are chains; the upper
/// ranges serve the per-chain and aggregate diagnostics draws.
pub fn chain_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn chain_diag_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((1 << 32) + index);
    rng
}

fn aggregate_diag_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1 << 33);
    rng
}

/// Cross-chain consensus: plurality family vote with conditional means over
/// the agreeing chains.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AggregateReport {
    pub family: FamilyId,
    /// How many chains voted for each of (stable, gg, t).
    pub family_votes: [usize; 3],
    pub alpha_hat: f64,
    pub gamma_hat: f64,
    pub diagnostics: FitDiagnostics,
}

impl AggregateReport {
    pub fn fitted_spec(&self) -> DistSpec {
        DistSpec::new(self.family, self.alpha_hat, self.gamma_hat)
            .expect("aggregate parameters are grid-bounded")
    }
}

/// Everything a fit run produces in memory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunOutcome {
    pub per_chain: Vec<FitReport>,
    pub aggregate: AggregateReport,
    pub histogram: Histogram,
    /// Traces in chain order (always collected; the caller decides whether
    /// to persist them).
    #[serde(skip)]
    pub traces: Vec<ChainTrace>,
}

/// Runs `options.chains` chains over the data and reduces them by chain
/// index, so the thread count never affects the result.
pub fn fit_data(
    data: &[f64],
    cfg: &SamplerConfig,
    options: &RunOptions,
) -> Result<RunOutcome, SamplerError> {
    cfg.validate()?;
    if options.chains == 0 {
        return Err(SamplerError::Config("need at least one chain".into()));
    }
    let run_one = |idx: usize| -> Result<(ChainTrace, FitReport), SamplerError> {
        let mut rng = chain_rng(cfg.seed, idx as u64);
        let trace = run_chain(data, cfg, &mut rng)?;
        let mut report = summarize(&trace, cfg);
        let spec = report.fitted_spec()?;
        let mut diag_rng = chain_diag_rng(cfg.seed, idx as u64);
        report.diagnostics = Some(compute_diagnostics(
            data,
            &spec,
            options.bins,
            &mut diag_rng,
        )?);
        Ok((trace, report))
    };
    let results: Result<Vec<_>, SamplerError> = if options.jobs == 1 {
        (0..options.chains).map(run_one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| SamplerError::Config(e.to_string()))?;
        pool.install(|| (0..options.chains).into_par_iter().map(run_one).collect())
    };
    let (traces, per_chain): (Vec<_>, Vec<_>) = results?.into_iter().unzip();

    let mut family_votes = [0usize; 3];
    for r in &per_chain {
        family_votes[(r.modal_family.code() - 1) as usize] += 1;
    }
    // Plurality vote, ties broken toward the smaller family code.
    let family = FamilyId::ALL[(0..3)
        .max_by(|&a, &b| family_votes[a].cmp(&family_votes[b]).then(b.cmp(&a)))
        .unwrap()];
    let agreeing: Vec<&FitReport> = per_chain
        .iter()
        .filter(|r| r.modal_family == family)
        .collect();
    let alpha_hat = agreeing.iter().map(|r| r.alpha_hat).sum::<f64>() / agreeing.len() as f64;
    let gamma_hat = agreeing.iter().map(|r| r.gamma_hat).sum::<f64>() / agreeing.len() as f64;
    let spec = DistSpec::new(family, alpha_hat, gamma_hat)?;
    let diagnostics =
        compute_diagnostics(data, &spec, options.bins, &mut aggregate_diag_rng(cfg.seed))?;
    let hist = histogram(data, options.bins)?;
    Ok(RunOutcome {
        per_chain,
        aggregate: AggregateReport {
            family,
            family_votes,
            alpha_hat,
            gamma_hat,
            diagnostics,
        },
        histogram: hist,
        traces,
    })
}

/// KL against the data histogram plus a two-sample KS with a model draw the
/// same size as the data.
pub fn compute_diagnostics<R: rand::Rng + ?Sized>(
    data: &[f64],
    spec: &DistSpec,
    bins: usize,
    rng: &mut R,
) -> Result<FitDiagnostics, SamplerError> {
    let hist = histogram(data, bins)?;
    let kl = kl_divergence(&hist, spec);
    let ks: KsResult = ks_two_sample(data, spec, data.len(), rng)?;
    Ok(FitDiagnostics {
        kl_divergence: kl,
        ks_score: ks.score,
        ks_p_value: ks.p_value,
    })
}
