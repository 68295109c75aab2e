//! Chain driver and posterior summarization.

use super::moves::{step_inter, step_intra, step_life};
use super::{ChainTrace, FitReport, MoveKind, MoveRecord, SamplerConfig, SamplerError};
use crate::distributions::{self, DistSpec, FamilyId};
use rand::Rng;

/// How the chain scores a state against the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LikelihoodMode {
    /// Ordinary data likelihood.
    Data,
    /// Constant (zero) log-likelihood; the chain then samples the prior,
    /// which is the standard smoke test for move correctness.
    Constant,
}

/// Everything a move needs besides the state and the random stream.
pub struct ChainCtx<'a> {
    pub data: &'a [f64],
    pub cfg: &'a SamplerConfig,
    pub mode: LikelihoodMode,
}

impl ChainCtx<'_> {
    pub fn log_likelihood(&self, spec: &DistSpec) -> f64 {
        match self.mode {
            LikelihoodMode::Data => distributions::log_likelihood(spec, self.data)
                .unwrap_or(f64::NEG_INFINITY),
            LikelihoodMode::Constant => 0.0,
        }
    }
}

/// Interquartile range with linearly interpolated quantiles.
fn interquartile_range(data: &[f64]) -> f64 {
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| {
        let h = (sorted.len() - 1) as f64 * p;
        let lo = h.floor() as usize;
        let frac = h - lo as f64;
        if lo + 1 < sorted.len() {
            sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
        } else {
            sorted[lo]
        }
    };
    q(0.75) - q(0.25)
}

/// Runs one chain over the data. The trace has `cfg.n_iter` entries; entry 0
/// records the initial state (GG, shape 2, scale = half the interquartile
/// range).
pub fn run_chain<R: Rng + ?Sized>(
    data: &[f64],
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<ChainTrace, SamplerError> {
    run_chain_with_mode(data, cfg, rng, LikelihoodMode::Data)
}

/// [`run_chain`] with an explicit likelihood mode; `Constant` turns the run
/// into a prior-only chain.
pub fn run_chain_with_mode<R: Rng + ?Sized>(
    data: &[f64],
    cfg: &SamplerConfig,
    rng: &mut R,
    mode: LikelihoodMode,
) -> Result<ChainTrace, SamplerError> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(distributions::DistError::EmptyData.into());
    }
    if let Some(&bad) = data.iter().find(|x| !x.is_finite()) {
        return Err(distributions::DistError::NonFiniteInput(bad).into());
    }
    let gamma0 = interquartile_range(data) / 2.0;
    if !(gamma0 > 0.0) {
        return Err(SamplerError::DegenerateData);
    }
    let ctx = ChainCtx { data, cfg, mode };
    let gg_grid = cfg.grid(FamilyId::Gg);
    let alpha0 = match gg_grid.snap(2.0) {
        Some(idx) => gg_grid.value(idx),
        None => gg_grid.max_value(),
    };
    let mut state = ctx
        .make_state(DistSpec::new(FamilyId::Gg, alpha0, gamma0)?)
        .map_err(|e| SamplerError::Config(e.to_string()))?;

    let mut states = Vec::with_capacity(cfg.n_iter);
    let mut moves = Vec::with_capacity(cfg.n_iter);
    states.push((state.spec.family, state.spec.alpha, state.spec.gamma));
    moves.push(MoveRecord {
        kind: MoveKind::Init,
        accepted: true,
        log_ratio: 0.0,
    });

    for iter in 1..cfg.n_iter {
        let u: f64 = rng.gen();
        let (next, record) = if u < cfg.p_life {
            step_life(&state, &ctx, rng)
        } else if u < cfg.p_life + cfg.p_intra {
            step_intra(&state, &ctx, rng)
        } else {
            step_inter(&state, &ctx, rng)
        };
        state = next;
        if iter % 97 == 0 {
            debug_assert!(state.caches_consistent(&ctx), "stale state caches");
        }
        states.push((state.spec.family, state.spec.alpha, state.spec.gamma));
        moves.push(record);
    }
    Ok(ChainTrace { states, moves })
}

/// Posterior summary after burn-in: modal family, conditional means and ±1
/// standard-deviation intervals. Diagnostics are left for the caller that
/// owns the data.
pub fn summarize(trace: &ChainTrace, cfg: &SamplerConfig) -> FitReport {
    assert!(!trace.is_empty(), "cannot summarize an empty trace");
    let kept = &trace.states[cfg.burn_in.min(trace.len() - 1)..];
    let mut counts = [0usize; 3];
    for (family, _, _) in kept {
        counts[(family.code() - 1) as usize] += 1;
    }
    let total = kept.len() as f64;
    let family_frequencies = [
        counts[0] as f64 / total,
        counts[1] as f64 / total,
        counts[2] as f64 / total,
    ];
    let modal_family = FamilyId::ALL[counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .unwrap()];
    let (mut a_mean, mut g_mean, mut n) = (0.0, 0.0, 0.0);
    for (family, alpha, gamma) in kept {
        if *family == modal_family {
            a_mean += alpha;
            g_mean += gamma;
            n += 1.0;
        }
    }
    a_mean /= n;
    g_mean /= n;
    let (mut a_var, mut g_var) = (0.0, 0.0);
    for (family, alpha, gamma) in kept {
        if *family == modal_family {
            a_var += (alpha - a_mean).powi(2);
            g_var += (gamma - g_mean).powi(2);
        }
    }
    let denom = (n - 1.0).max(1.0);
    let a_std = (a_var / denom).sqrt();
    let g_std = (g_var / denom).sqrt();
    FitReport {
        modal_family,
        family_frequencies,
        alpha_hat: a_mean,
        gamma_hat: g_mean,
        alpha_ci: (a_mean - a_std, a_mean + a_std),
        gamma_ci: (g_mean - g_std, g_mean + g_std),
        diagnostics: None,
        config: cfg.clone(),
        seed: cfg.seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_cfg() -> SamplerConfig {
        SamplerConfig {
            n_iter: 400,
            burn_in: 200,
            ..SamplerConfig::default()
        }
    }

    #[test]
    fn trace_shape_and_initial_state() {
        let cfg = small_cfg();
        let data: Vec<f64> = (0..100).map(|i| (i as f64 - 50.0) / 10.0).collect();
        let trace = run_chain(&data, &cfg, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(trace.len(), cfg.n_iter);
        assert_eq!(trace.moves.len(), cfg.n_iter);
        let (family, alpha, gamma) = trace.states[0];
        assert_eq!(family, FamilyId::Gg);
        assert!((alpha - 2.0).abs() < 1e-12);
        // IQR of the uniform ramp is half its span; gamma0 = IQR/2.
        let expected = interquartile_range(&data) / 2.0;
        assert!((gamma - expected).abs() < 1e-12);
        assert_eq!(trace.moves[0].kind, MoveKind::Init);
    }

    #[test]
    fn states_change_only_on_acceptance() {
        let cfg = small_cfg();
        let data: Vec<f64> = (0..60).map(|i| ((i * 37 + 11) % 101) as f64 / 9.0 - 5.0).collect();
        let trace = run_chain(&data, &cfg, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        for i in 1..trace.len() {
            if !trace.moves[i].accepted {
                assert_eq!(trace.states[i], trace.states[i - 1], "iteration {i}");
            }
        }
    }

    #[test]
    fn seeded_runs_are_bit_identical() {
        let cfg = small_cfg();
        let data: Vec<f64> = (0..64).map(|i| ((i * 53 + 7) % 97) as f64 / 7.0 - 6.0).collect();
        let a = run_chain(&data, &cfg, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = run_chain(&data, &cfg, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        for (x, y) in a.states.iter().zip(&b.states) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1.to_bits(), y.1.to_bits());
            assert_eq!(x.2.to_bits(), y.2.to_bits());
        }
    }

    #[test]
    fn degenerate_data_is_rejected() {
        let cfg = small_cfg();
        let constant = vec![3.0; 50];
        assert!(matches!(
            run_chain(&constant, &cfg, &mut ChaCha8Rng::seed_from_u64(0)),
            Err(SamplerError::DegenerateData)
        ));
        assert!(run_chain(&[], &cfg, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        assert!(run_chain(&[1.0, f64::NAN], &cfg, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn summarize_constant_trace() {
        let cfg = small_cfg();
        let n = cfg.n_iter;
        let trace = ChainTrace {
            states: vec![(FamilyId::StudentT, 3.0, 1.0); n],
            moves: vec![
                MoveRecord {
                    kind: MoveKind::Life,
                    accepted: false,
                    log_ratio: -1.0,
                };
                n
            ],
        };
        let report = summarize(&trace, &cfg);
        assert_eq!(report.modal_family, FamilyId::StudentT);
        assert!((report.alpha_hat - 3.0).abs() < 1e-15);
        assert!((report.gamma_hat - 1.0).abs() < 1e-15);
        assert_eq!(report.alpha_ci.0, report.alpha_ci.1);
        assert_eq!(report.family_frequencies, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn summarize_hand_counted_frequencies() {
        let cfg = SamplerConfig {
            n_iter: 10,
            burn_in: 0,
            ..SamplerConfig::default()
        };
        let fams = [
            FamilyId::Sas,
            FamilyId::Sas,
            FamilyId::Gg,
            FamilyId::StudentT,
            FamilyId::Sas,
            FamilyId::Gg,
            FamilyId::Sas,
            FamilyId::Sas,
            FamilyId::StudentT,
            FamilyId::Sas,
        ];
        let trace = ChainTrace {
            states: fams.iter().map(|&f| (f, 1.0, 1.0)).collect(),
            moves: vec![
                MoveRecord {
                    kind: MoveKind::Init,
                    accepted: true,
                    log_ratio: 0.0,
                };
                10
            ],
        };
        let report = summarize(&trace, &cfg);
        assert_eq!(report.modal_family, FamilyId::Sas);
        assert_eq!(report.family_frequencies, [0.6, 0.2, 0.2]);
        let sum: f64 = report.family_frequencies.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }
}
