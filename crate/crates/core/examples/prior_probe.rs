// scratch probe: prior-only chain behavior (dev tool, deleted before ship)
use impulsefit::diagnostics::ks_two_sample_from;
use impulsefit::sampler::{inv_gamma_quantile, run_chain_with_mode, LikelihoodMode, SamplerConfig};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let cfg = SamplerConfig {
        n_iter: 400_000,
        burn_in: 50_000,
        ..SamplerConfig::default()
    };
    let data: Vec<f64> = (0..100).map(|i| i as f64 / 10.0).collect();
    let mut gammas = Vec::new();
    let mut counts = [0usize; 3];
    let mut total = 0usize;
    for chain in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + chain);
        let trace = run_chain_with_mode(&data, &cfg, &mut rng, LikelihoodMode::Constant).unwrap();
        let kept = &trace.states[cfg.burn_in..];
        for (i, (f, _, g)) in kept.iter().enumerate() {
            counts[(f.code() - 1) as usize] += 1;
            total += 1;
            if i % 500 == 250 {
                gammas.push(*g);
            }
        }
    }
    println!(
        "pooled occupancy: ({:.4},{:.4},{:.4})  n_gamma={}",
        counts[0] as f64 / total as f64,
        counts[1] as f64 / total as f64,
        counts[2] as f64 / total as f64,
        gammas.len()
    );
    let mut ref_rng = ChaCha8Rng::seed_from_u64(555);
    let reference: Vec<f64> = (0..gammas.len())
        .map(|_| inv_gamma_quantile(ref_rng.gen::<f64>().clamp(1e-16, 1.0-1e-16), 1.0, 1.0))
        .collect();
    let ks = ks_two_sample_from(&gammas, &reference);
    println!("pooled gamma KS: D={:.4} p={:.4}", ks.score, ks.p_value);
}
