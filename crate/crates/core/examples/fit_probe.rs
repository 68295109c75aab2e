// scratch probe: synthetic recovery across the six reference rows (dev tool)
use impulsefit::distributions::{sample, DistSpec, FamilyId};
use impulsefit::sampler::{run_chain, summarize, SamplerConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let rows = [
        (FamilyId::Sas, 1.0, 0.75),
        (FamilyId::Sas, 1.5, 2.0),
        (FamilyId::Gg, 0.5, 0.5),
        (FamilyId::Gg, 1.7, 1.4),
        (FamilyId::StudentT, 3.0, 1.0),
        (FamilyId::StudentT, 0.6, 3.0),
    ];
    for (family, alpha, gamma) in rows {
        let start = Instant::now();
        let truth = DistSpec::new(family, alpha, gamma).unwrap();
        let data = sample(&truth, 1000, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let cfg = SamplerConfig::default();
        let mut modal_counts = [0usize; 3];
        let mut a_hats = Vec::new();
        let mut g_hats = Vec::new();
        for chain in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            rng.set_stream(chain + 1);
            let trace = run_chain(&data, &cfg, &mut rng).unwrap();
            let rep = summarize(&trace, &cfg);
            modal_counts[(rep.modal_family.code() - 1) as usize] += 1;
            a_hats.push((rep.modal_family, rep.alpha_hat));
            g_hats.push(rep.gamma_hat);
        }
        let vote = (0..3).max_by_key(|&i| modal_counts[i]).unwrap();
        let vote_family = FamilyId::ALL[vote];
        let pooled_a: Vec<f64> = a_hats.iter().filter(|(f, _)| *f == vote_family).map(|(_, a)| *a).collect();
        let pooled_g: Vec<f64> = a_hats.iter().zip(&g_hats).filter(|((f, _), _)| *f == vote_family).map(|(_, g)| *g).collect();
        let a_mean = pooled_a.iter().sum::<f64>() / pooled_a.len() as f64;
        let g_mean = pooled_g.iter().sum::<f64>() / pooled_g.len() as f64;
        println!(
            "{:?}({}, {}): votes={:?} -> {:?}, alpha_hat={:.4} (true {}), gamma_hat={:.4} (true {}), {:.1}s",
            family, alpha, gamma, modal_counts, vote_family, a_mean, alpha, g_mean, gamma,
            start.elapsed().as_secs_f64()
        );
    }
}
