// scratch probe: grid MLE per family on problem datasets (dev tool)
use impulsefit::distributions::{log_likelihood, sample, DistSpec, FamilyId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid_mle(data: &[f64], family: FamilyId, amax: f64) -> (f64, f64, f64) {
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for ai in 0..((amax / 0.05 + 1e-9) as usize) {
        let a = (0.05 * (ai + 1) as f64).min(amax);
        // log-spaced gamma sweep
        for gi in 0..160 {
            let g = (0.02f64.ln() + (50.0f64 / 0.02).ln() * gi as f64 / 159.0).exp();
            let spec = DistSpec::new(family, a, g).unwrap();
            let ll = log_likelihood(&spec, data).unwrap();
            if ll > best.0 {
                best = (ll, a, g);
            }
        }
    }
    best
}

fn main() {
    for (family, alpha, gamma) in [
        (FamilyId::Gg, 0.5, 0.5),
        (FamilyId::StudentT, 3.0, 1.0),
        (FamilyId::StudentT, 0.6, 3.0),
    ] {
        let truth = DistSpec::new(family, alpha, gamma).unwrap();
        let data = sample(&truth, 1000, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        println!("--- data from {:?}({}, {})", family, alpha, gamma);
        for (fam, cap) in [
            (FamilyId::Sas, 2.0),
            (FamilyId::Gg, 2.0),
            (FamilyId::StudentT, 5.0),
        ] {
            let (ll, a, g) = grid_mle(&data, fam, cap);
            println!("  {:?}: max ll={:.2} at alpha={:.2} gamma={:.3}", fam, ll, a, g);
        }
    }
}
