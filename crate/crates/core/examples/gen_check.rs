// scratch probe: generator sanity at large n (dev tool)
use impulsefit::distributions::{log_likelihood, sample, DistSpec, FamilyId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // GG(0.5, 0.5): check E|x|^0.5 = sqrt(0.5)*Gamma(4/... = gamma^0.5*Gamma(2/0.5... 
    // E|x|^p = gamma^p * Gamma((p+1)/a)/Gamma(1/a); p=0.5, a=0.5: Gamma(3)/Gamma(2) = 2
    let spec = DistSpec::new(FamilyId::Gg, 0.5, 0.5).unwrap();
    let data = sample(&spec, 1_000_000, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    let m05 = data.iter().map(|x| x.abs().sqrt()).sum::<f64>() / data.len() as f64;
    println!("GG(0.5,0.5): mean |x|^0.5 = {:.5} (expect {:.5})", m05, 0.5f64.sqrt() * 2.0);
    let m2 = data.iter().map(|x| x * x).sum::<f64>() / data.len() as f64;
    println!("GG(0.5,0.5): mean x^2 = {:.3} (expect {:.3})", m2, 0.25 * 120.0);
    // coarse MLE on 100k draws
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for ai in 0..40 {
        let a = 0.05 * (ai + 1) as f64;
        for gi in 0..200 {
            let g = (0.05f64.ln() + (5.0f64 / 0.05).ln() * gi as f64 / 199.0).exp();
            let ll = log_likelihood(&DistSpec::new(FamilyId::Gg, a, g).unwrap(), &data[..100_000]).unwrap();
            if ll > best.0 { best = (ll, a, g); }
        }
    }
    println!("GG MLE on 100k draws: alpha={:.2} gamma={:.3}", best.1, best.2);
    // t(0.6,3): multi-seed family contest at n=1000
    println!("\nt(0.6,3) family contest across data seeds:");
    for seed in 1..=12u64 {
        let truth = DistSpec::new(FamilyId::StudentT, 0.6, 3.0).unwrap();
        let d = sample(&truth, 1000, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let mut lls = Vec::new();
        for (fam, cap) in [(FamilyId::Sas, 2.0f64), (FamilyId::StudentT, 5.0)] {
            let mut best = f64::NEG_INFINITY;
            for ai in 0..((cap / 0.05) as usize) {
                let a = 0.05 * (ai + 1) as f64;
                for gi in 0..150 {
                    let g = (0.3f64.ln() + (30.0f64 / 0.3).ln() * gi as f64 / 149.0).exp();
                    let ll = log_likelihood(&DistSpec::new(fam, a, g).unwrap(), &d).unwrap();
                    if ll > best { best = ll; }
                }
            }
            lls.push(best);
        }
        println!("  seed {seed:>2}: ll_sas={:.2} ll_t={:.2}  t-edge={:+.2}", lls[0], lls[1], lls[1] - lls[0]);
    }
}
