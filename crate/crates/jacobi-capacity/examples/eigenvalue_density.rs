//! The marginal eigenvalue density of the channel Gram matrix: tabulated
//! values, the m_r/m mean law, and agreement with a sampled histogram.
//!
//! Run with: cargo run --release --example eigenvalue_density

use jacobi_capacity::density::marginal_density;
use jacobi_capacity::linalg::hermitian_eigenvalues;
use jacobi_capacity::model::{jacobi_params, ChannelConfig};
use jacobi_capacity::randmat::{sample_channel, RngStream};
use jacobi_capacity::specfun::gauss_legendre;

fn main() {
    let cfg = ChannelConfig::new(6, 2, 2).unwrap();
    let p = jacobi_params(&cfg).unwrap();
    println!("channel {cfg}: weight exponents a = {}, b = {}, n = {}", p.a, p.b, p.n);
    println!();

    // Moments straight from the density.
    let rule = gauss_legendre(64).unwrap();
    let total = rule.integrate(0.0, 1.0, |l| marginal_density(l, &p));
    let mean = rule.integrate(0.0, 1.0, |l| l * marginal_density(l, &p));
    println!("integral of f       = {total:.12}   (must be 1)");
    println!("integral of l f     = {mean:.12}   (law:  m_r/m = {:.12})", 1.0 / 3.0);
    println!();

    // Histogram from sampled Gram matrices against binned density mass.
    let bins = 10;
    let trials = 20_000u64;
    let mut counts = vec![0usize; bins];
    for t in 0..trials {
        let h = sample_channel(&cfg, RngStream::new(42, t)).unwrap();
        for v in hermitian_eigenvalues(&h.gram()).unwrap() {
            let idx = ((v.clamp(0.0, 1.0)) * bins as f64).min(bins as f64 - 1.0) as usize;
            counts[idx] += 1;
        }
    }
    let total_eigs = (trials * p.n as u64) as f64;
    println!("{:>14} {:>12} {:>12}", "bin", "sampled", "density");
    for (i, &c) in counts.iter().enumerate() {
        let lo = i as f64 / bins as f64;
        let hi = (i + 1) as f64 / bins as f64;
        let prob = rule.integrate(lo, hi, |l| marginal_density(l, &p));
        println!(
            "[{lo:.2}, {hi:.2}) {:>12.5} {prob:>12.5}",
            c as f64 / total_eigs
        );
    }
}
