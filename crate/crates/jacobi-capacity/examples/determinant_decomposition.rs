//! The log-determinant of the channel Gram matrix equals (in distribution)
//! a sum of independent log-beta variates, and its mean is a digamma sum.
//!
//! Run with: cargo run --release --example determinant_decomposition

use jacobi_capacity::capacity::expected_logdet;
use jacobi_capacity::linalg::cholesky_logdet;
use jacobi_capacity::model::ChannelConfig;
use jacobi_capacity::randmat::{sample_channel, sample_logdet_beta_product, RngStream};

fn stats(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var, (var / n).sqrt())
}

fn main() {
    let trials = 20_000u64;
    for (m, mt, mr) in [(6, 2, 2), (8, 3, 3)] {
        let cfg = ChannelConfig::new(m, mt, mr).unwrap();
        let haar: Vec<f64> = (0..trials)
            .map(|t| {
                let h = sample_channel(&cfg, RngStream::new(1, t)).unwrap();
                cholesky_logdet(&h.gram()).unwrap()
            })
            .collect();
        let beta: Vec<f64> = (0..trials)
            .map(|t| sample_logdet_beta_product(&cfg, RngStream::new(2, t)).unwrap())
            .collect();
        let (hm, hv, hse) = stats(&haar);
        let (bm, bv, bse) = stats(&beta);
        let exact = expected_logdet(&cfg).unwrap();

        println!("channel {cfg}  ({trials} draws per route)");
        println!("  E[ln det]  sampled Gram  {hm:>9.4} +- {hse:.4}");
        println!("             beta product  {bm:>9.4} +- {bse:.4}");
        println!("             digamma sum   {exact:>9.4}");
        println!("  Var        sampled Gram  {hv:>9.4}");
        println!("             beta product  {bv:>9.4}");
        println!();
    }
}
