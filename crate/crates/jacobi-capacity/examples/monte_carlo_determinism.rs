//! Monte Carlo reproducibility: trial t always draws from substream t of
//! the seed, so estimates are bit-identical across runs and across thread
//! counts, and the standard error shrinks like 1/sqrt(trials).
//!
//! Run with: cargo run --release --example monte_carlo_determinism

use jacobi_capacity::capacity::capacity_monte_carlo;
use jacobi_capacity::model::{ChannelConfig, Snr};

fn main() {
    let cfg = ChannelConfig::new(6, 2, 2).unwrap();
    let snr = Snr::from_db(10.0).unwrap();

    println!("standard error vs trial count (seed 42):");
    println!("{:>9} {:>12} {:>12}", "trials", "mean", "std error");
    for trials in [100, 1_000, 10_000, 100_000] {
        let est = capacity_monte_carlo(&cfg, snr, trials, 42).unwrap();
        println!("{trials:>9} {:>12.6} {:>12.6}", est.mean, est.std_error);
    }

    println!();
    let serial = {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        pool.install(|| capacity_monte_carlo(&cfg, snr, 10_000, 42).unwrap())
    };
    let parallel = {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap();
        pool.install(|| capacity_monte_carlo(&cfg, snr, 10_000, 42).unwrap())
    };
    println!("1 worker : mean = {:.17}", serial.mean);
    println!("2 workers: mean = {:.17}", parallel.mean);
    println!(
        "bit-identical: {}",
        serial.mean.to_bits() == parallel.mean.to_bits()
            && serial.std_error.to_bits() == parallel.std_error.to_bits()
    );
}
