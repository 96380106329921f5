//! Every capacity quantity at a single operating point.
//!
//! Run with: cargo run --release --example capacity_point

use jacobi_capacity::capacity::{
    capacity_monte_carlo, capacity_quadrature, default_quad_order, high_snr_approx, lower_bound,
    low_snr_approx, upper_bound,
};
use jacobi_capacity::model::{nats_to_bits, ChannelConfig, Snr};

fn main() {
    let cfg = ChannelConfig::new(6, 2, 2).unwrap();
    let snr = Snr::from_db(10.0).unwrap();

    println!("channel {cfg}, SNR {:.1} dB (rho = {})", snr.db(), snr.linear());
    println!();

    let order = default_quad_order(&cfg);
    let exact = capacity_quadrature(&cfg, snr, order).unwrap();
    let mc = capacity_monte_carlo(&cfg, snr, 20_000, 42).unwrap();

    let rows = [
        ("lower bound", lower_bound(&cfg, snr)),
        ("exact (quadrature)", exact),
        ("upper bound", upper_bound(&cfg, snr)),
        ("low-SNR approximation", low_snr_approx(&cfg, snr)),
        ("high-SNR approximation", high_snr_approx(&cfg, snr).unwrap()),
    ];
    println!("{:<24} {:>12} {:>12}", "quantity", "nats/use", "bits/use");
    for (name, nats) in rows {
        println!("{name:<24} {nats:>12.6} {:>12.6}", nats_to_bits(nats));
    }
    println!(
        "{:<24} {:>12.6} {:>12.6}   (+- {:.6}, {} trials)",
        "Monte Carlo",
        mc.mean,
        nats_to_bits(mc.mean),
        mc.std_error,
        mc.trials
    );
    println!();
    println!(
        "Monte Carlo sits {:.2} standard errors from the quadrature value.",
        (mc.mean - exact).abs() / mc.std_error
    );
}
