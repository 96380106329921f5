//! Accuracy of the low- and high-SNR closed-form approximations in their
//! respective regimes.
//!
//! Run with: cargo run --release --example snr_asymptotics

use jacobi_capacity::capacity::{
    capacity_quadrature, default_quad_order, high_snr_approx, lower_bound, low_snr_approx,
};
use jacobi_capacity::model::{ChannelConfig, Snr};

fn main() {
    let configs = [(4, 1, 2), (8, 2, 4), (16, 4, 8)];

    println!("low-SNR regime: relative error of m_t m_r rho / m");
    println!("{:>8} {:>12} {:>12} {:>12}", "SNR dB", "m=4", "m=8", "m=16");
    for db in [-30, -25, -20, -15, -10] {
        let snr = Snr::from_db(db as f64).unwrap();
        print!("{db:>8}");
        for (m, mt, mr) in configs {
            let cfg = ChannelConfig::new(m, mt, mr).unwrap();
            let exact = capacity_quadrature(&cfg, snr, default_quad_order(&cfg)).unwrap();
            let rel = (low_snr_approx(&cfg, snr) - exact).abs() / exact;
            print!(" {rel:>12.3e}");
        }
        println!();
    }

    println!();
    println!("high-SNR regime: lower bound minus m_t ln(rho) - ln F (nats)");
    println!("{:>8} {:>12} {:>12} {:>12}", "SNR dB", "m=4", "m=8", "m=16");
    for db in [20, 30, 40, 50] {
        let snr = Snr::from_db(db as f64).unwrap();
        print!("{db:>8}");
        for (m, mt, mr) in configs {
            let cfg = ChannelConfig::new(m, mt, mr).unwrap();
            let gap = lower_bound(&cfg, snr) - high_snr_approx(&cfg, snr).unwrap();
            print!(" {gap:>12.3e}");
        }
        println!();
    }
    println!();
    println!("The low-SNR form tightens as the SNR falls (and as m grows);");
    println!("the high-SNR form merges with the lower bound as the SNR rises.");
}
