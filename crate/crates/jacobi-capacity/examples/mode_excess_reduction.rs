//! Channels with m_t + m_r > m: part of the capacity is deterministic
//! (eigenvalues pinned at 1) and the remainder reduces to a smaller
//! canonical channel.
//!
//! Run with: cargo run --release --example mode_excess_reduction

use jacobi_capacity::capacity::{
    capacity_monte_carlo, capacity_quadrature, default_quad_order,
};
use jacobi_capacity::model::{canonicalize, ChannelConfig, Snr};

fn main() {
    let snr = Snr::from_linear(10.0).unwrap();
    for (m, mt, mr) in [(4, 3, 3), (6, 5, 4), (64, 40, 40), (2, 2, 2)] {
        let cfg = ChannelConfig::new(m, mt, mr).unwrap();
        let canon = canonicalize(&cfg);
        print!("{cfg}: {} eigenvalue(s) pinned at 1", canon.pinned);
        match canon.reduced {
            Some(red) => println!(", remainder {red}"),
            None => println!(", nothing left (pure unitary channel)"),
        }

        let pinned_part = canon.pinned_capacity(snr);
        let reduced_part = match canon.reduced {
            Some(red) => capacity_quadrature(&red, snr, default_quad_order(&red)).unwrap(),
            None => 0.0,
        };
        // The Monte Carlo route samples the original (un-reduced) block, so
        // the identity below is a genuine cross-check, not bookkeeping.
        let mc = capacity_monte_carlo(&cfg, snr, 10_000, 42).unwrap();
        println!(
            "  pinned {pinned_part:.5} + reduced {reduced_part:.5} = {:.5} nats",
            pinned_part + reduced_part
        );
        println!(
            "  Monte Carlo on the full block: {:.5} +- {:.5} nats  (z = {:.2})",
            mc.mean,
            mc.std_error,
            if mc.std_error > 0.0 {
                (mc.mean - pinned_part - reduced_part).abs() / mc.std_error
            } else {
                0.0
            }
        );
        println!();
    }
}
