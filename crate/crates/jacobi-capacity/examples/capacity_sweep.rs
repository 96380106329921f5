//! Capacity sweep over an SNR grid, emitted as CSV on stdout.
//!
//! Run with: cargo run --release --example capacity_sweep

use std::io::{self, Write};

use jacobi_capacity::capacity::SnrGrid;
use jacobi_capacity::cli::{run_sweep, RunOptions};
use jacobi_capacity::model::ChannelConfig;

fn main() {
    let cfg = ChannelConfig::new(16, 4, 10).unwrap();
    let grid = SnrGrid::new(-10.0, 30.0, 5.0).unwrap();
    let opts = RunOptions {
        trials: 5_000,
        seed: 42,
        ..Default::default()
    };
    run_sweep(&cfg, &grid, &opts, &mut io::stdout())
        .and_then(|()| Ok(io::stdout().flush()?))
        .expect("sweep");
}
