//! The value-statistics pipeline in miniature: sampled sweeps of
//! log |L(1/2 + sigma0)| across several degrees, moments against the
//! Gaussian reference, and Kolmogorov-Smirnov distances.
//!
//! Run with: cargo run --release --example clt_pipeline

use hyperzeta::stats::{clt_report, min_theta_fraction, moment_suite, Statistic};
use hyperzeta::sweep::{sample_in_memory, RunConfig, DEFAULT_BUDGET};

fn main() {
    let mut samples = Vec::new();
    for n in [9u32, 11, 13] {
        let cfg = RunConfig {
            p: 3,
            e: 1,
            n,
            full: false,
            samples: 20_000,
            seed: 1,
            x: (n as f64).sqrt().floor() as u32,
            c: None,
            threads: 0,
            budget: DEFAULT_BUDGET,
        };
        println!("sweeping n = {n} ({} samples requested)...", cfg.samples);
        samples.push(sample_in_memory(&cfg).unwrap());
    }

    let report = clt_report(&samples).unwrap();
    println!(
        "\n{:>3} {:>7} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9}",
        "n", "count", "mean", "var", "skew", "exkurt", "KS(deg)", "KS(cut)"
    );
    for r in &report.rows {
        println!(
            "{:>3} {:>7} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>9.4} {:>9.4}",
            r.n, r.count, r.mean_log_l, r.var_log_l, r.skewness, r.excess_kurtosis,
            r.ks_degree, r.ks_cutoff
        );
    }

    println!("\ncentered prime-power sum moments at n = 13 (Gaussian reference, v = ln X):");
    let table = moment_suite(&samples[2], Statistic::PTildeCentered, 6).unwrap();
    for row in &table.rows {
        println!(
            "  k={}  empirical {:+.4}  reference {:+.4}  se {:.4}",
            row.k, row.empirical, row.reference, row.stderr
        );
    }

    println!("\nlow-zero fractions at n = 13:");
    for y in [1.0, 2.0, 4.0] {
        println!(
            "  fraction with min|theta| < 1/(y delta) at y={y}: {:.4}",
            min_theta_fraction(&samples[2], y)
        );
    }
}
