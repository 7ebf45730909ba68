//! One-level density of scaled low-lying eigenphases against the
//! symplectic kernel W(Sp)(x) = 1 - sin(2 pi x)/(2 pi x).
//!
//! Run with: cargo run --release --example one_level_density

use hyperzeta::stats::{
    density_histogram, one_level_density, TestFunction, ZeroNormalization,
};
use hyperzeta::sweep::{sample_in_memory, RunConfig, DEFAULT_BUDGET};

fn main() {
    let cfg = RunConfig {
        p: 3,
        e: 1,
        n: 9,
        full: true,
        samples: 0,
        seed: 0,
        x: 3,
        c: None,
        threads: 0,
        budget: DEFAULT_BUDGET,
    };
    println!("exhaustive sweep over H_9 (13122 records)...");
    let sample = sample_in_memory(&cfg).unwrap();

    let bump = TestFunction::GaussianBump { scale: 1.0 };
    for (name, norm) in [
        ("2*delta*theta", ZeroNormalization::TwoDeltaTheta),
        ("delta*theta  ", ZeroNormalization::DeltaTheta),
    ] {
        let (emp, pred) = one_level_density(&sample, &bump, norm);
        println!(
            "unit-mass Gaussian bump, {name}: empirical {emp:.5}, predicted {pred:.5}, |diff| {:.5}",
            (emp - pred).abs()
        );
    }

    println!("\nscaled-zero density vs W(Sp), mean-spacing normalization:");
    println!("{:>7} {:>10} {:>10}", "x", "empirical", "W(Sp)");
    for (lo, hi, _, dens, w) in density_histogram(&sample, ZeroNormalization::TwoDeltaTheta, 3.0, 24)
    {
        println!("{:>7.3} {dens:>10.4} {w:>10.4}", 0.5 * (lo + hi));
    }
}
