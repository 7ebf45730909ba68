//! The exact analytic identities: the residue identity for -L'/L, the
//! closed form for the difference of logs at 1/2 and 1/2 + sigma0, and
//! the nonnegative slack of the upper bound.
//!
//! Run with: cargo run --release --example log_identities

use hyperzeta::family::sample_squarefree;
use hyperzeta::field::field_create;
use hyperzeta::lpoly::LData;
use hyperzeta::selberg::{residue_identity, seven_inequality, six_identity, CutoffPolicy};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn main() {
    let f = field_create(3, 1, None).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(8);

    println!("residue identity -L'/L(s) = weighted prime sum + residue bracket:");
    for _ in 0..3 {
        let d = sample_squarefree(&f, 9, &mut rng).unwrap();
        let ld = LData::powersum(&d).unwrap();
        let ph = ld.eigenphases().unwrap();
        for x in [2u32, 3] {
            let policy = CutoffPolicy::with_default_c(3, x).unwrap();
            let s = Complex64::new(0.5 + policy.sigma0(), 0.0);
            let (lhs, rhs) = residue_identity(&ld, &ph, &policy, s).unwrap();
            println!(
                "  D = {d}, X = {x}: lhs = {:.12}, |lhs - rhs| = {:.2e}",
                lhs.re,
                (lhs - rhs).norm()
            );
        }
    }

    println!("\nlog-difference identity and upper-bound slack at n = 6:");
    let policy = CutoffPolicy::with_default_c(3, 3).unwrap();
    for _ in 0..4 {
        let d = sample_squarefree(&f, 6, &mut rng).unwrap();
        let ld = LData::powersum(&d).unwrap();
        if ld.central_value().unwrap().vanishing {
            continue;
        }
        let ph = ld.eigenphases().unwrap();
        let (lhs, rhs) = six_identity(&ld, &ph, &policy).unwrap();
        let slack = seven_inequality(&ld, &policy).unwrap();
        println!(
            "  D = {d}: log|L(1/2+s0)|-log|L(1/2)| = {lhs:+.8} (identity err {:.1e}), slack = {slack:.6}",
            (lhs - rhs).abs()
        );
    }
}
