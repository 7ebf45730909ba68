//! Zeros on the critical circle: eigenphases, the circle residual, and
//! the log-derivative computed from zeros vs the Dirichlet series.
//!
//! Run with: cargo run --release --example eigenphases

use hyperzeta::field::field_create;
use hyperzeta::lpoly::{LData, LVariant};
use hyperzeta::poly::parse_poly;
use num_complex::Complex64;

fn main() {
    let f = field_create(3, 1, None).unwrap();
    let d = parse_poly(&f, "t^7+t^3+t+1").unwrap();
    assert!(d.is_squarefree().unwrap());
    let ld = LData::powersum(&d).unwrap();
    let phases = ld.eigenphases().unwrap();

    println!("D = {d}, genus {}", ld.delta());
    println!("eigenphases (cycles), zeros at u = q^(-1/2) e(theta):");
    for &th in &phases.thetas {
        println!("  theta = {th:+.12}");
    }
    println!("worst circle residual: {:.3e}", phases.residual);
    println!("min |theta| = {:.6}", phases.min_abs_theta());

    // the trivial zero shows up exactly when d(D) is even
    let even = parse_poly(&f, "t^4+t+1").unwrap();
    let le = LData::charsum(&even).unwrap();
    let at_one = le.eval_u(Complex64::new(1.0, 0.0), LVariant::Full);
    println!("\nL(u=1) for even-degree D = {even}: {at_one} (trivial zero)");

    // two routes to L'/L agree far to the right
    let s = Complex64::new(2.0, 0.0);
    let zeros = ld.log_derivative_zeros(&phases, s).unwrap();
    let series = ld.log_derivative_dirichlet(s, 30).unwrap();
    println!("\nL'/L(2) from zeros:  {zeros:.12}");
    println!("L'/L(2) from series: {series:.12}");
}
