//! Quadratic residue symbols: the Euclidean fast path, the factoring
//! oracle, and the reciprocity law.
//!
//! Run with: cargo run --release --example reciprocity

use hyperzeta::char::{residue_symbol, CharacterHandle};
use hyperzeta::family::{FamilyCursor, FamilyKind};
use hyperzeta::field::field_create;
use hyperzeta::poly::parse_poly;

fn main() {
    let f = field_create(3, 1, None).unwrap();
    let d = parse_poly(&f, "t^3+2t+1").unwrap();
    let handle = CharacterHandle::new(d.clone()).unwrap();

    println!("chi_D for D = {d} over {f}:");
    for text in ["t", "t+1", "t+2", "t^2+1", "t^2+t+2"] {
        let g = parse_poly(&f, text).unwrap();
        println!(
            "  chi({text:<8}) = {:>2}   (oracle {:>2})",
            handle.chi(&g).unwrap(),
            handle.chi_oracle(&g).unwrap()
        );
    }

    // reciprocity: (A/B)(B/A) = (-1)^{((q-1)/2) d(A) d(B)}
    println!("\nreciprocity on coprime monic pairs over F_3:");
    let a = parse_poly(&f, "t^2+1").unwrap();
    let b = parse_poly(&f, "t^3+2t+1").unwrap();
    let lhs = residue_symbol(&a, &b).unwrap() as i32 * residue_symbol(&b, &a).unwrap() as i32;
    println!("  (A/B)(B/A) = {lhs} for A = {a}, B = {b} (d(A)d(B) even exponent -> +1)");

    // multiplicativity and the full-field cancellation
    let mut sum = 0i64;
    for m in FamilyCursor::new(&f, FamilyKind::Monic, 4) {
        sum += handle.chi(&m).unwrap() as i64;
    }
    println!("\nsum of chi_D over all 81 monic quartics = {sum} (vanishes since 4 >= d(D))");
}
