//! Enumerate the monic / irreducible / square-free families and compare
//! the exact counts with their closed forms.
//!
//! Run with: cargo run --release --example family_counts

use hyperzeta::family::{enumerate_family, family_count, FamilyKind};
use hyperzeta::field::field_create;

fn main() {
    let f = field_create(3, 1, None).unwrap();
    println!("field: {f}");
    println!("{:<4} {:>10} {:>12} {:>12}", "n", "monic", "irreducible", "squarefree");
    for n in 1..=8u32 {
        let m = family_count(&f, FamilyKind::Monic, n);
        let p = family_count(&f, FamilyKind::Irreducible, n);
        let h = family_count(&f, FamilyKind::Squarefree, n);
        println!("{n:<4} {m:>10} {p:>12} {h:>12}");
    }

    // the closed forms match full enumeration
    for n in 1..=6u32 {
        for kind in [FamilyKind::Monic, FamilyKind::Irreducible, FamilyKind::Squarefree] {
            let (iter, count) = enumerate_family(&f, kind, n);
            assert_eq!(iter.count() as u64, count);
        }
    }
    println!("\nenumeration agrees with closed forms for n <= 6");

    // prime polynomial theorem: |P_n| = q^n/n + O(q^{n/2}/n)
    println!("\nprime counts vs q^n/n:");
    for n in 1..=8u32 {
        let p = family_count(&f, FamilyKind::Irreducible, n) as f64;
        let main = 3f64.powi(n as i32) / n as f64;
        println!("  n={n}: |P_n|={p:>6}  q^n/n={main:>9.1}  diff={:>7.1}", p - main);
    }
}
