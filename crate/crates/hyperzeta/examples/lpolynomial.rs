//! Build the exact L-polynomial of a quadratic character two independent
//! ways, inspect its functional equation, and evaluate the central value.
//!
//! Run with: cargo run --release --example lpolynomial

use hyperzeta::field::field_create;
use hyperzeta::lpoly::{prime_power_sums, LData};
use hyperzeta::poly::parse_poly;

fn main() {
    let f = field_create(3, 1, None).unwrap();
    for text in ["t^3+2t+1", "t^4+t+1", "t^5+t^2+1"] {
        let d = parse_poly(&f, text).unwrap();
        let by_charsum = LData::charsum(&d).unwrap();
        let by_powersum = LData::powersum(&d).unwrap();
        assert_eq!(by_charsum, by_powersum);
        let ld = by_charsum;

        println!("D = {d}  (n = {}, lambda = {}, genus delta = {})", ld.n(), ld.lambda(), ld.delta());
        println!("  a_k    = {:?}", ld.coeffs());
        println!("  a*_k   = {:?}   (a*_{{2d-k}} = q^{{d-k}} a*_k)", ld.lstar_coeffs());
        println!("  c_m    = {:?}", prime_power_sums(&d, 2 * ld.delta().max(1)).unwrap());

        let cv = ld.central_value().unwrap();
        println!(
            "  q^{{d/2}} L*(q^{{-1/2}}) = {} + {} sqrt(3);  L(1/2) = {:.6}  vanishing: {}",
            cv.m,
            cv.n,
            ld.central_approx().unwrap(),
            cv.vanishing
        );
        println!();
    }
}
