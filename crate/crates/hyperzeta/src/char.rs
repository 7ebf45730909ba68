//! Quadratic residue symbols and the characters chi_D = (D/.).
//!
//! The fast path evaluates (a/b) without factoring b, by the Euclidean
//! reciprocity algorithm over F_q[t]: reduce a mod b, strip the leading
//! constant via (c/b) = c^{((q-1)/2) d(b)} evaluated in F_q, then swap the
//! monic parts using (A/B)(B/A) = (-1)^{((q-1)/2) d(A) d(B)} for coprime
//! monic A, B. A vanishing remainder reveals a common factor and the
//! symbol is 0. The slow oracle factors the modulus and multiplies
//! Euler-criterion symbols; the two paths cross-check each other in tests.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{divmod_kernel, rem_in_place, Poly};
use num_bigint::BigUint;

/// Value of a quadratic symbol: -1, 0, or +1. Zero exactly when the
/// arguments share a nonconstant factor.
pub type SymbolValue = i8;

/// Kernel on raw coefficient slices; `a` is consumed as scratch.
pub(crate) fn symbol_kernel(f: &FieldSpec, mut a: Vec<u64>, mut b: Vec<u64>) -> SymbolValue {
    debug_assert!(b.last() == Some(&1) && b.len() >= 2);
    let qhalf_odd = (f.q() - 1) / 2 % 2 == 1; // whether (q-1)/2 is odd
    rem_in_place(f, &mut a, &b);
    let mut sign = 1i8;
    loop {
        if a.is_empty() {
            return 0;
        }
        let db = (b.len() - 1) as u64;
        let lead = *a.last().unwrap();
        if lead != 1 {
            // split off the leading constant: (c/b) = c^{((q-1)/2) d(b)}
            let c_sym = f.pow(f.pow(lead, ((f.q() - 1) / 2) as u128), db as u128);
            if c_sym != 1 {
                debug_assert_eq!(c_sym, f.neg_one());
                sign = -sign;
            }
            let inv = f.inv(lead);
            for x in a.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let da = (a.len() - 1) as u64;
        if da == 0 {
            return sign;
        }
        // reciprocity for the monic parts
        if qhalf_odd && da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        rem_in_place(f, &mut b, &a);
        std::mem::swap(&mut a, &mut b);
    }
}

/// Residue symbol (a/b): the multiplicative extension of the Legendre
/// symbol over the irreducible factors of the monic modulus b, computed
/// without factoring b.
pub fn residue_symbol(a: &Poly, b: &Poly) -> Result<SymbolValue> {
    if !a.field().same_field(b.field()) {
        return Err(Error::FieldMismatch);
    }
    if !b.is_monic() || b.deg() < 1 {
        return Err(Error::NotMonicModulus);
    }
    Ok(symbol_kernel(
        a.field(),
        a.coeffs().to_vec(),
        b.coeffs().to_vec(),
    ))
}

/// A validated quadratic character chi_D for monic square-free D.
#[derive(Clone, Debug)]
pub struct CharacterHandle {
    d: Poly,
}

impl CharacterHandle {
    pub fn new(d: Poly) -> Result<Self> {
        if !d.is_monic() || d.degree().unwrap_or(0) < 1 || !d.is_squarefree()? {
            return Err(Error::NotSquarefree);
        }
        Ok(CharacterHandle { d })
    }

    pub fn discriminant(&self) -> &Poly {
        &self.d
    }

    pub fn field(&self) -> &FieldSpec {
        self.d.field()
    }

    /// chi_D(f) = (D/f) for monic f; chi_D(1) = +1.
    pub fn chi(&self, f: &Poly) -> Result<SymbolValue> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if f.deg() == 0 {
            return Ok(1);
        }
        residue_symbol(&self.d, f)
    }

    /// Slow independent path: factor f and take the product of
    /// Euler-criterion symbols D^{(|P|-1)/2} mod P. Test oracle only.
    pub fn chi_oracle(&self, f: &Poly) -> Result<SymbolValue> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if f.deg() == 0 {
            return Ok(1);
        }
        let mut out: i8 = 1;
        for (p, mult) in f.factor()? {
            let s = euler_symbol(&self.d, &p)?;
            if s == 0 {
                return Ok(0);
            }
            if mult % 2 == 1 {
                out *= s;
            }
        }
        Ok(out)
    }
}

/// Legendre symbol (a/P) for irreducible P via the Euler criterion
/// a^{(|P|-1)/2} mod P.
pub fn euler_symbol(a: &Poly, p: &Poly) -> Result<SymbolValue> {
    let f = a.field();
    let q = BigUint::from(f.q());
    let exp = (q.pow(p.deg()) - 1u32) / 2u32;
    let r = a.powmod(&exp, p)?;
    if r.is_zero() {
        return Ok(0);
    }
    let c = r.coeffs();
    if c == [1] {
        Ok(1)
    } else if c == [f.neg_one()] {
        Ok(-1)
    } else {
        Err(Error::PreconditionViolated(
            "Euler criterion did not yield 0 or +-1; modulus not irreducible?".into(),
        ))
    }
}

/// chi_D(f) on raw coefficient slices, for the sweep hot path.
pub(crate) fn chi_kernel(f: &FieldSpec, d: &[u64], modulus: &[u64]) -> SymbolValue {
    if modulus.len() == 1 {
        return 1;
    }
    // reduce d once, then run the kernel
    let (_, r) = divmod_kernel(f, d, modulus);
    symbol_kernel(f, r, modulus.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{FamilyCursor, FamilyKind};
    use crate::field::field_create;
    use crate::poly::parse_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn f3() -> FieldSpec {
        field_create(3, 1, None).unwrap()
    }

    #[test]
    fn symbol_basics() {
        let f = f3();
        let p = parse_poly(&f, "t^2+1").unwrap();
        assert_eq!(residue_symbol(&Poly::one(&f), &p).unwrap(), 1);
        assert_eq!(residue_symbol(&p, &p).unwrap(), 0);
        // Euler criterion: 2^{(3-1)/2} = 2 = -1 in F_3
        let two = Poly::constant(&f, 2);
        let t = parse_poly(&f, "t").unwrap();
        assert_eq!(residue_symbol(&two, &t).unwrap(), -1);
        assert_eq!(euler_symbol(&two, &t).unwrap(), -1);
    }

    #[test]
    fn modulus_must_be_monic_nonconstant() {
        let f = f3();
        let a = parse_poly(&f, "t").unwrap();
        let bad = parse_poly(&f, "2t+1").unwrap();
        assert!(matches!(
            residue_symbol(&a, &bad),
            Err(Error::NotMonicModulus)
        ));
        assert!(matches!(
            residue_symbol(&a, &Poly::one(&f)),
            Err(Error::NotMonicModulus)
        ));
    }

    #[test]
    fn fast_path_equals_oracle_exhaustively() {
        // q = 3, d(D) <= 4, d(f) <= 5
        let f = f3();
        for nd in 1..=4u32 {
            for d in FamilyCursor::new(&f, FamilyKind::Squarefree, nd) {
                let h = CharacterHandle::new(d).unwrap();
                for nf in 0..=5u32 {
                    for m in FamilyCursor::new(&f, FamilyKind::Monic, nf) {
                        assert_eq!(
                            h.chi(&m).unwrap(),
                            h.chi_oracle(&m).unwrap(),
                            "D={} f={}",
                            h.discriminant(),
                            m
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn reciprocity_law_on_random_coprime_monic_pairs() {
        for p in [3u64, 5, 7] {
            let f = field_create(p, 1, None).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(p);
            let qhalf = (p - 1) / 2;
            let mut done = 0;
            while done < 10_000 {
                let da = rng.gen_range(1..=4u32);
                let db = rng.gen_range(1..=4u32);
                let mut ac = vec![0u64; da as usize + 1];
                let mut bc = vec![0u64; db as usize + 1];
                for s in ac.iter_mut().take(da as usize) {
                    *s = rng.gen_range(0..p);
                }
                for s in bc.iter_mut().take(db as usize) {
                    *s = rng.gen_range(0..p);
                }
                ac[da as usize] = 1;
                bc[db as usize] = 1;
                let a = Poly::new(&f, ac);
                let b = Poly::new(&f, bc);
                if a.gcd(&b).unwrap().deg() != 0 {
                    continue;
                }
                let lhs = residue_symbol(&a, &b).unwrap() as i32
                    * residue_symbol(&b, &a).unwrap() as i32;
                let rhs = if qhalf * (da as u64) * (db as u64) % 2 == 1 {
                    -1
                } else {
                    1
                };
                assert_eq!(lhs, rhs, "q={p} A={a} B={b}");
                done += 1;
            }
        }
    }

    #[test]
    fn chi_multiplicative_and_zero_on_common_factor() {
        let f = f3();
        let d = parse_poly(&f, "t^3+2t+1").unwrap();
        let h = CharacterHandle::new(d).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..10_000 {
            let na = rng.gen_range(0..=4u32);
            let nb = rng.gen_range(0..=4u32);
            let mut ac = vec![0u64; na as usize + 1];
            let mut bc = vec![0u64; nb as usize + 1];
            for s in ac.iter_mut().take(na as usize) {
                *s = rng.gen_range(0..3);
            }
            for s in bc.iter_mut().take(nb as usize) {
                *s = rng.gen_range(0..3);
            }
            ac[na as usize] = 1;
            bc[nb as usize] = 1;
            let a = Poly::new(&f, ac);
            let b = Poly::new(&f, bc);
            let ab = a.mul(&b).unwrap();
            assert_eq!(
                h.chi(&ab).unwrap() as i32,
                h.chi(&a).unwrap() as i32 * h.chi(&b).unwrap() as i32
            );
        }
        // chi_D(f^2) = +1 when gcd(D, f) = 1
        let g = parse_poly(&f, "t+1").unwrap();
        let g2 = g.mul(&g).unwrap();
        assert_eq!(h.chi(&g2).unwrap(), 1);
        // 0 when a prime divides both
        let dd = parse_poly(&f, "t^2+t").unwrap(); // t(t+1), square-free
        let hh = CharacterHandle::new(dd).unwrap();
        let t2 = parse_poly(&f, "t^2").unwrap();
        assert_eq!(hh.chi(&t2).unwrap(), 0);
    }

    #[test]
    fn full_field_cancellation() {
        // sum over M_n of chi_D = 0 once n >= d(D); q = 3, d(D) <= 4, n <= 6
        let f = f3();
        for nd in 1..=4u32 {
            for d in FamilyCursor::new(&f, FamilyKind::Squarefree, nd) {
                let h = CharacterHandle::new(d).unwrap();
                for n in nd..=6u32 {
                    let mut sum = 0i64;
                    for m in FamilyCursor::new(&f, FamilyKind::Monic, n) {
                        sum += h.chi(&m).unwrap() as i64;
                    }
                    assert_eq!(sum, 0, "D={} n={}", h.discriminant(), n);
                }
            }
        }
    }

    #[test]
    fn rejects_non_squarefree_discriminant() {
        let f = f3();
        let bad = parse_poly(&f, "t^2").unwrap();
        assert!(matches!(
            CharacterHandle::new(bad),
            Err(Error::NotSquarefree)
        ));
    }
}
