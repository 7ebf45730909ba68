//! Enumeration and sampling of the polynomial families M_n, P_n, H_n.
//!
//! The order is fixed forever: lexicographic on coefficient sequences with
//! the constant term varying fastest, i.e. monic index i maps to
//! coefficients c_k = (i / q^k) mod q. Sweep shards and cache checkpoints
//! depend on this order.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Poly;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Monic,
    Irreducible,
    Squarefree,
}

/// Cursor over a family of degree-n polynomials, restricted to a monic-index
/// range. Splitting the range gives disjoint, order-preserving shards.
#[derive(Clone, Debug)]
pub struct FamilyCursor {
    field: FieldSpec,
    kind: FamilyKind,
    n: u32,
    next_index: u64,
    end_index: u64,
    scratch: Vec<u64>,
}

impl FamilyCursor {
    pub fn new(field: &FieldSpec, kind: FamilyKind, n: u32) -> Self {
        let total = field.q().pow(n);
        Self::with_range(field, kind, n, 0, total)
    }

    /// Restrict to monic indices [lo, hi).
    pub fn with_range(field: &FieldSpec, kind: FamilyKind, n: u32, lo: u64, hi: u64) -> Self {
        let mut scratch = vec![0u64; n as usize + 1];
        scratch[n as usize] = 1;
        FamilyCursor {
            field: field.clone(),
            kind,
            n,
            next_index: lo,
            end_index: hi,
            scratch,
        }
    }

    /// Total number of monic indices of this degree.
    pub fn monic_span(field: &FieldSpec, n: u32) -> u64 {
        field.q().pow(n)
    }

    /// Split the remaining range into `parts` contiguous sub-cursors.
    pub fn split(&self, parts: u64) -> Vec<FamilyCursor> {
        let lo = self.next_index;
        let hi = self.end_index;
        let len = hi - lo;
        let parts = parts.max(1).min(len.max(1));
        let mut out = Vec::new();
        for k in 0..parts {
            let a = lo + len * k / parts;
            let b = lo + len * (k + 1) / parts;
            if a < b {
                out.push(FamilyCursor::with_range(&self.field, self.kind, self.n, a, b));
            }
        }
        out
    }

    fn load(&mut self, index: u64) {
        let q = self.field.q();
        let mut c = index;
        for slot in self.scratch.iter_mut().take(self.n as usize) {
            *slot = c % q;
            c /= q;
        }
    }

    fn admits(&self, p: &Poly) -> bool {
        match self.kind {
            FamilyKind::Monic => true,
            FamilyKind::Irreducible => p.is_irreducible().unwrap(),
            FamilyKind::Squarefree => p.is_squarefree().unwrap(),
        }
    }
}

impl Iterator for FamilyCursor {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        while self.next_index < self.end_index {
            let idx = self.next_index;
            self.next_index += 1;
            self.load(idx);
            let p = Poly::new(&self.field, self.scratch.clone());
            if self.admits(&p) {
                return Some(p);
            }
        }
        None
    }
}

/// Iterator over a family plus its exact cardinality.
pub fn enumerate_family(
    field: &FieldSpec,
    kind: FamilyKind,
    n: u32,
) -> (FamilyCursor, u64) {
    (
        FamilyCursor::new(field, kind, n),
        family_count(field, kind, n),
    )
}

/// Exact family cardinalities. Monic and irreducible counts come from the
/// closed forms q^n and (1/n) sum_{d|n} mu(d) q^{n/d}; the square-free
/// count is q^n - q^{n-1} for n >= 2, q for n = 1, and 1 for n = 0.
pub fn family_count(field: &FieldSpec, kind: FamilyKind, n: u32) -> u64 {
    let q = field.q();
    match kind {
        FamilyKind::Monic => q.pow(n),
        FamilyKind::Irreducible => {
            if n == 0 {
                return 0;
            }
            let mut total: i128 = 0;
            for d in 1..=n {
                if n % d != 0 {
                    continue;
                }
                total += mobius(d) as i128 * q.pow(n / d) as i128;
            }
            (total / n as i128) as u64
        }
        FamilyKind::Squarefree => match n {
            0 => 1,
            1 => q,
            _ => q.pow(n) - q.pow(n - 1),
        },
    }
}

fn mobius(mut n: u32) -> i32 {
    let mut m = 1i32;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            m = -m;
        }
        d += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Uniform draw from H_n by rejection: sample monic degree-n coefficients
/// uniformly and retry until square-free. Deterministic under a fixed rng.
pub fn sample_squarefree<R: Rng>(field: &FieldSpec, n: u32, rng: &mut R) -> Result<Poly> {
    if n < 2 {
        return Err(Error::PreconditionViolated(
            "square-free sampling requires n >= 2".into(),
        ));
    }
    let q = field.q();
    loop {
        let mut coeffs = vec![0u64; n as usize + 1];
        for slot in coeffs.iter_mut().take(n as usize) {
            *slot = rng.gen_range(0..q);
        }
        coeffs[n as usize] = 1;
        let p = Poly::new(field, coeffs);
        if p.is_squarefree()? {
            return Ok(p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_create;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn monic_count_q3_n2() {
        let f = field_create(3, 1, None).unwrap();
        let (it, count) = enumerate_family(&f, FamilyKind::Monic, 2);
        assert_eq!(count, 9);
        assert_eq!(it.count(), 9);
    }

    #[test]
    fn squarefree_count_q3_n5() {
        let f = field_create(3, 1, None).unwrap();
        let (it, count) = enumerate_family(&f, FamilyKind::Squarefree, 5);
        assert_eq!(count, 162);
        assert_eq!(it.count(), 162);
    }

    #[test]
    fn irreducible_count_q3_n4() {
        let f = field_create(3, 1, None).unwrap();
        // Moebius count (3^4 - 3^2)/4 = 18
        let (it, count) = enumerate_family(&f, FamilyKind::Irreducible, 4);
        assert_eq!(count, 18);
        assert_eq!(it.count(), 18);
    }

    #[test]
    fn counts_match_enumeration_small() {
        for (p, e) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let f = field_create(p, e, None).unwrap();
            let nmax = if f.q() > 5 { 3 } else { 6 };
            for n in 1..=nmax {
                for kind in [
                    FamilyKind::Monic,
                    FamilyKind::Irreducible,
                    FamilyKind::Squarefree,
                ] {
                    let (it, count) = enumerate_family(&f, kind, n);
                    assert_eq!(it.count() as u64, count, "q={} kind={:?} n={}", f.q(), kind, n);
                }
            }
        }
    }

    #[test]
    fn prime_polynomial_theorem_window() {
        // | |P_n| - q^n/n | <= 2 q^{n/2} / n
        for p in [3u64, 5, 7] {
            let f = field_create(p, 1, None).unwrap();
            let nmax = if p == 3 { 8 } else { 6 };
            for n in 1..=nmax {
                let cnt = family_count(&f, FamilyKind::Irreducible, n) as f64;
                let q = p as f64;
                let main = q.powi(n as i32) / n as f64;
                let err = 2.0 * q.powf(n as f64 / 2.0) / n as f64;
                assert!(
                    (cnt - main).abs() <= err,
                    "q={p} n={n}: {cnt} vs {main} +- {err}"
                );
            }
        }
    }

    #[test]
    fn split_preserves_order_and_content() {
        let f = field_create(3, 1, None).unwrap();
        let whole: Vec<Poly> = FamilyCursor::new(&f, FamilyKind::Squarefree, 4).collect();
        let shards = FamilyCursor::new(&f, FamilyKind::Squarefree, 4).split(5);
        let stitched: Vec<Poly> = shards.into_iter().flatten().collect();
        assert_eq!(whole, stitched);
    }

    #[test]
    fn sampling_is_deterministic_and_squarefree() {
        let f = field_create(3, 1, None).unwrap();
        let mut r1 = ChaCha12Rng::seed_from_u64(1);
        let mut r2 = ChaCha12Rng::seed_from_u64(1);
        let a = sample_squarefree(&f, 5, &mut r1).unwrap();
        let b = sample_squarefree(&f, 5, &mut r2).unwrap();
        assert_eq!(a, b);
        for _ in 0..50 {
            let p = sample_squarefree(&f, 8, &mut r1).unwrap();
            assert!(p.is_squarefree().unwrap());
            assert!(p.is_monic());
            assert_eq!(p.deg(), 8);
        }
    }

    #[test]
    fn acceptance_rate_tracks_squarefree_density() {
        // density of square-free monics is 1 - 1/q for n >= 2; verified
        // exhaustively at n = 4 and then sampled at n = 8
        let f = field_create(3, 1, None).unwrap();
        assert_eq!(
            family_count(&f, FamilyKind::Squarefree, 4),
            3u64.pow(4) - 3u64.pow(3)
        );
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let trials = 100_000u64;
        let mut accepted = 0u64;
        for _ in 0..trials {
            let mut coeffs = vec![0u64; 9];
            for slot in coeffs.iter_mut().take(8) {
                *slot = rng.gen_range(0..3);
            }
            coeffs[8] = 1;
            if Poly::new(&f, coeffs).is_squarefree().unwrap() {
                accepted += 1;
            }
        }
        let rate = accepted as f64 / trials as f64;
        assert!((rate - (1.0 - 1.0 / 3.0)).abs() < 0.02, "rate {rate}");
    }
}
