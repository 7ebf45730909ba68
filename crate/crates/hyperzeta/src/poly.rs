//! Polynomials over F_q in canonical coefficient form.
//!
//! `coeffs[k]` is the coefficient of t^k; the top entry is nonzero and the
//! zero polynomial is the empty sequence. Degree of zero is reported as
//! `None`, the norm |f| = q^deg(f) with |0| = 0.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use num_bigint::BigUint;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.q()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: vec![1],
        }
    }

    /// The monomial t.
    pub fn t(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: vec![0, 1],
        }
    }

    pub fn constant(field: &FieldSpec, c: u64) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    /// Degree under the convention used by the enumeration families,
    /// where callers guarantee nonzero input.
    pub fn deg(&self) -> u32 {
        self.degree().expect("degree of the zero polynomial")
    }

    /// Norm |f| = q^deg(f), |0| = 0.
    pub fn norm(&self) -> f64 {
        match self.degree() {
            None => 0.0,
            Some(d) => (self.field.q() as f64).powi(d as i32),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (k, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(k).copied().unwrap_or(0);
            let b = other.coeffs.get(k).copied().unwrap_or(0);
            *o = f.add(a, b);
        }
        Ok(Poly::new(f, out))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (k, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(k).copied().unwrap_or(0);
            let b = other.coeffs.get(k).copied().unwrap_or(0);
            *o = f.sub(a, b);
        }
        Ok(Poly::new(f, out))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Poly {
            field: self.field.clone(),
            coeffs: mul_kernel(&self.field, &self.coeffs, &other.coeffs),
        })
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg b.
    pub fn divmod(&self, other: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let (q, r) = divmod_kernel(f, &self.coeffs, &other.coeffs);
        Ok((
            Poly {
                field: f.clone(),
                coeffs: q,
            },
            Poly {
                field: f.clone(),
                coeffs: r,
            },
        ))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let g = gcd_kernel(f, self.coeffs.clone(), other.coeffs.clone());
        Ok(Poly {
            field: f.clone(),
            coeffs: g,
        })
    }

    /// self^exp mod modulus, exponent arbitrary precision.
    pub fn powmod(&self, exp: &BigUint, modulus: &Poly) -> Result<Poly> {
        self.check_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let mut base = divmod_kernel(f, &self.coeffs, &modulus.coeffs).1;
        let mut acc = vec![1u64];
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = divmod_kernel(f, &mul_kernel(f, &acc, &base), &modulus.coeffs).1;
            }
            base = divmod_kernel(f, &mul_kernel(f, &base, &base), &modulus.coeffs).1;
        }
        Ok(Poly {
            field: f.clone(),
            coeffs: acc,
        })
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let p = f.p();
        let out: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul((k as u64) % p, c))
            .collect();
        Poly::new(f, out)
    }

    pub fn to_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading_coeff()))
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Irreducibility over F_q by the Rabin test: t^{q^d} = t (mod f) and
    /// gcd(t^{q^{d/r}} - t, f) = 1 for every prime r | d. Requires monic
    /// input of degree >= 1.
    pub fn is_irreducible(&self) -> Result<bool> {
        if !self.is_monic() || self.degree().unwrap_or(0) < 1 {
            return Err(Error::NotMonic);
        }
        let d = self.deg();
        if d == 1 {
            return Ok(true);
        }
        let f = &self.field;
        let q = f.q();
        // frob[k] = t^{q^k} mod self
        let t = Poly::t(f);
        let mut frob = divmod_kernel(f, &t.coeffs, &self.coeffs).1;
        let mut frobs = vec![frob.clone()];
        for _ in 1..d {
            frob = powmod_small(f, &frob, q, &self.coeffs);
            frobs.push(frob.clone());
        }
        // t^{q^d} == t?
        let top = powmod_small(f, &frobs[d as usize - 1], q, &self.coeffs);
        if top != divmod_kernel(f, &t.coeffs, &self.coeffs).1 {
            return Ok(false);
        }
        for r in prime_divisors(d) {
            let k = d / r;
            let mut diff = frobs[k as usize - 1].clone();
            diff = sub_kernel(f, &diff, &t.coeffs);
            let g = gcd_kernel(f, diff, self.coeffs.clone());
            if g.len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Square-freeness via gcd(f, f') = 1; degree-0 input counts as
    /// square-free (empty factorization).
    pub fn is_squarefree(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.deg() == 0 {
            return Ok(true);
        }
        let g = self.gcd(&self.derivative())?;
        Ok(g.degree() == Some(0))
    }

    /// Von Mangoldt: deg P when f = P^k for an irreducible P, else 0.
    pub fn von_mangoldt(&self) -> Result<u32> {
        if !self.is_monic() || self.degree().unwrap_or(0) < 1 {
            return Err(Error::NotMonic);
        }
        let fac = self.factor()?;
        if fac.len() == 1 {
            Ok(fac[0].0.deg())
        } else {
            Ok(0)
        }
    }

    /// Full factorization into monic irreducibles with multiplicities, by
    /// trial division over enumerated irreducibles. Intended for desk
    /// degrees; cost grows with q^(deg/2).
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        if !self.is_monic() || self.degree().unwrap_or(0) < 1 {
            return Err(Error::NotMonic);
        }
        let f = &self.field;
        let mut work = self.coeffs.clone();
        let mut out: Vec<(Poly, u32)> = Vec::new();
        let mut d = 1u32;
        while work.len() > 1 {
            let deg_left = work.len() as u32 - 1;
            if d > deg_left / 2 {
                // what remains is irreducible
                out.push((
                    Poly {
                        field: f.clone(),
                        coeffs: work,
                    },
                    1,
                ));
                break;
            }
            for p in crate::field::FieldSpec::primes_of_degree(f, d).iter() {
                let mut mult = 0u32;
                loop {
                    let (quo, rem) = divmod_kernel(f, &work, p);
                    if !rem.is_empty() {
                        break;
                    }
                    work = quo;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((
                        Poly {
                            field: f.clone(),
                            coeffs: p.clone(),
                        },
                        mult,
                    ));
                }
                if work.len() == 1 {
                    break;
                }
            }
            d += 1;
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}t^{k}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// slice kernels shared by the hot paths (no Poly/Arc overhead)
// ---------------------------------------------------------------------

pub(crate) fn mul_kernel(f: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn sub_kernel(f: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (k, o) in out.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *o = f.sub(x, y);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

pub(crate) fn divmod_kernel(f: &FieldSpec, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    let lead_inv = f.inv(b[db]);
    for shift in (0..=a.len() - 1 - db).rev() {
        let c = f.mul(r[shift + db], lead_inv);
        if c != 0 {
            q[shift] = c;
            for k in 0..=db {
                r[shift + k] = f.sub(r[shift + k], f.mul(c, b[k]));
            }
        }
    }
    r.truncate(db);
    while r.last() == Some(&0) {
        r.pop();
    }
    (q, r)
}

/// In-place remainder used by the symbol kernel.
pub(crate) fn rem_in_place(f: &FieldSpec, a: &mut Vec<u64>, b: &[u64]) {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    if a.len() <= db {
        return;
    }
    let lead_inv = f.inv(b[db]);
    for shift in (0..=a.len() - 1 - db).rev() {
        let c = f.mul(a[shift + db], lead_inv);
        if c != 0 {
            for k in 0..=db {
                a[shift + k] = f.sub(a[shift + k], f.mul(c, b[k]));
            }
        }
    }
    a.truncate(db);
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn gcd_kernel(f: &FieldSpec, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    while !b.is_empty() {
        rem_in_place(f, &mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    // normalize monic
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = f.inv(lead);
            for c in a.iter_mut() {
                *c = f.mul(*c, inv);
            }
        }
    }
    a
}

fn powmod_small(f: &FieldSpec, base: &[u64], mut exp: u64, modulus: &[u64]) -> Vec<u64> {
    let mut b = base.to_vec();
    let mut acc = vec![1u64];
    while exp > 0 {
        if exp & 1 == 1 {
            acc = divmod_kernel(f, &mul_kernel(f, &acc, &b), modulus).1;
        }
        b = divmod_kernel(f, &mul_kernel(f, &b, &b), modulus).1;
        exp >>= 1;
    }
    acc
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All monic irreducibles of degree d as coefficient vectors, in the family
/// enumeration order. Used by the per-field prime cache.
pub(crate) fn enumerate_irreducible_coeffs(f: &FieldSpec, d: u32) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let q = f.q();
    let count = q.pow(d);
    let mut coeffs = vec![0u64; d as usize + 1];
    coeffs[d as usize] = 1;
    for idx in 0..count {
        let mut c = idx;
        for slot in coeffs.iter_mut().take(d as usize) {
            *slot = c % q;
            c /= q;
        }
        let p = Poly::new(f, coeffs.clone());
        if p.is_irreducible().unwrap() {
            out.push(p.coeffs);
        }
    }
    out
}

// ---------------------------------------------------------------------
// text syntax: sums of c*t^k terms, e.g. "t^3+2t+1"
// ---------------------------------------------------------------------

/// Parse the harness polynomial syntax. Coefficients are decimal residues
/// in [0, q); out-of-range literals are rejected rather than reduced.
pub fn parse_poly(field: &FieldSpec, text: &str) -> Result<Poly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::SyntaxError("empty input".into()));
    }
    if s == "0" {
        return Ok(Poly::zero(field));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    for term in s.split('+') {
        if term.is_empty() {
            return Err(Error::SyntaxError(format!("empty term in {text:?}")));
        }
        let (coeff_str, power) = match term.find('t') {
            None => (term, 0u32),
            Some(pos) => {
                let head = &term[..pos];
                let tail = &term[pos + 1..];
                let k = if tail.is_empty() {
                    1
                } else if let Some(exp) = tail.strip_prefix('^') {
                    exp.parse::<u32>()
                        .map_err(|_| Error::SyntaxError(format!("bad exponent in {term:?}")))?
                } else {
                    return Err(Error::SyntaxError(format!("unexpected {tail:?} after t")));
                };
                (head.trim_end_matches('*'), k)
            }
        };
        let c: u64 = if coeff_str.is_empty() {
            1
        } else {
            coeff_str
                .parse::<u64>()
                .map_err(|_| Error::SyntaxError(format!("bad coefficient in {term:?}")))?
        };
        if c >= field.q() {
            return Err(Error::CoefficientOutOfRange(c, field.q()));
        }
        if coeffs.len() <= power as usize {
            coeffs.resize(power as usize + 1, 0);
        }
        coeffs[power as usize] = field.add(coeffs[power as usize], c);
    }
    Ok(Poly::new(field, coeffs))
}
