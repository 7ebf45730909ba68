//! The analytic engine: smoothed von Mangoldt weights, truncated prime
//! sums, the exact residue identity for L'/L, and the closed-form
//! identities connecting log |L| at 1/2 and at 1/2 + sigma0.
//!
//! Sign and factor conventions, fixed once by direct-evaluation oracles
//! and used everywhere:
//!
//! * The smoothed weight is the window combination
//!   `w1 - 2 w2 + w3` with `w_i(d) = (iX-d+1)(iX-d+2)` for `d <= iX`,
//!   which equals `2X^2` on `d <= X` and `(3X-d+1)(3X-d+2)` on
//!   `2X < d <= 3X`. The alternative middle branch
//!   `X^2 - d^2 + 2dX - 3X - d - 2` breaks the residue identity and is
//!   kept only as a regression witness.
//! * The vertical-segment integral of `q^{X(w-s)} / (1-q^{-(w-s)})^3`
//!   over one period equals `+(X+1)(X+2) / (2 ln q)`, independent of s.
//! * The residue identity reads, with `W(z) = z^X (1-z^X)^2 / (1-1/z)^3`
//!   and `z_j = q^{1/2-s} e(-theta_j)`:
//!   `-L'/L(s) = (ln q / 2X^2) sum_{d(f)<=3X} Lambda_X(f) chi_D(f) |f|^{-s}
//!    + (ln q / X^2) (lambda W(q^{-s}) + sum_j W(z_j))`.
//! * The difference of logs is oriented as
//!   `log|L(1/2+sigma0)| - log|L(1/2)| = -delta sigma0 ln q
//!    + (1/2) sum_j ln(r_j) + lambda ln((1-q^{-1/2-sigma0})/(1-q^{-1/2}))`
//!   with `r_j = (q^{sigma0}+q^{-sigma0}-2cos(2 pi theta_j)) /
//!   (2-2cos(2 pi theta_j))`; every `ln(r_j)` is nonnegative. The lambda
//!   term carries no extra `ln q` factor, as the delta = 0, lambda = 1
//!   case D = t^2+1 forces.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lpoly::{prime_power_sums, EigenphaseSet, LData, LVariant};
use crate::poly::Poly;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Truncation policy: cutoff degree X >= 1 and sigma0 = c / X with
/// 0 < c < 1/(2 ln q).
#[derive(Clone, Copy, Debug)]
pub struct CutoffPolicy {
    x: u32,
    c: f64,
    q: u64,
}

impl CutoffPolicy {
    pub fn new(q: u64, x: u32, c: f64) -> Result<Self> {
        let lnq = (q as f64).ln();
        if x == 0 {
            return Err(Error::PreconditionViolated("cutoff X must be >= 1".into()));
        }
        if !(c > 0.0 && c < 1.0 / (2.0 * lnq)) {
            return Err(Error::PreconditionViolated(format!(
                "need 0 < c < 1/(2 ln q) = {:.4}, got {c}",
                1.0 / (2.0 * lnq)
            )));
        }
        Ok(CutoffPolicy { x, c, q })
    }

    /// Default c = 0.4 / ln q; the constraints the asymptotic argument
    /// puts on c are mutually incompatible at small q, so c stays a
    /// configuration parameter.
    pub fn with_default_c(q: u64, x: u32) -> Result<Self> {
        Self::new(q, x, 0.4 / (q as f64).ln())
    }

    pub fn x(&self) -> u32 {
        self.x
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn sigma0(&self) -> f64 {
        self.c / self.x as f64
    }
    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Window weight w1 - 2 w2 + w3 on degree d (without the Lambda factor);
/// 2X^2 on [1, X], zero outside [1, 3X].
pub fn lambda_x_weight(d: u32, x: u32) -> i64 {
    if d == 0 || d > 3 * x {
        return 0;
    }
    let w = |i: i64| -> i64 {
        let b = i * x as i64 - d as i64;
        if b >= 0 {
            (b + 1) * (b + 2)
        } else {
            0
        }
    };
    w(1) - 2 * w(2) + w(3)
}

/// The rejected alternative middle branch; agrees with `lambda_x_weight`
/// outside (X, 2X]. Kept only so the regression test can demonstrate that
/// it breaks the residue identity.
pub fn lambda_x_weight_alt_middle(d: u32, x: u32) -> i64 {
    if d == 0 || d > 3 * x {
        return 0;
    }
    let (df, xf) = (d as i64, x as i64);
    if d <= x {
        2 * xf * xf
    } else if d <= 2 * x {
        xf * xf - df * df + 2 * df * xf - 3 * xf - df - 2
    } else {
        (3 * xf - df + 1) * (3 * xf - df + 2)
    }
}

/// Lambda_X(f) for a prime power of degree d with Lambda(f) = lam.
pub fn lambda_x(d: u32, lam: u32, x: u32) -> i64 {
    lambda_x_weight(d, x) * lam as i64
}

/// P_X(1/2 + sigma0, chi_D) = sum_{d(P) <= X} chi_D(P) |P|^{-1/2-sigma0}.
/// Inner character sums per degree are exact integers, so the result does
/// not depend on the enumeration order of the primes.
pub fn p_sum(ld: &LData, policy: &CutoffPolicy) -> f64 {
    let field = ld.field();
    let s = 0.5 + policy.sigma0();
    let q = field.q() as f64;
    let mut total = 0.0;
    for d in 1..=policy.x() {
        let sum = chi_sum_over_primes(field, ld.discriminant(), d, 1);
        total += sum as f64 * q.powf(-(d as f64) * s);
    }
    total
}

/// P~_X(1/2 + sigma0, chi_D): the Lambda(f)/d(f)-weighted sum over prime
/// powers P^k of degree k d(P) <= X, with weight 1/k.
pub fn p_tilde(ld: &LData, policy: &CutoffPolicy) -> f64 {
    let field = ld.field();
    let s = 0.5 + policy.sigma0();
    let q = field.q() as f64;
    let mut total = 0.0;
    for dp in 1..=policy.x() {
        let mut k = 1u32;
        while k * dp <= policy.x() {
            let sum = chi_sum_over_primes(field, ld.discriminant(), dp, k);
            total += sum as f64 / k as f64 * q.powf(-((k * dp) as f64) * s);
            k += 1;
        }
    }
    total
}

/// sum over primes P of degree `deg` of chi_D(P)^k (exact integer).
pub(crate) fn chi_sum_over_primes(field: &FieldSpec, d: &Poly, deg: u32, k: u32) -> i64 {
    let primes = field.primes_of_degree(deg);
    let dcoeffs = d.coeffs();
    let mut sum = 0i64;
    for p in primes.iter() {
        let chi = crate::char::chi_kernel(field, dcoeffs, p);
        sum += match (chi, k % 2) {
            (0, _) => 0,
            (_, 0) => 1,
            (c, _) => c as i64,
        };
    }
    sum
}

/// Truncated prime sum sum_{d(P) <= K} |P|^{-1-2 sigma0}, reported with
/// its deviation from ln K.
pub fn truncated_prime_sum(field: &FieldSpec, k: u32, sigma0: f64) -> Result<(f64, f64)> {
    let lnq = (field.q() as f64).ln();
    if k < 2 || !(k as f64 * sigma0 < 1.0 / (2.0 * lnq)) {
        return Err(Error::PreconditionViolated(format!(
            "need K >= 2 and K sigma0 < 1/(2 ln q); got K={k}, K sigma0={}",
            k as f64 * sigma0
        )));
    }
    let q = field.q() as f64;
    let mut total = 0.0;
    for d in 1..=k {
        let count = crate::family::family_count(field, crate::family::FamilyKind::Irreducible, d);
        total += count as f64 * q.powf(-(d as f64) * (1.0 + 2.0 * sigma0));
    }
    Ok((total, total - (k as f64).ln()))
}

/// Quadrature check of the vertical-segment integral
/// (1/2 pi i) int_2^{2 + 2 pi i/ln q} q^{X(w-s)} / (1 - q^{-(w-s)})^3 dw
/// against the closed form (X+1)(X+2)/(2 ln q). Returns (numeric, closed).
pub fn integral_weight_check(q: u64, x: u32, s: Complex64, panels: usize) -> (Complex64, f64) {
    let lnq = (q as f64).ln();
    let period = 2.0 * PI / lnq;
    let integrand = |t: f64| -> Complex64 {
        let w = Complex64::new(2.0, t);
        let z = ((w - s) * lnq).exp();
        z.powu(x) / (1.0 - 1.0 / z).powu(3)
    };
    let (nodes, weights) = gauss_legendre_16();
    let mut acc = Complex64::new(0.0, 0.0);
    let h = period / panels as f64;
    for p in 0..panels {
        let a = p as f64 * h;
        for (xk, wk) in nodes.iter().zip(weights.iter()) {
            let t = a + h * 0.5 * (1.0 + xk);
            acc += integrand(t) * *wk;
        }
    }
    // dw = i dt, then the overall 1/(2 pi i)
    let numeric = acc * Complex64::new(0.0, h * 0.5) / Complex64::new(0.0, 2.0 * PI);
    let closed = ((x as f64) + 1.0) * ((x as f64) + 2.0) / (2.0 * lnq);
    (numeric, closed)
}

fn gauss_legendre_16() -> ([f64; 16], [f64; 16]) {
    let n = 16usize;
    let mut nodes = [0.0f64; 16];
    let mut weights = [0.0f64; 16];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// W(z) = z^X (1 - z^X)^2 / (1 - 1/z)^3, the residue shape shared by the
/// trivial pole and every zero.
fn w_shape(z: Complex64, x: u32) -> Complex64 {
    let zx = z.powu(x);
    zx * (1.0 - zx) * (1.0 - zx) / (1.0 - 1.0 / z).powu(3)
}

/// Both sides of the exact residue identity at s. The left side is
/// -L'/L(s) from the zeros; the right side combines the Lambda_X-weighted
/// character sum with the residue contributions of the trivial pole and
/// the zeros. Exact up to floating rounding for every D, X, s off the
/// poles; this single check entangles the weight window, the eigenphases,
/// lambda, delta, and the character sums.
pub fn residue_identity(
    ld: &LData,
    phases: &EigenphaseSet,
    policy: &CutoffPolicy,
    s: Complex64,
) -> Result<(Complex64, Complex64)> {
    residue_identity_with_weight(ld, phases, policy, s, lambda_x_weight)
}

/// Same contract with a caller-supplied degree weight; used by the
/// regression witness for the rejected middle branch.
pub fn residue_identity_with_weight(
    ld: &LData,
    phases: &EigenphaseSet,
    policy: &CutoffPolicy,
    s: Complex64,
    weight: fn(u32, u32) -> i64,
) -> Result<(Complex64, Complex64)> {
    let x = policy.x();
    let lnq = (ld.q() as f64).ln();
    let lhs = -ld.log_derivative_zeros(phases, s)?;

    let c = prime_power_sums(ld.discriminant(), 3 * x)?;
    let mut weighted = Complex64::new(0.0, 0.0);
    for m in 1..=3 * x {
        let w = weight(m, x);
        if w == 0 {
            continue;
        }
        let um = (-s * (m as f64) * lnq).exp();
        weighted += Complex64::new((w * c[m as usize - 1]) as f64, 0.0) * um;
    }
    let x2 = (x as f64) * (x as f64);
    let mut rhs = weighted * (lnq / (2.0 * x2));

    let mut bracket = Complex64::new(0.0, 0.0);
    if ld.lambda() == 1 {
        let u0 = (-s * lnq).exp();
        bracket += w_shape(u0, x);
    }
    for &th in &phases.thetas {
        let zj = ((0.5 - s) * lnq).exp() * Complex64::from_polar(1.0, -2.0 * PI * th);
        if (1.0 - zj).norm() < 1e-12 {
            return Err(Error::PoleAtPoint);
        }
        bracket += w_shape(zj, x);
    }
    rhs += bracket * (lnq / x2);
    Ok((lhs, rhs))
}

/// Decomposition of log L(1/2 + sigma0) into the weighted prime-power sum
/// plus tracked error functionals.
#[derive(Clone, Copy, Debug)]
pub struct DecompositionReport {
    /// log |L(1/2 + sigma0, chi_D)|; the sign of L is carried separately.
    pub log_l: f64,
    pub l_sign: f64,
    pub p_tilde: f64,
    /// (1/X^3) sum Lambda_X(f) chi_D(f) |f|^{-1/2-sigma0}.
    pub lambda_x_term: f64,
    /// delta/X + lambda/(X(X+2)).
    pub budget: f64,
    pub residual: f64,
}

impl DecompositionReport {
    pub fn ratio(&self) -> f64 {
        self.residual.abs() / self.budget
    }
}

pub fn prop41_decompose(ld: &LData, policy: &CutoffPolicy) -> Result<DecompositionReport> {
    let x = policy.x();
    let s = Complex64::new(0.5 + policy.sigma0(), 0.0);
    let lval = ld.eval_s(s, LVariant::Full)?.re;
    if lval == 0.0 {
        return Err(Error::CentralEvaluationAtZero);
    }
    let log_l = lval.abs().ln();
    let pt = p_tilde(ld, policy);

    let lnq = (ld.q() as f64).ln();
    let c = prime_power_sums(ld.discriminant(), 3 * x)?;
    let mut lx = 0.0f64;
    for m in 1..=3 * x {
        let w = lambda_x_weight(m, x);
        if w == 0 {
            continue;
        }
        lx += (w * c[m as usize - 1]) as f64 * (-(0.5 + policy.sigma0()) * m as f64 * lnq).exp();
    }
    let x3 = (x as f64).powi(3);
    let budget =
        ld.delta() as f64 / x as f64 + ld.lambda() as f64 / (x as f64 * (x as f64 + 2.0));
    Ok(DecompositionReport {
        log_l,
        l_sign: lval.signum(),
        p_tilde: pt,
        lambda_x_term: lx / x3,
        budget: budget.max(f64::MIN_POSITIVE),
        residual: log_l - pt,
    })
}

/// ln((1-q^{-1/2-sigma0})/(1-q^{-1/2})); nonnegative for sigma0 > 0.
fn lambda_log_term(q: u64, sigma0: f64) -> f64 {
    let sq = (q as f64).sqrt();
    ((1.0 - (q as f64).powf(-0.5 - sigma0)) / (1.0 - 1.0 / sq)).ln()
}

/// Exact identity for the difference of logs: returns (lhs, rhs) with
/// lhs = log|L(1/2+sigma0)| - log|L(1/2)| and
/// rhs = -delta sigma0 ln q + (1/2) sum_j ln(r_j) + lambda-term, the
/// orientation resolved by direct evaluation (module docs). Requires a
/// nonzero central value.
pub fn six_identity(
    ld: &LData,
    phases: &EigenphaseSet,
    policy: &CutoffPolicy,
) -> Result<(f64, f64)> {
    if ld.central_value()?.vanishing {
        return Err(Error::CentralZero);
    }
    let q = ld.q() as f64;
    let sigma0 = policy.sigma0();
    let lnq = q.ln();
    let s = Complex64::new(0.5 + sigma0, 0.0);
    let lhs = ld.eval_s(s, LVariant::Full)?.norm().ln() - ld.central_approx()?.abs().ln();
    let mut zero_sum = 0.0;
    for &th in &phases.thetas {
        let cosv = (2.0 * PI * th).cos();
        let num = q.powf(sigma0) + q.powf(-sigma0) - 2.0 * cosv;
        let den = 2.0 - 2.0 * cosv;
        zero_sum += (num / den).ln();
    }
    let rhs = -(ld.delta() as f64) * sigma0 * lnq
        + 0.5 * zero_sum
        + ld.lambda() as f64 * lambda_log_term(ld.q(), sigma0);
    Ok((lhs, rhs))
}

/// Nonnegative slack of the upper bound
/// log|L(1/2)| <= log|L(1/2+sigma0)| + delta sigma0 ln q + lambda-term.
/// Equals (1/2) sum_j ln(r_j) + 2 lambda-term, a sum of nonnegative
/// discarded parts.
pub fn seven_inequality(ld: &LData, policy: &CutoffPolicy) -> Result<f64> {
    if ld.central_value()?.vanishing {
        return Err(Error::CentralZero);
    }
    let sigma0 = policy.sigma0();
    let lnq = (ld.q() as f64).ln();
    let s = Complex64::new(0.5 + sigma0, 0.0);
    let log_l_sigma = ld.eval_s(s, LVariant::Full)?.norm().ln();
    let log_l_half = ld.central_approx()?.abs().ln();
    Ok(log_l_sigma
        + ld.delta() as f64 * sigma0 * lnq
        + ld.lambda() as f64 * lambda_log_term(ld.q(), sigma0)
        - log_l_half)
}

/// Worst margins of the per-zero and aggregate zero-sum inequalities at a
/// given sigma >= 1/2 + sigma0. All margins are nonnegative when the
/// inequalities hold; the second degenerates to zero at
/// sigma = 1/2 + sigma0 where the two sides coincide.
#[derive(Clone, Copy, Debug)]
pub struct ZeroSumReport {
    /// min over zeros of (middle - left) in the per-zero chain.
    pub per_zero_first: f64,
    /// min over zeros of (right - middle).
    pub per_zero_second: f64,
    /// aggregate bound minus the zero sum.
    pub aggregate: f64,
}

pub fn zero_sum_bounds(
    ld: &LData,
    phases: &EigenphaseSet,
    policy: &CutoffPolicy,
    sigma: f64,
    x: u32,
) -> Result<ZeroSumReport> {
    let sigma0 = policy.sigma0();
    if sigma < 0.5 + sigma0 - 1e-15 {
        return Err(Error::PreconditionViolated(
            "zero-sum bounds need sigma >= 1/2 + sigma0".into(),
        ));
    }
    let q = ld.q() as f64;
    let lnq = q.ln();
    let mut first = f64::INFINITY;
    let mut second = f64::INFINITY;
    let mut zsum = 0.0f64;
    for &th in &phases.thetas {
        let alpha = Complex64::from_polar(1.0, -2.0 * PI * th);
        let a_inv_q = q.powf(sigma - 0.5) / alpha;
        let lhs = (a_inv_q / ((1.0 - a_inv_q) * (1.0 - a_inv_q))).norm();
        let mid =
            (1.0 / ((sigma - 0.5) * lnq)) * (1.0 / (1.0 - alpha * q.powf(0.5 - sigma))).re;
        let right = (1.0 / (sigma0 * lnq)) * (1.0 / (1.0 - alpha * q.powf(-sigma0))).re;
        first = first.min(mid - lhs);
        second = second.min(right - mid);
        let zq = alpha * q.powf(0.5 - sigma);
        let zx = zq.powu(x);
        zsum += (zx * (1.0 - zx) * (1.0 - zx) / (1.0 - 1.0 / zq).powu(3)).norm();
    }
    let lp = ld
        .log_derivative_zeros(phases, Complex64::new(0.5 + sigma0, 0.0))?
        .re;
    let bound = 4.0 * q.powf(x as f64 * (0.5 - sigma)) / (sigma0 * sigma0 * lnq.powi(3))
        * (lp + 2.0 * ld.delta() as f64 * lnq);
    Ok(ZeroSumReport {
        per_zero_first: if first.is_finite() { first } else { 0.0 },
        per_zero_second: if second.is_finite() { second } else { 0.0 },
        aggregate: bound - zsum,
    })
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

    fn rand_squarefree(f: &FieldSpec, n: u32, rng: &mut ChaCha12Rng) -> Poly {
        loop {
            let mut c = vec![0u64; n as usize + 1];
            for s in c.iter_mut().take(n as usize) {
                *s = rng.gen_range(0..f.q());
            }
            c[n as usize] = 1;
            let p = Poly::new(f, c);
            if p.is_squarefree().unwrap() {
                return p;
            }
        }
    }

    #[test]
    fn weight_window_values() {
        // d <= X branch: 2 X^2
        assert_eq!(lambda_x(1, 1, 2), 8);
        // top branch at d = 3X
        assert_eq!(lambda_x(6, 6, 2), 12);
        // middle branch: window combination (0 - 2*6 + 20) = 8, times Lambda = 3
        assert_eq!(lambda_x(3, 3, 2), 24);
        // the alternative middle branch disagrees there
        assert_eq!(lambda_x_weight_alt_middle(3, 2) * 3, -12);
    }

    #[test]
    fn weight_positivity_cap_and_boundaries() {
        for x in 1..=8u32 {
            for d in 1..=3 * x {
                let w = lambda_x_weight(d, x);
                assert!(w >= 0, "negative weight at d={d} X={x}");
                assert!(w <= 2 * (x as i64) * (x as i64));
                if d <= x {
                    assert_eq!(w, 2 * (x as i64) * (x as i64));
                }
                if d > 2 * x {
                    let b = 3 * x as i64 - d as i64;
                    assert_eq!(w, (b + 1) * (b + 2));
                }
            }
            assert_eq!(lambda_x_weight(3 * x + 1, x), 0);
            assert_eq!(lambda_x_weight(0, x), 0);
        }
    }

    #[test]
    fn integral_weight_closed_form() {
        for &x in &[0u32, 1, 3, 6] {
            for &s in &[Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)] {
                let (num, closed) = integral_weight_check(3, x, s, 64);
                assert!(
                    (num - closed).norm() < 1e-10,
                    "X={x} s={s}: {num} vs {closed}"
                );
            }
        }
        // s-independence including a complex point
        let (a, _) = integral_weight_check(3, 3, Complex64::new(0.0, 0.0), 64);
        let (b, _) = integral_weight_check(3, 3, Complex64::new(0.5, 0.1), 64);
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn p_sum_three_term_enumeration() {
        let f = f3();
        let d = parse_poly(&f, "t^2+1").unwrap();
        let ld = LData::charsum(&d).unwrap();
        let policy = CutoffPolicy::with_default_c(3, 1).unwrap();
        // chi(t) + chi(t+1) + chi(t+2) = a_1 = -1
        let want = -(3f64).powf(-0.5 - policy.sigma0());
        assert!((p_sum(&ld, &policy) - want).abs() < 1e-15);
        // D = t kills every prime sum
        let t = parse_poly(&f, "t").unwrap();
        let ldt = LData::charsum(&t).unwrap();
        for x in 1..=6 {
            let pol = CutoffPolicy::with_default_c(3, x).unwrap();
            assert_eq!(p_tilde(&ldt, &pol), 0.0);
        }
    }

    #[test]
    fn p_tilde_halving_relation() {
        // p_tilde = p_sum + (1/2) sum_{P not| D, d(P) <= X/2} |P|^{-1-2s0}
        //           + cube-and-higher remainder
        let f = f3();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for n in [4u32, 5, 6] {
            for _ in 0..5 {
                let d = rand_squarefree(&f, n, &mut rng);
                let ld = LData::charsum(&d).unwrap();
                for x in 2..=6u32 {
                    let policy = CutoffPolicy::with_default_c(3, x).unwrap();
                    let lhs = p_tilde(&ld, &policy);
                    let mut rhs = p_sum(&ld, &policy);
                    let s0 = policy.sigma0();
                    let mut square_block = 0.0;
                    for dp in 1..=x / 2 {
                        let cnt = chi_sum_over_primes(&f, &d, dp, 2);
                        square_block +=
                            0.5 * cnt as f64 * 3f64.powf(-(dp as f64) * (1.0 + 2.0 * s0));
                    }
                    rhs += square_block;
                    for k in 3..=x {
                        for dp in 1..=x / k {
                            let cnt = chi_sum_over_primes(&f, &d, dp, k);
                            rhs += cnt as f64 / k as f64
                                * 3f64.powf(-((k * dp) as f64) * (0.5 + s0));
                        }
                    }
                    assert!((lhs - rhs).abs() < 1e-13, "D={d} X={x}");
                    assert!(square_block >= 0.0);
                }
            }
        }
    }

    #[test]
    fn truncated_prime_sum_values() {
        let f = f3();
        // sigma0 = 0 is out of the policy but fine here: 3/3 + 3/9 = 4/3
        let (v, _) = truncated_prime_sum(&f, 2, 0.0).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-15);
        let f5 = field_create(5, 1, None).unwrap();
        for fld in [&f, &f5] {
            let mut prev = 0.0;
            for k in 2..=12u32 {
                let (v, dev) = truncated_prime_sum(fld, k, 0.01).unwrap();
                assert!(v > prev);
                assert!(dev.abs() <= 2.0, "q={} K={k} dev={dev}", fld.q());
                prev = v;
            }
        }
        assert!(truncated_prime_sum(&f, 1, 0.0).is_err());
        assert!(truncated_prime_sum(&f, 10, 1.0).is_err());
    }

    #[test]
    fn residue_identity_trivial_and_random() {
        let f = f3();
        // D = t: both sides vanish
        let t = parse_poly(&f, "t").unwrap();
        let ld = LData::charsum(&t).unwrap();
        let ph = ld.eigenphases().unwrap();
        let policy = CutoffPolicy::with_default_c(3, 2).unwrap();
        let s = Complex64::new(0.5 + policy.sigma0(), 0.0);
        let (lhs, rhs) = residue_identity(&ld, &ph, &policy, s).unwrap();
        assert!(lhs.norm() < 1e-14 && rhs.norm() < 1e-14);

        // random D of both parities, X in {2, 3}
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for n in [5u32, 6, 7] {
            for _ in 0..4 {
                let d = rand_squarefree(&f, n, &mut rng);
                let ld = LData::powersum(&d).unwrap();
                let ph = ld.eigenphases().unwrap();
                for x in [2u32, 3] {
                    let policy = CutoffPolicy::with_default_c(3, x).unwrap();
                    let s = Complex64::new(0.5 + policy.sigma0(), 0.0);
                    let (lhs, rhs) = residue_identity(&ld, &ph, &policy, s).unwrap();
                    assert!(
                        (lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()),
                        "D={d} X={x}: lhs={lhs} rhs={rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn residue_identity_rejects_alt_middle_branch() {
        let f = f3();
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let d = rand_squarefree(&f, 7, &mut rng);
        let ld = LData::powersum(&d).unwrap();
        let ph = ld.eigenphases().unwrap();
        let policy = CutoffPolicy::with_default_c(3, 2).unwrap();
        let s = Complex64::new(0.5 + policy.sigma0(), 0.0);
        let (lhs, rhs) =
            residue_identity_with_weight(&ld, &ph, &policy, s, lambda_x_weight_alt_middle)
                .unwrap();
        assert!(
            (lhs - rhs).norm() > 1e-3,
            "alternative branch unexpectedly satisfies the identity"
        );
    }

    #[test]
    fn six_seven_exhaustive_small() {
        let f = f3();
        let policy = CutoffPolicy::with_default_c(3, 3).unwrap();
        for n in [5u32, 6] {
            for d in FamilyCursor::new(&f, FamilyKind::Squarefree, n) {
                let ld = LData::powersum(&d).unwrap();
                if ld.central_value().unwrap().vanishing {
                    continue;
                }
                let ph = ld.eigenphases().unwrap();
                let (lhs, rhs) = six_identity(&ld, &ph, &policy).unwrap();
                assert!((lhs - rhs).abs() < 1e-8, "D={d}: {lhs} vs {rhs}");
                let slack = seven_inequality(&ld, &policy).unwrap();
                assert!(slack >= -1e-10, "D={d}: slack {slack}");
            }
        }
    }

    #[test]
    fn six_identity_lambda_term_disambiguator() {
        // delta = 0, lambda = 1: the identity reduces to the lambda term,
        // pinning its form (no extra ln q factor)
        let f = f3();
        let d = parse_poly(&f, "t^2+1").unwrap();
        let ld = LData::charsum(&d).unwrap();
        let ph = ld.eigenphases().unwrap();
        let policy = CutoffPolicy::with_default_c(3, 2).unwrap();
        let s0 = policy.sigma0();
        let (lhs, rhs) = six_identity(&ld, &ph, &policy).unwrap();
        let want = ((1.0 - 3f64.powf(-0.5 - s0)) / (1.0 - 3f64.powf(-0.5))).ln();
        assert!((lhs - want).abs() < 1e-12);
        assert!((rhs - want).abs() < 1e-12);
        // D = t: 0 = 0, slack 0
        let t = parse_poly(&f, "t").unwrap();
        let ldt = LData::charsum(&t).unwrap();
        let pht = ldt.eigenphases().unwrap();
        let (l0, r0) = six_identity(&ldt, &pht, &policy).unwrap();
        assert_eq!(l0, 0.0);
        assert_eq!(r0, 0.0);
        assert!(seven_inequality(&ldt, &policy).unwrap().abs() < 1e-14);
    }

    #[test]
    fn zero_sum_bounds_hold() {
        let f = f3();
        let policy = CutoffPolicy::with_default_c(3, 2).unwrap();
        let s0 = policy.sigma0();
        for n in [4u32, 5, 6] {
            for d in FamilyCursor::new(&f, FamilyKind::Squarefree, n).take(40) {
                let ld = LData::powersum(&d).unwrap();
                let ph = ld.eigenphases().unwrap();
                for sigma in [0.5 + s0, 0.75, 1.0] {
                    let rep = zero_sum_bounds(&ld, &ph, &policy, sigma, 2).unwrap();
                    assert!(rep.per_zero_first >= -1e-10, "D={d} sigma={sigma}");
                    assert!(rep.per_zero_second >= -1e-10, "D={d} sigma={sigma}");
                    assert!(rep.aggregate >= -1e-10, "D={d} sigma={sigma}");
                }
            }
        }
    }

    #[test]
    fn prop41_budget_window() {
        let f = f3();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let mut worst: f64 = 0.0;
        for _ in 0..60 {
            let d = rand_squarefree(&f, 7, &mut rng);
            let ld = LData::powersum(&d).unwrap();
            for x in [2u32, 3] {
                let policy = CutoffPolicy::with_default_c(3, x).unwrap();
                let rep = prop41_decompose(&ld, &policy).unwrap();
                worst = worst.max(rep.ratio());
            }
        }
        assert!(worst <= 20.0, "worst residual/budget ratio {worst}");
        // D = t: every component zero
        let t = parse_poly(&f, "t").unwrap();
        let ldt = LData::charsum(&t).unwrap();
        let rep = prop41_decompose(&ldt, &CutoffPolicy::with_default_c(3, 2).unwrap()).unwrap();
        assert_eq!(rep.log_l, 0.0);
        assert_eq!(rep.p_tilde, 0.0);
        assert_eq!(rep.lambda_x_term, 0.0);
    }

    #[test]
    fn policy_validation() {
        assert!(CutoffPolicy::new(3, 0, 0.1).is_err());
        assert!(CutoffPolicy::new(3, 2, 0.0).is_err());
        assert!(CutoffPolicy::new(3, 2, 0.5).is_err());
        let p = CutoffPolicy::with_default_c(3, 4).unwrap();
        assert!((p.sigma0() - 0.4 / (3f64).ln() / 4.0).abs() < 1e-15);
    }
}
