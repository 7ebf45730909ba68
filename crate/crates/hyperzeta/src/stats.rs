//! Sweep-level statistics: Gaussian moment references, empirical family
//! averages, low-zero fractions, one-level density against the symplectic
//! kernel, and the CLT report.
//!
//! Zero-normalization convention: eigenphases are cycles in (-1/2, 1/2].
//! With 2*delta zeros on the unit-period circle, the mean spacing is
//! 1/(2*delta) cycles, so `2*delta*theta` is the mean-spacing scaling.
//! Both that and the `delta*theta` variant are computed; the calibration
//! run against the symplectic kernel fixes `TwoDeltaTheta` as the default
//! (its deviation from the predicted integral is an order of magnitude
//! smaller at desk scale).
//!
//! The CLT statistic is standardized two ways: with the degree-n targets
//! (mean n/2-log, variance log n) and with the cutoff-X targets (mean
//! (1/2) log X, variance log X). The two agree only asymptotically under
//! schedules that let X grow like a power of n; at desk scale the X form
//! is the one whose distribution is close to standard normal, so hard
//! thresholds are asserted on it while both are reported.

use crate::error::{Error, Result};
use crate::family::{FamilyCursor, FamilyKind};
use crate::field::FieldSpec;
use crate::lpoly::LData;
use crate::poly::Poly;
use crate::selberg::CutoffPolicy;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

/// One record per discriminant in a sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRecord {
    /// Coefficient codes of D.
    pub d: Vec<u64>,
    pub lambda: u32,
    pub delta: u32,
    pub p_x: f64,
    pub p_tilde: f64,
    /// log |L(1/2 + sigma0)|.
    pub log_l_sigma0: f64,
    /// log |L(1/2)|; absent when the central value vanishes.
    pub log_l_half: Option<f64>,
    /// All eigenphases in cycles, sorted.
    pub thetas: Vec<f64>,
}

impl SweepRecord {
    pub fn min_abs_theta(&self) -> f64 {
        self.thetas
            .iter()
            .map(|t| t.abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// A sweep sample: config echo plus per-record data, one record per
/// distinct D.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepSample {
    pub q: u64,
    pub n: u32,
    pub x: u32,
    pub c: f64,
    pub full: bool,
    pub seed: u64,
    pub records: Vec<SweepRecord>,
}

/// Gaussian reference moment: v^{k/2} k! / ((k/2)! 2^{k/2}) for even k,
/// zero for odd k.
pub fn gaussian_moment(k: u32, v: f64) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let half = k / 2;
    // (k-1)!! = k!/((k/2)! 2^{k/2})
    let mut double_fact = 1.0f64;
    let mut m = k as i64 - 1;
    while m > 1 {
        double_fact *= m as f64;
        m -= 2;
    }
    v.powi(half as i32) * double_fact
}

/// Moment table row: empirical k-th moment with standard error vs the
/// Gaussian reference at variance v.
#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub k: u32,
    pub empirical: f64,
    pub reference: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentTable {
    pub variance_parameter: f64,
    pub rows: Vec<MomentRow>,
}

/// Which sweep statistic the moment suite aggregates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    PX,
    /// P~_X - (1/2) ln X.
    PTildeCentered,
    /// (log |L(1/2+sigma0)| - (1/2) ln n) / sqrt(ln n).
    ADegree,
}

pub fn moment_suite(
    sample: &SweepSample,
    statistic: Statistic,
    k_max: u32,
) -> Result<MomentTable> {
    let values = extract_statistic(sample, statistic)?;
    let v = match statistic {
        Statistic::PX | Statistic::PTildeCentered => (sample.x as f64).ln(),
        Statistic::ADegree => 1.0,
    };
    Ok(moment_table_of(&values, v, k_max))
}

pub(crate) fn extract_statistic(sample: &SweepSample, statistic: Statistic) -> Result<Vec<f64>> {
    if sample.records.is_empty() {
        return Err(Error::EmptySample);
    }
    let lnx = (sample.x as f64).ln();
    let lnn = (sample.n as f64).ln();
    Ok(match statistic {
        Statistic::PX => sample.records.iter().map(|r| r.p_x).collect(),
        Statistic::PTildeCentered => sample
            .records
            .iter()
            .map(|r| r.p_tilde - 0.5 * lnx)
            .collect(),
        Statistic::ADegree => sample
            .records
            .iter()
            .map(|r| (r.log_l_sigma0 - 0.5 * lnn) / lnn.sqrt())
            .collect(),
    })
}

/// Empirical moments with jackknife-free standard errors
/// (SE of mean of x^k), paired with Gaussian references.
pub fn moment_table_of(values: &[f64], v: f64, k_max: u32) -> MomentTable {
    let n = values.len() as f64;
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let mut mean = 0.0f64;
        let mut comp = 0.0f64;
        for &x in values {
            kahan_add(&mut mean, &mut comp, x.powi(k as i32));
        }
        mean /= n;
        let mut var = 0.0f64;
        for &x in values {
            let d = x.powi(k as i32) - mean;
            var += d * d;
        }
        var /= n.max(2.0) - 1.0;
        rows.push(MomentRow {
            k,
            empirical: mean,
            reference: gaussian_moment(k, v),
            stderr: (var / n).sqrt(),
        });
    }
    MomentTable {
        variance_parameter: v,
        rows,
    }
}

#[inline]
fn kahan_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Compensated mean.
pub fn mean(values: &[f64]) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for &x in values {
        kahan_add(&mut s, &mut c, x);
    }
    s / values.len() as f64
}

pub fn variance(values: &[f64]) -> f64 {
    let m = mean(values);
    let mut s = 0.0;
    let mut c = 0.0;
    for &x in values {
        kahan_add(&mut s, &mut c, (x - m) * (x - m));
    }
    s / values.len() as f64
}

/// Kolmogorov-Smirnov distance of a sample against the standard normal.
pub fn ks_normal(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let n = v.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        let cdf = normal.cdf(x);
        sup = sup.max((cdf - i as f64 / n).abs());
        sup = sup.max(((i + 1) as f64 / n - cdf).abs());
    }
    sup
}

/// Empirical average of chi_D(f^2) over H_n against the exact main term
/// prod_{P | f} (1 + 1/|P|)^{-1}.
pub fn lemma32_average(field: &FieldSpec, n: u32, f: &Poly) -> Result<(f64, f64, f64)> {
    let span = (field.q() as f64).powi(n as i32);
    if span > 2e7 {
        return Err(Error::InfeasibleEnumeration(format!(
            "q^n = {span} monic polynomials"
        )));
    }
    let mut total = 0i64;
    let mut count = 0i64;
    if f.degree() == Some(0) {
        // chi_D(1) = 1 identically
        let hn = crate::family::family_count(field, FamilyKind::Squarefree, n) as f64;
        let _ = hn;
        return Ok((1.0, 1.0, 0.0));
    }
    let f2 = f.mul(f)?;
    for d in FamilyCursor::new(field, FamilyKind::Squarefree, n) {
        let chi = crate::char::chi_kernel(field, d.coeffs(), f2.coeffs());
        total += chi as i64;
        count += 1;
    }
    let empirical = total as f64 / count as f64;
    let mut main = 1.0f64;
    for (p, _) in f.factor()? {
        let norm = (field.q() as f64).powi(p.deg() as i32);
        main *= 1.0 / (1.0 + 1.0 / norm);
    }
    Ok((empirical, main, empirical - main))
}

/// Polya-Vinogradov extremes: the largest |sum_{D in H_n} chi_D(l)| over
/// non-square monic l of bounded degree, normalized by q^g |l_1|^{0.1}
/// with l_1 the square-free kernel of odd-exponent primes.
#[derive(Clone, Debug, Serialize)]
pub struct PvReport {
    pub max_ratio: f64,
    pub argmax: String,
    pub checked: usize,
}

pub fn pv_extremes(field: &FieldSpec, n: u32, l_degree_max: u32) -> Result<PvReport> {
    let lambda = if n % 2 == 0 { 1 } else { 0 };
    let g = (n - 1 - lambda) / 2;
    let qg = (field.q() as f64).powi(g as i32);
    // character values are accumulated per l over the family
    let mut max_ratio = 0.0f64;
    let mut argmax = String::new();
    let mut checked = 0usize;
    for dl in 1..=l_degree_max {
        for l in FamilyCursor::new(field, FamilyKind::Monic, dl) {
            let fac = l.factor()?;
            if fac.iter().all(|(_, m)| m % 2 == 0) {
                continue; // square l excluded by the hypothesis
            }
            let mut l1_norm = 1.0f64;
            for (p, m) in &fac {
                if m % 2 == 1 {
                    l1_norm *= (field.q() as f64).powi(p.deg() as i32);
                }
            }
            let mut total = 0i64;
            for d in FamilyCursor::new(field, FamilyKind::Squarefree, n) {
                total += crate::char::chi_kernel(field, d.coeffs(), l.coeffs()) as i64;
            }
            let ratio = (total as f64).abs() / (qg * l1_norm.powf(0.1));
            checked += 1;
            if ratio > max_ratio {
                max_ratio = ratio;
                argmax = l.to_string();
            }
        }
    }
    Ok(PvReport {
        max_ratio,
        argmax,
        checked,
    })
}

/// LHS/RHS ratio of the 2k-th moment bound for weighted prime sums
/// (constant sequence a(P) = a_val).
pub fn lemma31_ratio(field: &FieldSpec, n: u32, y: u32, k: u32, a_val: f64) -> Result<f64> {
    if 2 * k * y > n {
        return Err(Error::PreconditionViolated(format!(
            "need 2ky <= n; got 2*{k}*{y} > {n}"
        )));
    }
    let q = field.q() as f64;
    let mut lhs = 0.0f64;
    for d in FamilyCursor::new(field, FamilyKind::Squarefree, n) {
        let mut s = 0.0f64;
        for dp in 1..=y {
            let cnt = crate::selberg::chi_sum_over_primes(field, &d, dp, 1);
            s += a_val * cnt as f64 * q.powf(-(dp as f64) / 2.0);
        }
        lhs += s.powi(2 * k as i32);
    }
    let mut inner = 0.0f64;
    for dp in 1..=y {
        let cnt = crate::family::family_count(field, FamilyKind::Irreducible, dp) as f64;
        inner += a_val * a_val * cnt * q.powf(-(dp as f64));
    }
    let mut fact_ratio = 1.0f64; // (2k)!/(k! 2^k) = (2k-1)!!
    let mut m = 2 * k as i64 - 1;
    while m > 1 {
        fact_ratio *= m as f64;
        m -= 2;
    }
    let rhs = q.powi(n as i32) * fact_ratio * inner.powi(k as i32);
    if rhs == 0.0 {
        return Ok(if lhs == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(lhs / rhs)
}

/// k-th absolute moment of the X^{-3} Lambda_X functional over a set of
/// discriminants (exhaustive or sampled).
pub fn lemma36_moment(
    field: &FieldSpec,
    discs: &[Poly],
    policy: &CutoffPolicy,
    k: u32,
    n: u32,
) -> Result<(f64, f64)> {
    let x = policy.x();
    if !(((3 * k * x) as f64) < n as f64) {
        return Err(Error::PreconditionViolated(format!(
            "need X < n/(3k); got X={x}, n={n}, k={k}"
        )));
    }
    if discs.is_empty() {
        return Err(Error::EmptySample);
    }
    let q = field.q() as f64;
    let s0 = policy.sigma0();
    let mut acc = 0.0f64;
    for d in discs {
        let c = crate::lpoly::prime_power_sums(d, 3 * x)?;
        let mut s = 0.0f64;
        for m in 1..=3 * x {
            let w = crate::selberg::lambda_x_weight(m, x);
            if w != 0 {
                s += (w * c[m as usize - 1]) as f64 * q.powf(-(m as f64) * (0.5 + s0));
            }
        }
        acc += (s / (x as f64).powi(3)).abs().powi(k as i32);
    }
    let lhs = acc / discs.len() as f64;
    let rhs = (18.0 * k as f64 / std::f64::consts::E).powf(k as f64 / 2.0)
        + (4.0 / x as f64).powi(k as i32);
    Ok((lhs, rhs))
}

/// Fraction of records with min_j |theta_j| < 1/(y*delta). Records with
/// delta = 0 have no zeros, min = +inf, and never fall below the
/// threshold.
pub fn min_theta_fraction(sample: &SweepSample, y: f64) -> f64 {
    if sample.records.is_empty() {
        return 0.0;
    }
    let hits = sample
        .records
        .iter()
        .filter(|r| r.delta > 0 && r.min_abs_theta() < 1.0 / (y * r.delta as f64))
        .count();
    hits as f64 / sample.records.len() as f64
}

/// Sub-sample passing the low-zero floor min|theta| > 1/(y*delta) AND
/// carrying a nonzero central value. Returns the filtered sample, the
/// excluded low-zero fraction, and the vanishing-central-value count.
pub fn hn0_filter(sample: &SweepSample, y: f64) -> (SweepSample, f64, usize) {
    let mut kept = Vec::new();
    let mut vanishing = 0usize;
    let mut low = 0usize;
    for r in &sample.records {
        if r.log_l_half.is_none() {
            vanishing += 1;
            continue;
        }
        let pass = r.delta == 0 || r.min_abs_theta() > 1.0 / (y * r.delta as f64);
        if pass {
            kept.push(r.clone());
        } else {
            low += 1;
        }
    }
    let excluded = low as f64 / sample.records.len().max(1) as f64;
    (
        SweepSample {
            records: kept,
            ..sample.clone()
        },
        excluded,
        vanishing,
    )
}

/// Even nonnegative test functions with a closed predicted integral
/// against the symplectic kernel W(Sp)(x) = 1 - sin(2 pi x)/(2 pi x).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum TestFunction {
    /// exp(-x^2/(2 s^2)) / (s sqrt(2 pi)), unit mass.
    GaussianBump { scale: f64 },
    /// s (sin(pi s x)/(pi s x))^2, unit mass.
    Fejer { scale: f64 },
    /// cos^2(pi x / (2 s)) on |x| <= s, else 0.
    CosineWindow { scale: f64 },
}

impl TestFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            TestFunction::GaussianBump { scale } => {
                (-x * x / (2.0 * scale * scale)).exp()
                    / (scale * (2.0 * std::f64::consts::PI).sqrt())
            }
            TestFunction::Fejer { scale } => {
                let u = std::f64::consts::PI * scale * x;
                if u.abs() < 1e-12 {
                    scale
                } else {
                    scale * (u.sin() / u).powi(2)
                }
            }
            TestFunction::CosineWindow { scale } => {
                if x.abs() > scale {
                    0.0
                } else {
                    (std::f64::consts::PI * x / (2.0 * scale)).cos().powi(2)
                }
            }
        }
    }

    fn support_halfwidth(&self) -> f64 {
        match *self {
            TestFunction::GaussianBump { scale } => 12.0 * scale,
            TestFunction::Fejer { scale } => 80.0 / scale,
            TestFunction::CosineWindow { scale } => scale,
        }
    }

    /// Predicted integral of f against W(Sp) by adaptive Simpson.
    pub fn predicted_density_integral(&self) -> f64 {
        let w_sp = |x: f64| {
            let u = 2.0 * std::f64::consts::PI * x;
            if u.abs() < 1e-9 {
                1.0 - (1.0 - u * u / 6.0)
            } else {
                1.0 - u.sin() / u
            }
        };
        let g = |x: f64| self.eval(x) * w_sp(x);
        let l = self.support_halfwidth();
        adaptive_simpson(&g, -l, l, 1e-11, 30)
    }
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, left, tol / 2.0, depth - 1) + rec(f, m, b, right, tol / 2.0, depth - 1)
        }
    }
    let whole = simpson(f, a, b);
    rec(f, a, b, whole, tol, depth)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroNormalization {
    /// scale = 2*delta (mean-spacing units); the calibrated default.
    TwoDeltaTheta,
    /// scale = delta.
    DeltaTheta,
}

/// Default fixed by the calibration run (see module docs).
pub const DEFAULT_NORMALIZATION: ZeroNormalization = ZeroNormalization::TwoDeltaTheta;

/// One-level density: empirical average over D of sum_j f(scale*theta_j)
/// against the predicted integral of f times the symplectic kernel.
pub fn one_level_density(
    sample: &SweepSample,
    f: &TestFunction,
    normalization: ZeroNormalization,
) -> (f64, f64) {
    let predicted = f.predicted_density_integral();
    if sample.records.is_empty() {
        return (0.0, predicted);
    }
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for r in &sample.records {
        let scale = match normalization {
            ZeroNormalization::TwoDeltaTheta => 2.0 * r.delta as f64,
            ZeroNormalization::DeltaTheta => r.delta as f64,
        };
        let mut s = 0.0;
        for &th in &r.thetas {
            s += f.eval(scale * th);
        }
        kahan_add(&mut acc, &mut comp, s);
    }
    (acc / sample.records.len() as f64, predicted)
}

/// Scaled-zero histogram over [-range, range] against W(Sp) on the same
/// grid; plot-ready (x_lo, x_hi, count, density, predicted).
pub fn density_histogram(
    sample: &SweepSample,
    normalization: ZeroNormalization,
    range: f64,
    bins: usize,
) -> Vec<(f64, f64, u64, f64, f64)> {
    let mut counts = vec![0u64; bins];
    let width = 2.0 * range / bins as f64;
    for r in &sample.records {
        let scale = match normalization {
            ZeroNormalization::TwoDeltaTheta => 2.0 * r.delta as f64,
            ZeroNormalization::DeltaTheta => r.delta as f64,
        };
        for &th in &r.thetas {
            let x = scale * th;
            if x >= -range && x < range {
                let b = ((x + range) / width) as usize;
                counts[b.min(bins - 1)] += 1;
            }
        }
    }
    let records = sample.records.len().max(1) as f64;
    counts
        .iter()
        .enumerate()
        .map(|(b, &c)| {
            let lo = -range + b as f64 * width;
            let hi = lo + width;
            let mid = 0.5 * (lo + hi);
            let u = 2.0 * std::f64::consts::PI * mid;
            let w_sp = if u.abs() < 1e-9 { 0.0 } else { 1.0 - u.sin() / u };
            (lo, hi, c, c as f64 / (records * width), w_sp)
        })
        .collect()
}

/// Per-n CLT summary.
#[derive(Clone, Debug, Serialize)]
pub struct CltRow {
    pub n: u32,
    pub x: u32,
    pub sigma0: f64,
    pub count: usize,
    pub vanishing: usize,
    pub mean_log_l: f64,
    pub var_log_l: f64,
    /// mean / ((1/2) ln n)
    pub mean_ratio_n: f64,
    /// var / ln n
    pub var_ratio_n: f64,
    /// mean / ((1/2) ln X)
    pub mean_ratio_x: f64,
    /// var / ln X
    pub var_ratio_x: f64,
    pub skewness: f64,
    pub skewness_se: f64,
    pub excess_kurtosis: f64,
    pub kurtosis_se: f64,
    /// KS of (log|L| - (1/2) ln n)/sqrt(ln n) against N(0, 1).
    pub ks_degree: f64,
    /// KS of (log|L| - (1/2) ln X)/sqrt(ln X) against N(0, 1).
    pub ks_cutoff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CltReport {
    pub rows: Vec<CltRow>,
}

pub fn clt_report(samples: &[SweepSample]) -> Result<CltReport> {
    let mut rows = Vec::new();
    for s in samples {
        if s.records.is_empty() {
            return Err(Error::EmptySample);
        }
        let vals: Vec<f64> = s.records.iter().map(|r| r.log_l_sigma0).collect();
        let m = mean(&vals);
        let v = variance(&vals);
        let sd = v.sqrt();
        let nn = vals.len() as f64;
        let mut m3 = 0.0;
        let mut m4 = 0.0;
        for &x in &vals {
            let z = x - m;
            m3 += z * z * z;
            m4 += z * z * z * z;
        }
        m3 /= nn;
        m4 /= nn;
        let lnn = (s.n as f64).ln();
        let lnx = (s.x as f64).ln();
        let a_deg: Vec<f64> = vals.iter().map(|&x| (x - 0.5 * lnn) / lnn.sqrt()).collect();
        let a_cut: Vec<f64> = vals.iter().map(|&x| (x - 0.5 * lnx) / lnx.sqrt()).collect();
        let vanishing = s.records.iter().filter(|r| r.log_l_half.is_none()).count();
        rows.push(CltRow {
            n: s.n,
            x: s.x,
            sigma0: CutoffPolicy::new(s.q, s.x, s.c)?.sigma0(),
            count: vals.len(),
            vanishing,
            mean_log_l: m,
            var_log_l: v,
            mean_ratio_n: m / (0.5 * lnn),
            var_ratio_n: v / lnn,
            mean_ratio_x: m / (0.5 * lnx),
            var_ratio_x: v / lnx,
            skewness: m3 / sd.powi(3),
            skewness_se: (6.0 / nn).sqrt(),
            excess_kurtosis: m4 / (v * v) - 3.0,
            kurtosis_se: (24.0 / nn).sqrt(),
            ks_degree: ks_normal(&a_deg),
            ks_cutoff: ks_normal(&a_cut),
        });
    }
    Ok(CltReport { rows })
}

/// Histogram of raw values; plot-ready (bin_lo, bin_hi, count, density).
pub fn histogram(values: &[f64], bins: usize) -> Vec<(f64, f64, u64, f64)> {
    if values.is_empty() {
        return Vec::new();
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = ((hi - lo) / bins as f64).max(1e-12);
    let mut counts = vec![0u64; bins];
    for &x in values {
        let b = (((x - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let n = values.len() as f64;
    counts
        .iter()
        .enumerate()
        .map(|(b, &c)| {
            let a = lo + b as f64 * width;
            (a, a + width, c, c as f64 / (n * width))
        })
        .collect()
}

/// Build one sweep record from an LData (shared by the sweep harness and
/// the in-memory drivers).
pub fn record_of(ld: &LData, policy: &CutoffPolicy) -> Result<SweepRecord> {
    let phases = ld.eigenphases()?;
    let cv = ld.central_value()?;
    let log_l_half = if cv.vanishing {
        None
    } else {
        Some(ld.central_approx()?.abs().ln())
    };
    let s = num_complex::Complex64::new(0.5 + policy.sigma0(), 0.0);
    let log_l_sigma0 = ld.eval_s(s, crate::lpoly::LVariant::Full)?.norm().ln();
    Ok(SweepRecord {
        d: ld.discriminant().coeffs().to_vec(),
        lambda: ld.lambda(),
        delta: ld.delta(),
        p_x: crate::selberg::p_sum(ld, policy),
        p_tilde: crate::selberg::p_tilde(ld, policy),
        log_l_sigma0,
        log_l_half,
        thetas: phases.thetas,
    })
}
