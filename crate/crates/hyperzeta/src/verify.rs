//! The `verify` suites: pinned desk-scale runs of the module invariants
//! with one reported margin per check.

use crate::error::Result;
use crate::family::{self, FamilyCursor, FamilyKind};
use crate::field::field_create;
use crate::lpoly::{point_char_sums, prime_power_sums, LData};
use crate::poly::{parse_poly, Poly};
use crate::selberg::{
    self, integral_weight_check, lambda_x_weight, lambda_x_weight_alt_middle, residue_identity,
    residue_identity_with_weight, six_identity, seven_inequality, truncated_prime_sum,
    zero_sum_bounds, CutoffPolicy,
};
use crate::stats;
use crate::sweep::{sample_in_memory, RunConfig, DEFAULT_BUDGET};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Arith,
    Identities,
    Lemmas,
    CltSmoke,
}

/// One verification check: passes when `margin >= 0`. The margin is
/// "distance inside the tolerance" in the check's own units.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub tolerance: f64,
    pub margin: f64,
    pub pass: bool,
}

fn check(name: impl Into<String>, tolerance: f64, margin: f64) -> Check {
    Check {
        name: name.into(),
        tolerance,
        margin,
        pass: margin >= 0.0,
    }
}

/// Observed worst error `err` against tolerance `tol`: margin = tol - err.
fn check_err(name: impl Into<String>, tol: f64, err: f64) -> Check {
    check(name, tol, tol - err)
}

pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::Arith => suite_arith(),
        Suite::Identities => suite_identities(),
        Suite::Lemmas => suite_lemmas(),
        Suite::CltSmoke => suite_clt_smoke(),
    }
}

fn suite_arith() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    // family counts against closed forms
    let mut worst = f64::INFINITY;
    for p in [3u64, 5] {
        let f = field_create(p, 1, None)?;
        let n_max = if p == 3 { 6 } else { 4 };
        for n in 1..=n_max {
            for kind in [
                FamilyKind::Monic,
                FamilyKind::Irreducible,
                FamilyKind::Squarefree,
            ] {
                let (it, count) = family::enumerate_family(&f, kind, n);
                let got = it.count() as i64 - count as i64;
                worst = worst.min(-(got.abs() as f64));
            }
        }
    }
    out.push(check("family counts = closed forms (q in {3,5})", 0.0, worst));

    // prime polynomial theorem window
    let mut margin = f64::INFINITY;
    for p in [3u64, 5, 7] {
        let f = field_create(p, 1, None)?;
        let n_max = if p == 3 { 8 } else { 6 };
        for n in 1..=n_max {
            let cnt = family::family_count(&f, FamilyKind::Irreducible, n) as f64;
            let main = (p as f64).powi(n as i32) / n as f64;
            let window = 2.0 * (p as f64).powf(n as f64 / 2.0) / n as f64;
            margin = margin.min(window - (cnt - main).abs());
        }
    }
    out.push(check("prime polynomial theorem |P_n| window", 0.0, margin));

    // derivative criterion vs full factorization, n <= 5
    let f3 = field_create(3, 1, None)?;
    let mut ok = true;
    for n in 1..=5u32 {
        for g in FamilyCursor::new(&f3, FamilyKind::Monic, n) {
            let by_gcd = g.is_squarefree()?;
            let by_factor = g.factor()?.iter().all(|(_, m)| *m == 1);
            ok &= by_gcd == by_factor;
        }
    }
    out.push(check(
        "square-free gcd criterion = factorization (n <= 5)",
        0.0,
        if ok { 0.0 } else { -1.0 },
    ));

    // reciprocity law on random coprime monic pairs
    let mut rng = ChaCha12Rng::seed_from_u64(2);
    let mut ok = true;
    for p in [3u64, 5, 7] {
        let f = field_create(p, 1, None)?;
        let qhalf = (p - 1) / 2;
        let mut done = 0;
        while done < 3000 {
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
            if a.gcd(&b)?.deg() != 0 {
                continue;
            }
            let lhs = crate::char::residue_symbol(&a, &b)? as i32
                * crate::char::residue_symbol(&b, &a)? as i32;
            let rhs = if qhalf * da as u64 * db as u64 % 2 == 1 {
                -1
            } else {
                1
            };
            ok &= lhs == rhs;
            done += 1;
        }
    }
    out.push(check(
        "reciprocity law, 3000 random pairs per field",
        0.0,
        if ok { 0.0 } else { -1.0 },
    ));

    // fast symbol = factoring oracle, exhaustive small
    let mut ok = true;
    for nd in 1..=3u32 {
        for d in FamilyCursor::new(&f3, FamilyKind::Squarefree, nd) {
            let h = crate::char::CharacterHandle::new(d)?;
            for nf in 0..=4u32 {
                for m in FamilyCursor::new(&f3, FamilyKind::Monic, nf) {
                    ok &= h.chi(&m)? == h.chi_oracle(&m)?;
                }
            }
        }
    }
    out.push(check(
        "chi = chi_oracle exhaustively (d(D)<=3, d(f)<=4)",
        0.0,
        if ok { 0.0 } else { -1.0 },
    ));

    // full-field cancellation
    let mut ok = true;
    for nd in 1..=3u32 {
        for d in FamilyCursor::new(&f3, FamilyKind::Squarefree, nd) {
            let h = crate::char::CharacterHandle::new(d)?;
            for n in nd..=5u32 {
                let sum: i64 = FamilyCursor::new(&f3, FamilyKind::Monic, n)
                    .map(|m| h.chi(&m).unwrap() as i64)
                    .sum();
                ok &= sum == 0;
            }
        }
    }
    out.push(check(
        "full-field cancellation sum chi_D over M_n, n >= d(D)",
        0.0,
        if ok { 0.0 } else { -1.0 },
    ));
    Ok(out)
}

fn suite_identities() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f3 = field_create(3, 1, None)?;

    // dual construction + symmetry + dichotomy + RH, exhaustive n <= 6
    let mut dual_ok = true;
    let mut dichotomy_ok = true;
    let mut worst_residual = 0.0f64;
    for n in 2..=6u32 {
        for d in FamilyCursor::new(&f3, FamilyKind::Squarefree, n) {
            let a = LData::charsum(&d)?;
            let b = LData::powersum(&d)?;
            dual_ok &= a == b;
            let sum: i64 = a.coeffs().iter().sum();
            dichotomy_ok &= (sum == 0) == (n % 2 == 0);
            worst_residual = worst_residual.max(a.eigenphases()?.residual);
        }
    }
    out.push(check(
        "charsum = powersum exactly, exhaustive n <= 6",
        0.0,
        if dual_ok { 0.0 } else { -1.0 },
    ));
    out.push(check(
        "trivial-zero dichotomy sum a_k = 0 iff n even",
        0.0,
        if dichotomy_ok { 0.0 } else { -1.0 },
    ));
    out.push(check_err(
        "zeros on the critical circle (relative)",
        1e-8,
        worst_residual,
    ));

    // integral weight identity
    let mut worst = 0.0f64;
    for x in [0u32, 1, 3, 6] {
        for s in [Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)] {
            let (num, closed) = integral_weight_check(3, x, s, 64);
            worst = worst.max((num - closed).norm());
        }
    }
    out.push(check_err("contour weight integral vs closed form", 1e-8, worst));

    // residue identity on seeded random D at n = 9
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let d = family::sample_squarefree(&f3, 9, &mut rng)?;
        let ld = LData::powersum(&d)?;
        let ph = ld.eigenphases()?;
        for x in [2u32, 3] {
            let policy = CutoffPolicy::with_default_c(3, x)?;
            let s = Complex64::new(0.5 + policy.sigma0(), 0.0);
            let (lhs, rhs) = residue_identity(&ld, &ph, &policy, s)?;
            worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
    }
    out.push(check_err(
        "residue identity -L'/L (20 seeded D, n=9, X in {2,3})",
        1e-9,
        worst,
    ));

    // the rejected middle branch must fail the identity (fault witness)
    let d = family::sample_squarefree(&f3, 9, &mut rng)?;
    let ld = LData::powersum(&d)?;
    let ph = ld.eigenphases()?;
    let policy = CutoffPolicy::with_default_c(3, 2)?;
    let s = Complex64::new(0.5 + policy.sigma0(), 0.0);
    let (lhs, rhs) = residue_identity_with_weight(&ld, &ph, &policy, s, lambda_x_weight_alt_middle)?;
    out.push(check(
        "regression witness: alternative middle branch breaks the identity",
        1e-3,
        (lhs - rhs).norm() - 1e-3,
    ));

    // identity of the log difference and the inequality slack
    let policy3 = CutoffPolicy::with_default_c(3, 3)?;
    let mut worst_six = 0.0f64;
    let mut worst_slack = f64::INFINITY;
    for n in [5u32, 6] {
        for d in FamilyCursor::new(&f3, FamilyKind::Squarefree, n) {
            let ld = LData::powersum(&d)?;
            if ld.central_value()?.vanishing {
                continue;
            }
            let ph = ld.eigenphases()?;
            let (lhs, rhs) = six_identity(&ld, &ph, &policy3)?;
            worst_six = worst_six.max((lhs - rhs).abs());
            worst_slack = worst_slack.min(seven_inequality(&ld, &policy3)?);
        }
    }
    out.push(check_err(
        "log-difference identity, exhaustive n in {5,6}",
        1e-8,
        worst_six,
    ));
    out.push(check(
        "upper-bound slack >= 0, exhaustive n in {5,6}",
        1e-10,
        worst_slack + 1e-10,
    ));

    // power-sum identity c_m vs eigenphases
    let mut worst = 0.0f64;
    for d in FamilyCursor::new(&f3, FamilyKind::Squarefree, 6).take(60) {
        let ld = LData::powersum(&d)?;
        let ph = ld.eigenphases()?;
        let c = prime_power_sums(&d, 2 * ld.delta())?;
        for (m, &cm) in c.iter().enumerate() {
            let mm = (m + 1) as f64;
            let zs: f64 = ph.thetas.iter().map(|&t| (2.0 * std::f64::consts::PI * mm * t).cos()).sum();
            let predicted = -(ld.lambda() as f64) - 3f64.powf(mm / 2.0) * zs;
            worst = worst.max((cm as f64 - predicted).abs());
        }
    }
    out.push(check_err("power-sum identity c_m from zeros", 1e-7, worst));

    // affine point counts vs prime sums
    let mut ok = true;
    for nd in [3u32, 4] {
        for d in FamilyCursor::new(&f3, FamilyKind::Squarefree, nd).take(10) {
            let c = prime_power_sums(&d, 3)?;
            for m in 1..=3u32 {
                ok &= point_char_sums(&d, m)? == c[m as usize - 1];
            }
        }
    }
    out.push(check(
        "extension point sums S_m = c_m",
        0.0,
        if ok { 0.0 } else { -1.0 },
    ));

    // fault injection: a corrupted reduced coefficient must be rejected
    let d = parse_poly(&f3, "t^5+t+1")?;
    let ld = LData::charsum(&d)?;
    let mut bad = ld.lstar_coeffs().to_vec();
    bad[1] += 1;
    let rejected = matches!(
        LData::from_parts(f3.clone(), d, ld.lambda(), ld.delta(), bad),
        Err(crate::error::Error::SymmetryViolation(_))
    );
    out.push(check(
        "fault injection: corrupted lstar raises SymmetryViolation",
        0.0,
        if rejected { 0.0 } else { -1.0 },
    ));
    Ok(out)
}

fn suite_lemmas() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f3 = field_create(3, 1, None)?;

    // exact family averages of chi_D(f^2)
    let mut worst = 0.0f64;
    for text in ["t", "t+1", "t^2+t"] {
        let fp = parse_poly(&f3, text)?;
        let (_, _, diff) = stats::lemma32_average(&f3, 6, &fp)?;
        worst = worst.max(diff.abs());
    }
    out.push(check_err(
        "family average of chi(f^2) vs product main term (n=6)",
        3f64.powi(-6),
        worst,
    ));

    // square-cancellation extremes
    let rep = stats::pv_extremes(&f3, 6, 4)?;
    out.push(check(
        "character-sum extremes over non-squares (n=6, d(l)<=4)",
        50.0,
        50.0 - rep.max_ratio,
    ));

    // 2k-th moment bound ratio
    let r = stats::lemma31_ratio(&f3, 8, 2, 1, 1.0)?;
    out.push(check("weighted prime-sum moment ratio (k=1, y=2, n=8)", 5.0, 5.0 - r));

    // mean-square of the smoothed functional (shape-conforming parameters)
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let discs: Vec<Poly> = (0..400)
        .map(|_| family::sample_squarefree(&f3, 13, &mut rng).unwrap())
        .collect();
    let policy = CutoffPolicy::with_default_c(3, 2)?;
    let (lhs, _) = stats::lemma36_moment(&f3, &discs, &policy, 2, 13)?;
    out.push(check(
        "smoothed-functional mean square O(1) (k=2, X=2, n=13 sampled)",
        100.0,
        100.0 - lhs,
    ));

    // truncated prime sum near ln K
    let mut worst = 0.0f64;
    for q in [3u64, 5] {
        let f = field_create(q, 1, None)?;
        for k in 2..=12u32 {
            let (_, dev) = truncated_prime_sum(&f, k, 0.01)?;
            worst = worst.max(dev.abs());
        }
    }
    out.push(check("truncated prime sum within O(1) of ln K", 2.0, 2.0 - worst));

    // zero-sum inequalities
    let policy = CutoffPolicy::with_default_c(3, 2)?;
    let s0 = policy.sigma0();
    let mut worst = f64::INFINITY;
    for d in FamilyCursor::new(&f3, FamilyKind::Squarefree, 6).take(60) {
        let ld = LData::powersum(&d)?;
        let ph = ld.eigenphases()?;
        for sigma in [0.5 + s0, 0.75, 1.0] {
            let rep = zero_sum_bounds(&ld, &ph, &policy, sigma, 2)?;
            worst = worst
                .min(rep.per_zero_first)
                .min(rep.per_zero_second)
                .min(rep.aggregate);
        }
    }
    out.push(check("per-zero and aggregate zero-sum bounds", 1e-10, worst + 1e-10));
    Ok(out)
}

fn suite_clt_smoke() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    // statistics engine against synthetic normal draws
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    let vals: Vec<f64> = (0..200_000)
        .map(|_| rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut rng))
        .collect();
    let table = stats::moment_table_of(&vals, 1.0, 6);
    let mut worst = f64::INFINITY;
    for row in &table.rows {
        worst = worst.min(5.0 * row.stderr - (row.empirical - row.reference).abs());
    }
    out.push(check("synthetic normal: moments within 5 SE (k<=6)", 0.0, worst));
    out.push(check_err(
        "synthetic normal: KS distance",
        0.004,
        stats::ks_normal(&vals),
    ));

    // small sampled pipeline at n = 9
    let cfg = RunConfig {
        p: 3,
        e: 1,
        n: 9,
        full: false,
        samples: 2000,
        seed: 5,
        x: 3,
        c: None,
        threads: 0,
        budget: DEFAULT_BUDGET,
    };
    let sample = sample_in_memory(&cfg)?;
    let report = stats::clt_report(std::slice::from_ref(&sample))?;
    let row = &report.rows[0];
    out.push(check(
        "smoke sweep: mean/(ln X /2) in [0.5, 2.0]",
        0.0,
        (row.mean_ratio_x - 0.5).min(2.0 - row.mean_ratio_x),
    ));
    out.push(check(
        "smoke sweep: var/ln X in [0.5, 2.0]",
        0.0,
        (row.var_ratio_x - 0.5).min(2.0 - row.var_ratio_x),
    ));
    out.push(check_err("smoke sweep: KS (cutoff standardization)", 0.15, row.ks_cutoff));

    // low-zero fractions are nested in y
    let mut prev = 1.0f64;
    let mut ok = true;
    for y in [0.5, 1.0, 2.0, 4.0] {
        let frac = stats::min_theta_fraction(&sample, y);
        ok &= frac <= prev + 1e-15;
        prev = frac;
    }
    out.push(check("low-zero fractions non-increasing in y", 0.0, if ok { 0.0 } else { -1.0 }));

    // one-level density calibration: the mean-spacing normalization must
    // beat the delta-theta one for the unit-mass bump
    let bump = stats::TestFunction::GaussianBump { scale: 1.0 };
    let (e2, p2) = stats::one_level_density(&sample, &bump, stats::ZeroNormalization::TwoDeltaTheta);
    let (e1, p1) = stats::one_level_density(&sample, &bump, stats::ZeroNormalization::DeltaTheta);
    out.push(check(
        "density calibration: 2*delta*theta closer to the symplectic prediction",
        0.0,
        (e1 - p1).abs() - (e2 - p2).abs(),
    ));
    Ok(out)
}

/// Render checks as a fixed-width report; returns overall pass.
pub fn print_report(suite_name: &str, checks: &[Check]) -> bool {
    let mut all = true;
    println!("verify suite: {suite_name}");
    for c in checks {
        all &= c.pass;
        println!(
            "  [{}] {:<68} tol={:<9.3e} margin={:+.3e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.tolerance,
            c.margin
        );
    }
    println!(
        "  => {}: {} of {} checks passed",
        if all { "OK" } else { "FAILED" },
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    );
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arith_suite_passes() {
        let checks = run_suite(Suite::Arith).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn lemmas_suite_passes() {
        let checks = run_suite(Suite::Lemmas).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
