//! Polynomial root finding for the reduced L-polynomials.
//!
//! Aberth-Ehrlich simultaneous iteration on complex doubles followed by a
//! Newton polish. Degrees stay small (2*delta, at most a few dozen at desk
//! scale) and the roots are known to sit on a circle, which makes the
//! initial guesses nearly exact and the conditioning benign.

use num_complex::Complex64;

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of sum c_k z^k with c_deg != 0. `radius_hint`
/// seeds the iteration on a circle of that radius when given.
pub fn polynomial_roots(coeffs: &[Complex64], radius_hint: Option<f64>) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();

    let radius = radius_hint.unwrap_or_else(|| {
        // Cauchy bound
        let m = monic[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        1.0 + m
    });

    let mut z: Vec<Complex64> = (0..deg)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64 + 0.37) / deg as f64 + 0.11;
            radius * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    let tol = 1e-14 * radius.max(1e-300);
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for j in 0..deg {
            let (p, dp) = eval_with_derivative(&monic, z[j]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() == 0.0 {
                Complex64::new(tol, tol)
            } else {
                p / dp
            };
            let mut s = Complex64::new(0.0, 0.0);
            for (k, zk) in z.iter().enumerate() {
                if k != j {
                    s += 1.0 / (z[j] - zk);
                }
            }
            let denom = 1.0 - w * s;
            let step = if denom.norm() < 1e-30 { w } else { w / denom };
            z[j] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < tol {
            break;
        }
    }
    // Newton polish
    for zj in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&monic, *zj);
            if dp.norm() > 0.0 {
                *zj -= p / dp;
            }
        }
    }
    z
}
