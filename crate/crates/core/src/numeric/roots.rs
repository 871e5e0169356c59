use num_complex::Complex64;
use serde::Serialize;

use super::{ComplexF, NumericError};

pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 500;
/// Residual ceiling for roots that sit in a numerical cluster.
pub const CLUSTER_RESIDUAL_TOL: f64 = 1e-6;

// Angular offset of the initial guesses (golden angle, in radians).
const ROTATION: f64 = 2.399_963_229_728_653;

/// All roots of a polynomial with their relative residuals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSet {
    pub roots: Vec<ComplexF>,
    /// [`relative_residual`] of each root.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|p(z)| / Σ |a_k| max(1, |z|)^k`: the coefficient scale, grown by the
/// magnitude of `z` when it lies outside the unit disk.
pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm().max(1.0);
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    if scale == 0.0 {
        return 0.0;
    }
    horner(coeffs, z).norm() / scale
}

/// Roots with the default tolerance and iteration cap.
pub fn find_roots(coeffs: &[ComplexF], tol: f64) -> Result<RootSet, NumericError> {
    find_roots_with(coeffs, tol, DEFAULT_MAX_ITER)
}

/// Durand–Kerner (Weierstrass) simultaneous iteration.
///
/// `coeffs[k]` multiplies `z^k`. Initial guesses lie on the circle of radius
/// `1 + max |a_k / a_n|`, rotated by a fixed irrational angle. Iteration stops
/// when every correction is below `tol · max(1, max |z|)`; roots that then
/// fail the residual bound are accepted only inside a cluster (multiple
/// roots) and up to [`CLUSTER_RESIDUAL_TOL`].
pub fn find_roots_with(
    coeffs: &[ComplexF],
    tol: f64,
    max_iter: usize,
) -> Result<RootSet, NumericError> {
    let n = coeffs
        .len()
        .checked_sub(1)
        .ok_or(NumericError::DegreeZero)?;
    if n == 0 {
        return Err(NumericError::DegreeZero);
    }
    let lead = coeffs[n];
    if lead.norm() == 0.0 || !lead.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(NumericError::InvalidCoefficients);
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();

    if n == 1 {
        let root = -monic[0];
        return Ok(RootSet {
            residuals: vec![relative_residual(coeffs, root)],
            roots: vec![root],
            iterations: 0,
        });
    }

    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + ROTATION;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            let num = horner(&monic, z[k]);
            let step = if denom.norm() == 0.0 {
                // Coincident estimates: nudge apart deterministically.
                Complex64::from_polar(tol.max(1e-12) * radius, ROTATION * (k as f64 + 1.0))
            } else {
                num / denom
            };
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        let zmax = z.iter().map(|w| w.norm()).fold(1.0, f64::max);
        if max_step < tol * zmax {
            break;
        }
    }

    // A couple of guarded Newton steps tighten simple roots.
    for w in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner_with_derivative(&monic, *w);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *w - p / dp;
            if cand.is_finite() && horner(&monic, cand).norm() < p.norm() {
                *w = cand;
            } else {
                break;
            }
        }
    }

    if z.iter().any(|w| !w.is_finite()) {
        return Err(NumericError::NoConvergence { iterations });
    }
    let residuals: Vec<f64> = z.iter().map(|&w| relative_residual(coeffs, w)).collect();
    let cluster = |k: usize| {
        let r = 1e-3 * z[k].norm().max(1.0);
        (0..n).any(|j| j != k && (z[j] - z[k]).norm() <= r)
    };
    let all_ok = residuals
        .iter()
        .enumerate()
        .all(|(k, &res)| res <= tol || (cluster(k) && res <= CLUSTER_RESIDUAL_TOL.max(tol)));
    if !all_ok {
        return Err(NumericError::NoConvergence { iterations });
    }
    Ok(RootSet {
        roots: z,
        residuals,
        iterations,
    })
}

/// Expands `lead · ∏ (z - r)` into coefficients, constant term first.
pub fn poly_from_roots(lead: ComplexF, roots: &[ComplexF]) -> Vec<ComplexF> {
    let mut c = vec![lead];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_roots_of_one() {
        let rs = find_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], DEFAULT_ROOT_TOL).unwrap();
        let mut re: Vec<f64> = rs.roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
        assert!(rs.roots.iter().all(|z| z.im.abs() < 1e-12));
        assert!(rs.residuals.iter().all(|&r| r < 1e-14));
    }

    #[test]
    fn triple_root_at_origin() {
        let zero = c(0.0, 0.0);
        let rs = find_roots(&[zero, zero, zero, c(1.0, 0.0)], DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(rs.roots.len(), 3);
        assert!(rs.roots.iter().all(|z| z.norm() < DEFAULT_ROOT_TOL));
    }

    #[test]
    fn double_root_off_origin() {
        // (z - 2)^2 (z + i)
        let p = poly_from_roots(c(1.0, 0.0), &[c(2.0, 0.0), c(2.0, 0.0), c(0.0, -1.0)]);
        let rs = find_roots(&p, DEFAULT_ROOT_TOL).unwrap();
        let near_two = rs
            .roots
            .iter()
            .filter(|z| (*z - c(2.0, 0.0)).norm() < 1e-6)
            .count();
        assert_eq!(near_two, 2);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            find_roots(&[c(3.0, 0.0)], 1e-10),
            Err(NumericError::DegreeZero)
        ));
        assert!(matches!(
            find_roots(&[c(1.0, 0.0), c(0.0, 0.0)], 1e-10),
            Err(NumericError::InvalidCoefficients)
        ));
    }

    #[test]
    fn deterministic() {
        let p = poly_from_roots(
            c(2.0, 1.0),
            &[c(0.3, 0.1), c(-1.0, 2.0), c(0.5, -0.7), c(3.0, 0.0)],
        );
        assert_eq!(
            find_roots(&p, 1e-10).unwrap(),
            find_roots(&p, 1e-10).unwrap()
        );
    }

    #[test]
    fn iteration_cap_reports_no_convergence() {
        let p = poly_from_roots(c(1.0, 0.0), &[c(0.3, 0.1), c(-1.0, 2.0), c(0.5, -0.7)]);
        assert!(matches!(
            find_roots_with(&p, 1e-10, 1),
            Err(NumericError::NoConvergence { .. })
        ));
    }
}
