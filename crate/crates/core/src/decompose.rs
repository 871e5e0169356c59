//! `f = h(P)`: exact peeling and numeric reconstruction of `h`.

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{GaussianRational, Polynomial, UnivariatePoly};
use crate::leaf::{self, generic_levels, Grid};
use crate::numeric::{CompiledPoly, ComplexF};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NotDecomposableReason {
    /// `deg P` does not divide `deg f`.
    DegreeMismatch,
    /// The top homogeneous part of `f` is not a multiple of a power of that of `P`.
    LeadingFormMismatch,
    /// Peeling stopped on a remainder that is not of the form `h(P)`.
    ResidualNonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum DecompositionResult {
    Found {
        h: UnivariatePoly,
    },
    NotDecomposable {
        reason: NotDecomposableReason,
        /// What was left of `f` when peeling stopped.
        remainder: Polynomial,
    },
}

impl DecompositionResult {
    pub fn is_found(&self) -> bool {
        matches!(self, DecompositionResult::Found { .. })
    }

    pub fn h(&self) -> Option<&UnivariatePoly> {
        match self {
            DecompositionResult::Found { h } => Some(h),
            DecompositionResult::NotDecomposable { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecomposeError {
    #[error("P is constant")]
    ConstantP,
    #[error("could not sample a point on the level curve P = {level}")]
    LeafSamplingFailed { level: ComplexF },
}

/// `h(P)` by Horner's rule in the polynomial ring.
pub fn compose(h: &UnivariatePoly, p: &Polynomial) -> Polynomial {
    h.coeffs().iter().rev().fold(Polynomial::zero(), |acc, c| {
        &(&acc * p) + &Polynomial::constant(c.clone())
    })
}

/// Finds `h` with `f = h(P)` by repeatedly cancelling the leading form.
///
/// Since `lf(h(P)) = a_d · lf(P)^d`, the top coefficient `a_d` is read from
/// one monomial ratio and checked against the whole leading form; `a_d P^d`
/// is then subtracted and the remainder peeled in turn.
pub fn decompose_exact(
    f: &Polynomial,
    p: &Polynomial,
) -> Result<DecompositionResult, DecomposeError> {
    if p.is_constant() {
        return Err(DecomposeError::ConstantP);
    }
    let dp = p.total_degree().expect("nonconstant");
    let lf_p = p.homogeneous_component(dp);

    let mut coeffs: Vec<GaussianRational> = Vec::new();
    let mut rem = f.clone();
    let mut first = true;
    let fail = |reason_first, first: bool, rem: Polynomial| {
        Ok(DecompositionResult::NotDecomposable {
            reason: if first {
                reason_first
            } else {
                NotDecomposableReason::ResidualNonzero
            },
            remainder: rem,
        })
    };
    loop {
        if rem.is_constant() {
            let c = rem.constant_term();
            if !c.is_zero() {
                if coeffs.is_empty() {
                    coeffs.push(GaussianRational::zero());
                }
                coeffs[0] = c;
            }
            break;
        }
        let dr = rem.total_degree().expect("nonconstant");
        if !dr.is_multiple_of(dp) {
            return fail(NotDecomposableReason::DegreeMismatch, first, rem);
        }
        let d = (dr / dp) as usize;
        let target = lf_p.pow(d as u32);
        let lf_r = rem.homogeneous_component(dr);
        let (exp, c_r) = lf_r.leading_term().expect("nonzero");
        let c_t = target.coeff(exp);
        if c_t.is_zero() {
            return fail(NotDecomposableReason::LeadingFormMismatch, first, rem);
        }
        let a = c_r / &c_t;
        if target.scale(&a) != lf_r {
            return fail(NotDecomposableReason::LeadingFormMismatch, first, rem);
        }
        if coeffs.len() <= d {
            coeffs.resize(d + 1, GaussianRational::zero());
        }
        rem = &rem - &p.pow(d as u32).scale(&a);
        coeffs[d] = a;
        first = false;
    }
    let h = UnivariatePoly::new(coeffs);
    debug_assert_eq!(&compose(&h, p), f);
    Ok(DecompositionResult::Found { h })
}

/// Interpolated `h` and its validation residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HReconstruction {
    /// Coefficients of `h`, constant term first.
    pub h_numeric: Vec<ComplexF>,
    pub residual: f64,
    pub levels: Vec<ComplexF>,
}

/// Number of held-out levels used for the validation residual.
pub const VALIDATION_LEVELS: usize = 8;

/// A seeded choice among the sampled points of `P = c`.
///
/// Always taking the same grid slot would make `f` look like a function of
/// `c` along that one slice; a random slot exposes inconsistency.
fn point_on_leaf(
    p: &Polynomial,
    c: ComplexF,
    rng: &mut ChaCha8Rng,
) -> Option<(ComplexF, ComplexF)> {
    let sample = leaf::sample_leaf(p, c, &Grid::default()).ok()?;
    let k = rng.gen_range(0..sample.points.len());
    Some(sample.points[k])
}

/// Monomial coefficients of the polynomial interpolating `(xs[i], ys[i])`.
fn interpolate(xs: &[Complex64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    // Divided differences in place.
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
        }
    }
    // Expand the Newton form from the innermost factor outwards.
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        // coeffs <- coeffs · (x - xs[k]) + dd[k]
        let mut next = vec![Complex64::new(0.0, 0.0); n];
        for (i, &c) in coeffs.iter().enumerate().take(n - 1) {
            next[i + 1] += c;
            next[i] -= c * xs[k];
        }
        next[0] += dd[k];
        coeffs = next;
    }
    coeffs
}

fn eval_coeffs(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Reads `h(c)` off one point of each of `degree_hint + 1` generic leaves and
/// interpolates; the residual is measured on [`VALIDATION_LEVELS`] further
/// leaves, relative to `max(1, max |h(c)|)`.
pub fn reconstruct_h_numeric(
    f: &Polynomial,
    p: &Polynomial,
    degree_hint: usize,
    seed: u64,
) -> Result<HReconstruction, DecomposeError> {
    if p.is_constant() {
        return Err(DecomposeError::ConstantP);
    }
    let levels = generic_levels(seed, degree_hint + 1 + VALIDATION_LEVELS);
    let fc = CompiledPoly::new(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut values = Vec::with_capacity(levels.len());
    for &c in &levels {
        let (z1, z2) =
            point_on_leaf(p, c, &mut rng).ok_or(DecomposeError::LeafSamplingFailed { level: c })?;
        values.push(
            fc.eval(z1, z2)
                .map_err(|_| DecomposeError::LeafSamplingFailed { level: c })?,
        );
    }
    let (fit_x, check_x) = levels.split_at(degree_hint + 1);
    let (fit_y, check_y) = values.split_at(degree_hint + 1);
    let h_numeric = interpolate(fit_x, fit_y);
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let residual = check_x
        .iter()
        .zip(check_y)
        .map(|(&x, &y)| (eval_coeffs(&h_numeric, x) - y).norm())
        .fold(0.0, f64::max)
        / scale;
    Ok(HReconstruction {
        h_numeric,
        residual,
        levels: levels.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn mono(c: i64, a: u32, b: u32) -> Polynomial {
        Polynomial::monomial(g(c), (a, b))
    }

    fn up(cs: &[i64]) -> UnivariatePoly {
        UnivariatePoly::new(cs.iter().map(|&c| g(c)).collect())
    }

    #[test]
    fn compose_examples() {
        let xy = mono(1, 1, 1);
        assert_eq!(
            compose(&up(&[0, 3, 1]), &xy),
            &mono(1, 2, 2) + &mono(3, 1, 1)
        );
        assert_eq!(compose(&up(&[7]), &xy), mono(7, 0, 0));
        let m = mono(1, 2, 3);
        assert_eq!(compose(&up(&[0, 5]), &m), mono(5, 2, 3));
    }

    #[test]
    fn peel_found() {
        let f = &mono(1, 2, 2) + &mono(3, 1, 1);
        let r = decompose_exact(&f, &mono(1, 1, 1)).unwrap();
        assert_eq!(r, DecompositionResult::Found { h: up(&[0, 3, 1]) });
    }

    #[test]
    fn peel_constant_f() {
        let r = decompose_exact(&mono(5, 0, 0), &mono(1, 1, 1)).unwrap();
        assert_eq!(r.h(), Some(&up(&[5])));
        let r = decompose_exact(&Polynomial::zero(), &mono(1, 1, 1)).unwrap();
        assert_eq!(r.h(), Some(&UnivariatePoly::zero()));
    }

    #[test]
    fn peel_failures() {
        let r = decompose_exact(&mono(1, 1, 0), &mono(1, 1, 1)).unwrap();
        assert!(matches!(
            r,
            DecompositionResult::NotDecomposable {
                reason: NotDecomposableReason::DegreeMismatch,
                ..
            }
        ));
        let r = decompose_exact(&mono(1, 2, 0), &mono(1, 1, 1)).unwrap();
        assert!(matches!(
            r,
            DecompositionResult::NotDecomposable {
                reason: NotDecomposableReason::LeadingFormMismatch,
                ..
            }
        ));
        let f = &mono(1, 2, 2) + &mono(1, 1, 0);
        let r = decompose_exact(&f, &mono(1, 1, 1)).unwrap();
        assert_eq!(
            r,
            DecompositionResult::NotDecomposable {
                reason: NotDecomposableReason::ResidualNonzero,
                remainder: mono(1, 1, 0),
            }
        );
        assert_eq!(
            decompose_exact(&f, &mono(3, 0, 0)),
            Err(DecomposeError::ConstantP)
        );
    }

    #[test]
    fn warm_up_p_is_z1() {
        let h = UnivariatePoly::new(vec![
            g(2),
            GaussianRational::i(),
            g(0),
            GaussianRational::from_fraction(-1, 3),
        ]);
        let f = compose(&h, &Polynomial::z1());
        assert_eq!(
            decompose_exact(&f, &Polynomial::z1()).unwrap().h(),
            Some(&h)
        );
    }

    #[test]
    fn interpolation_is_exact_on_polynomials() {
        let xs: Vec<Complex64> = (0..4).map(|k| Complex64::new(k as f64, 0.5)).collect();
        let poly = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 2.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.5, 0.0),
        ];
        let ys: Vec<Complex64> = xs.iter().map(|&x| eval_coeffs(&poly, x)).collect();
        let c = interpolate(&xs, &ys);
        for (a, b) in c.iter().zip(&poly) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn numeric_reconstruction() {
        let xy = mono(1, 1, 1);
        let f = &mono(1, 2, 2) + &mono(3, 1, 1);
        let rec = reconstruct_h_numeric(&f, &xy, 2, 11).unwrap();
        assert!(rec.residual <= 1e-6);
        for (a, b) in rec.h_numeric.iter().zip([0.0, 3.0, 1.0]) {
            assert!((a - b).norm() < 1e-8);
        }
        let rec = reconstruct_h_numeric(&mono(5, 0, 0), &xy, 0, 1).unwrap();
        assert!((rec.h_numeric[0] - 5.0).norm() < 1e-14 && rec.residual < 1e-14);
        let f = &Polynomial::z1() + &Polynomial::z2();
        let rec = reconstruct_h_numeric(&f, &xy, 3, 5).unwrap();
        assert!(rec.residual >= 1e-2, "{}", rec.residual);
    }
}
