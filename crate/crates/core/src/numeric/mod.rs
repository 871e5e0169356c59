//! Floating-point evaluation and univariate root finding.

mod dd;
mod roots;

use num_complex::Complex64;

use crate::algebra::Polynomial;

pub use dd::{horner as horner_dd, CDd, Dd};
pub use roots::{
    find_roots, find_roots_with, poly_from_roots, relative_residual, RootSet, CLUSTER_RESIDUAL_TOL,
    DEFAULT_MAX_ITER, DEFAULT_ROOT_TOL,
};

pub type ComplexF = Complex64;

/// Magnitude above which evaluation reports [`NumericError::Overflow`].
pub const OVERFLOW_LIMIT: f64 = 1e300;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("intermediate magnitude exceeded {OVERFLOW_LIMIT:e}")]
    Overflow,
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("leading coefficient is zero or coefficients are not finite")]
    InvalidCoefficients,
}

fn check(z: Complex64) -> Result<Complex64, NumericError> {
    if z.is_finite() && z.re.abs() <= OVERFLOW_LIMIT && z.im.abs() <= OVERFLOW_LIMIT {
        Ok(z)
    } else {
        Err(NumericError::Overflow)
    }
}

/// Double-precision value of `p(z1, z2)` by nested Horner evaluation (in `z2`
/// over `z1`-polynomial coefficients).
pub fn eval_numeric(p: &Polynomial, z1: ComplexF, z2: ComplexF) -> Result<ComplexF, NumericError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.z2_coefficients().iter().rev() {
        let mut inner = Complex64::new(0.0, 0.0);
        for a in c.coeffs().iter().rev() {
            inner = check(inner * z1 + a.to_complex())?;
        }
        acc = check(acc * z2 + inner)?;
    }
    Ok(acc)
}

/// A polynomial prepared for repeated double-double evaluation.
///
/// Errors are those of a computation in roughly twice double precision,
/// rounded once at the end.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    // z2_coeffs[k][j] multiplies z1^j z2^k.
    z2_coeffs: Vec<Vec<CDd>>,
}

impl CompiledPoly {
    pub fn new(p: &Polynomial) -> Self {
        Self {
            z2_coeffs: p
                .z2_coefficients()
                .iter()
                .map(|u| u.coeffs().iter().map(CDd::from_gaussian).collect())
                .collect(),
        }
    }

    /// Coefficients of `p(z1, ·)` as a polynomial in `z2`.
    pub fn slice_z2(&self, z1: ComplexF) -> Vec<CDd> {
        let x = CDd::from_complex(z1);
        self.z2_coeffs.iter().map(|row| horner_dd(row, x)).collect()
    }

    pub fn eval_dd(&self, z1: ComplexF, z2: ComplexF) -> CDd {
        horner_dd(&self.slice_z2(z1), CDd::from_complex(z2))
    }

    pub fn eval(&self, z1: ComplexF, z2: ComplexF) -> Result<ComplexF, NumericError> {
        check(self.eval_dd(z1, z2).to_complex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::monomial(GaussianRational::from(1), (2, 1));
        assert_eq!(
            eval_numeric(&p, c(2.0, 0.0), c(3.0, 0.0)).unwrap(),
            c(12.0, 0.0)
        );
        let q = Polynomial::from_terms([
            ((0, 0), GaussianRational::from_parts((1, 3), (-2, 1))),
            ((4, 1), GaussianRational::from(9)),
        ]);
        let v = eval_numeric(&q, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(v, q.constant_term().to_complex());
    }

    #[test]
    fn overflow_is_reported() {
        let p = Polynomial::monomial(GaussianRational::from(1), (40, 0));
        assert_eq!(
            eval_numeric(&p, c(1e10, 0.0), c(0.0, 0.0)),
            Err(NumericError::Overflow)
        );
        assert_eq!(
            CompiledPoly::new(&p).eval(c(1e10, 0.0), c(0.0, 0.0)),
            Err(NumericError::Overflow)
        );
    }

    #[test]
    fn compiled_survives_cancellation() {
        // (z1 z2 - 1)^3 expanded, on the curve z1 z2 = 1 + 1e-6.
        let p =
            (&Polynomial::monomial(GaussianRational::from(1), (1, 1)) - &Polynomial::one()).pow(3);
        let z1 = c(1000.0, 0.0);
        let z2 = c((1.0 + 1e-6) / 1000.0, 0.0);
        let exact = p
            .evaluate(
                &GaussianRational::from_complex(z1).unwrap(),
                &GaussianRational::from_complex(z2).unwrap(),
            )
            .to_complex();
        let v = CompiledPoly::new(&p).eval(z1, z2).unwrap();
        assert!((v - exact).norm() <= 1e-10 * exact.norm());
        let plain = eval_numeric(&p, z1, z2).unwrap();
        assert!((plain - exact).norm() > 1e-6 * exact.norm());
    }
}
