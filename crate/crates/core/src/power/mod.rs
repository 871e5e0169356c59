//! Is `P` a proper power in the formal power series ring `C[[z1, z2]]`?
//!
//! `C[[z1, z2]]` is a UFD whose units all have `m`-th roots, so `P` is an
//! `m`-th power there iff `m` divides the multiplicity of every branch of `P`
//! through the origin. A squarefree global factor `g` with `g(0, 0) = 0` is
//! locally reduced, so each of its branches carries the global exponent of
//! `g`. The power order is therefore the gcd of those exponents.

mod certificate;
mod cnp;

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{squarefree_decomposition, Polynomial, SquarefreeDecomposition};
use crate::numeric::NumericError;

pub use certificate::{
    power_certificate, SeriesCertificate, SeriesTerm, CERTIFICATE_TOL, CLUSTER_RADIUS,
    DEFAULT_TRUNCATION,
};
pub use cnp::{
    cn_minus_p, cn_minus_p_status, exact_polynomial_root, gaussian_rational_roots, witness_search,
    CPoly, CnPStatus,
};

/// The largest `m` such that `P` is an `m`-th power in `C[[z1, z2]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rho {
    Finite(u32),
    Infinite,
}

impl Rho {
    /// `P = Q^m` in the power series ring.
    pub fn admits(self, m: u32) -> bool {
        match self {
            Rho::Infinite => true,
            Rho::Finite(r) => m > 0 && r % m == 0,
        }
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rho::Finite(r) => write!(f, "{r}"),
            Rho::Infinite => f.write_str("infinite"),
        }
    }
}

/// Serialized as an integer, or the string `"infinite"`.
impl Serialize for Rho {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Rho::Finite(r) => serializer.serialize_u32(*r),
            Rho::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerReport {
    pub rho: Rho,
    /// Exponents of the squarefree factors vanishing at the origin.
    pub vanishing_exponents: Vec<u32>,
    /// Absent only for the zero polynomial.
    pub decomposition: Option<SquarefreeDecomposition>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PowerError {
    #[error("the zero polynomial is excluded here")]
    ZeroPolynomial,
    #[error("P is not a {m}-th power in the power series ring (rho = {rho})")]
    NotAPower { m: u32, rho: Rho },
    #[error("series root residual {residual:e} exceeds tolerance")]
    CertificateFailed { residual: f64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub fn power_order(p: &Polynomial) -> PowerReport {
    if p.is_zero() {
        return PowerReport {
            rho: Rho::Infinite,
            vanishing_exponents: Vec::new(),
            decomposition: None,
        };
    }
    let decomposition = squarefree_decomposition(p).expect("nonzero input");
    if !p.constant_term().is_zero() {
        return PowerReport {
            rho: Rho::Infinite,
            vanishing_exponents: Vec::new(),
            decomposition: Some(decomposition),
        };
    }
    let vanishing_exponents: Vec<u32> = decomposition
        .factors
        .iter()
        .filter(|(g, _)| g.constant_term().is_zero())
        .map(|&(_, e)| e)
        .collect();
    let rho = vanishing_exponents.iter().fold(0u32, |acc, &e| acc.gcd(&e));
    debug_assert!(rho > 0, "P(0,0) = 0 forces a vanishing factor");
    PowerReport {
        rho: Rho::Finite(rho),
        vanishing_exponents,
        decomposition: Some(decomposition),
    }
}

/// `P` nonzero, nonconstant, and not a proper power in `C[[z1, z2]]`.
pub fn is_theorem_hypothesis(p: &Polynomial) -> bool {
    !p.is_zero() && !p.is_constant() && power_order(p).rho == Rho::Finite(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;

    fn mono(c: i64, a: u32, b: u32) -> Polynomial {
        Polynomial::monomial(GaussianRational::from(c), (a, b))
    }

    #[test]
    fn unit_is_a_power() {
        let p = &mono(5, 0, 0) + &mono(1, 1, 2);
        assert_eq!(power_order(&p).rho, Rho::Infinite);
        assert_eq!(power_order(&Polynomial::zero()).rho, Rho::Infinite);
    }

    #[test]
    fn monomial_orders() {
        let r = power_order(&mono(1, 2, 4));
        assert_eq!(r.rho, Rho::Finite(2));
        let mut v = r.vanishing_exponents.clone();
        v.sort();
        assert_eq!(v, vec![2, 4]);
        assert_eq!(power_order(&mono(1, 1, 1)).rho, Rho::Finite(1));
    }

    #[test]
    fn cusp_like_square() {
        let p = &mono(1, 2, 0) + &mono(1, 3, 0);
        let r = power_order(&p);
        assert_eq!(r.rho, Rho::Finite(2));
        assert_eq!(r.vanishing_exponents, vec![2]);
    }

    #[test]
    fn hypothesis_predicate() {
        assert!(is_theorem_hypothesis(&(&mono(1, 1, 1) + &mono(1, 0, 3))));
        assert!(!is_theorem_hypothesis(&mono(1, 2, 0)));
        assert!(!is_theorem_hypothesis(&mono(7, 0, 0)));
        assert!(!is_theorem_hypothesis(&Polynomial::zero()));
    }

    #[test]
    fn admits() {
        assert!(Rho::Finite(4).admits(2));
        assert!(!Rho::Finite(3).admits(2));
        assert!(Rho::Infinite.admits(7));
    }
}
