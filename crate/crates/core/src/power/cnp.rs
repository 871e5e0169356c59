//! Irreducibility of `C^n - P` in `C[z1, z2, C]`.
//!
//! Over a field `K ⊇ C` containing the roots of unity, `X^n - a` is reducible
//! only if `a = b^m` for some `m > 1` dividing `n`. With `K = C(z1, z2)` and `P`
//! a polynomial this needs `P` to be a global `m`-th power, hence a local one,
//! so `m | rho`. When `gcd(n, rho) = 1` the polynomial is irreducible.
//! Otherwise an exact witness `C^n - b^m = (C^(n/m) - b) · (…)` is searched for
//! over `Q(i)`; failure to find one is reported as unknown.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use serde::Serialize;

use super::{power_order, PowerError, Rho};
use crate::algebra::{GaussianRational, Polynomial};

/// Polynomial in `C` with coefficients in `Q(i)[z1, z2]`; `coeffs[k]`
/// multiplies `C^k`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CPoly {
    coeffs: Vec<Polynomial>,
}

impl CPoly {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        let mut p = Self { coeffs };
        while p.coeffs.last().is_some_and(Polynomial::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Degree in `C`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == Polynomial::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![Polynomial::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    /// Division by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_monic_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        debug_assert!(divisor.is_monic());
        let Some(nd) = self.degree() else {
            return Some(Self::default());
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Polynomial::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&q * d);
            }
            quot[k] = q;
        }
        rem.iter().all(Polynomial::is_zero).then(|| Self::new(quot))
    }
}

/// `C^n - P`.
pub fn cn_minus_p(p: &Polynomial, n: usize) -> CPoly {
    let mut coeffs = vec![Polynomial::zero(); n + 1];
    coeffs[n] = Polynomial::one();
    coeffs[0] = &coeffs[0] - p;
    CPoly::new(coeffs)
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cpow = match k {
                0 => String::new(),
                1 => "C".to_string(),
                _ => format!("C^{k}"),
            };
            let body = c.to_string();
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if c.num_terms() == 1 => (true, rest.to_string()),
                _ => (false, body),
            };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sep)?;
            match (cpow.is_empty(), body.as_str()) {
                (true, _) if c.num_terms() > 1 => write!(f, "({body})")?,
                (true, _) => f.write_str(&body)?,
                (false, "1") => f.write_str(&cpow)?,
                (false, _) if c.num_terms() == 1 => write!(f, "{body}*{cpow}")?,
                (false, _) => write!(f, "({body})*{cpow}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum CnPStatus {
    IrreducibleCertified,
    /// `witness.0 · witness.1 = C^n - P`, both monic of positive degree in `C`.
    Reducible {
        witness: (CPoly, CPoly),
    },
    Unknown {
        searched_degree_bound: u32,
    },
}

/// All `μ ∈ Q(i)` with `μ^m = λ`.
///
/// Candidates come from rounding the floating-point roots of the
/// denominator-cleared value and are verified exactly, so every returned
/// value is a true root. Roots whose Gaussian-integer parts exceed double
/// precision are missed.
pub fn gaussian_rational_roots(lambda: &GaussianRational, m: u32) -> Vec<GaussianRational> {
    if lambda.is_zero() {
        return vec![GaussianRational::zero()];
    }
    if m == 1 {
        return vec![lambda.clone()];
    }
    // λ = α / d; μ d is a Gaussian-integer root of γ = α d^(m-1).
    let ((a, b), d) = lambda.as_gaussian_integer_over();
    let dm = num_traits::pow(d.clone(), (m - 1) as usize);
    let gamma = GaussianRational::new(
        BigRational::from_integer(a * &dm),
        BigRational::from_integer(b * &dm),
    );
    let g = gamma.to_complex();
    if !g.is_finite() {
        return Vec::new();
    }
    let base = g.powf(1.0 / m as f64);
    let mut out: Vec<GaussianRational> = Vec::new();
    for k in 0..m {
        let w = base * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64);
        let (Some(x), Some(y)) = (
            BigInt::from_f64(w.re.round()),
            BigInt::from_f64(w.im.round()),
        ) else {
            continue;
        };
        let cand =
            GaussianRational::new(BigRational::from_integer(x), BigRational::from_integer(y));
        if cand.pow(m) == gamma {
            let mu = &cand / &GaussianRational::from(BigRational::from_integer(d.clone()));
            if !out.contains(&mu) {
                out.push(mu);
            }
        }
    }
    out
}

/// Exact `b ∈ Q(i)[z1, z2]` with `b^m = P` and `deg b <= degree_bound`.
///
/// Terms of `b` are fixed in descending lexicographic order: the leading term
/// of `P - b_partial^m` must equal `m · lt(b)^(m-1) · t` for the next term `t`.
pub fn exact_polynomial_root(p: &Polynomial, m: u32, degree_bound: u32) -> Option<Polynomial> {
    if p.is_zero() {
        return Some(Polynomial::zero());
    }
    let (lead_exp, lead_coeff) = p.leading_term()?;
    if lead_exp.0 % m != 0 || lead_exp.1 % m != 0 {
        return None;
    }
    let mu = gaussian_rational_roots(lead_coeff, m).into_iter().next()?;
    let b_lead_exp = (lead_exp.0 / m, lead_exp.1 / m);
    if b_lead_exp.0 + b_lead_exp.1 > degree_bound {
        return None;
    }
    let denom = (&mu.pow(m - 1) * &GaussianRational::from(m as i64)).inv()?;
    let shift = ((m - 1) * b_lead_exp.0, (m - 1) * b_lead_exp.1);
    let mut b = Polynomial::monomial(mu, b_lead_exp);
    // At most one new term per monomial of degree <= bound.
    let max_steps = ((degree_bound + 1) * (degree_bound + 2) / 2) as usize;
    for _ in 0..=max_steps {
        let r = p - &b.pow(m);
        let Some((e, c)) = r.leading_term() else {
            return Some(b);
        };
        if e.0 < shift.0 || e.1 < shift.1 {
            return None;
        }
        let t = (e.0 - shift.0, e.1 - shift.1);
        if t >= b_lead_exp || t.0 + t.1 > degree_bound {
            return None;
        }
        b = &b + &Polynomial::monomial(c * &denom, t);
    }
    None
}

/// Searches C-degree splits `(n/m, n - n/m)` for `m | n`, `m > 1`, in
/// ascending `m`, returning the first exact factorization found.
pub fn witness_search(p: &Polynomial, n: u32, degree_bound: u32) -> Option<(CPoly, CPoly)> {
    let target = cn_minus_p(p, n as usize);
    (2..=n).filter(|m| n.is_multiple_of(*m)).find_map(|m| {
        let b = exact_polynomial_root(p, m, degree_bound)?;
        let k = (n / m) as usize;
        let mut a = vec![Polynomial::zero(); k + 1];
        a[k] = Polynomial::one();
        a[0] = -&b;
        let a = CPoly::new(a);
        let cofactor = target.div_monic_exact(&a)?;
        debug_assert_eq!(a.mul(&cofactor), target);
        Some((a, cofactor))
    })
}

pub fn cn_minus_p_status(
    p: &Polynomial,
    n: u32,
    degree_bound: u32,
) -> Result<CnPStatus, PowerError> {
    if p.is_zero() {
        return Err(PowerError::ZeroPolynomial);
    }
    if n == 0 {
        return Err(PowerError::InvalidArgument("n must be at least 1".into()));
    }
    if n == 1 {
        // Monic of degree one in C.
        return Ok(CnPStatus::IrreducibleCertified);
    }
    if let Rho::Finite(rho) = power_order(p).rho {
        if rho.gcd(&n).is_one() {
            return Ok(CnPStatus::IrreducibleCertified);
        }
    }
    Ok(match witness_search(p, n, degree_bound) {
        Some(witness) => CnPStatus::Reducible { witness },
        None => CnPStatus::Unknown {
            searched_degree_bound: degree_bound,
        },
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

    #[test]
    fn square_monomial_splits() {
        let status = cn_minus_p_status(&mono(1, 2, 0), 2, 2).unwrap();
        let CnPStatus::Reducible { witness: (a, b) } = status else {
            panic!("expected a witness, got {status:?}");
        };
        assert_eq!(a.mul(&b), cn_minus_p(&mono(1, 2, 0), 2));
        let mut shown = [a.to_string(), b.to_string()];
        shown.sort();
        assert_eq!(shown, ["C + z1".to_string(), "C - z1".to_string()]);
    }

    #[test]
    fn not_a_power_is_certified() {
        assert_eq!(
            cn_minus_p_status(&mono(1, 1, 1), 3, 5).unwrap(),
            CnPStatus::IrreducibleCertified
        );
    }

    #[test]
    fn local_square_without_global_root() {
        let p = &mono(1, 2, 0) + &mono(1, 3, 0);
        assert_eq!(
            cn_minus_p_status(&p, 2, 4).unwrap(),
            CnPStatus::Unknown {
                searched_degree_bound: 4
            }
        );
    }

    #[test]
    fn coprime_degree_is_certified() {
        // rho(z1^2) = 2, but C^3 - z1^2 has no square or cube splitting.
        assert_eq!(
            cn_minus_p_status(&mono(1, 2, 0), 3, 4).unwrap(),
            CnPStatus::IrreducibleCertified
        );
    }

    #[test]
    fn unit_constant_splits() {
        let status = cn_minus_p_status(&mono(4, 0, 0), 2, 0).unwrap();
        assert!(matches!(status, CnPStatus::Reducible { .. }));
    }

    #[test]
    fn gaussian_roots() {
        // (1 + 2i)^2 = -3 + 4i
        let roots = gaussian_rational_roots(&GaussianRational::from_parts((-3, 1), (4, 1)), 2);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&GaussianRational::from_parts((1, 1), (2, 1))));
        // -1/4 = (i/2)^2
        let roots = gaussian_rational_roots(&GaussianRational::from_fraction(-1, 4), 2);
        assert!(roots.contains(&GaussianRational::from_parts((0, 1), (1, 2))));
        assert!(gaussian_rational_roots(&g(2), 2).is_empty());
        // 1 has four fourth roots in Q(i).
        assert_eq!(gaussian_rational_roots(&g(1), 4).len(), 4);
    }

    #[test]
    fn polynomial_roots() {
        let b = &(&mono(2, 1, 1) - &mono(3, 0, 2)) + &mono(1, 0, 0).scale(&GaussianRational::i());
        for m in 2..=4 {
            let r = exact_polynomial_root(&b.pow(m), m, 2).unwrap();
            assert_eq!(r.pow(m), b.pow(m));
        }
        assert!(exact_polynomial_root(&b.pow(2), 2, 1).is_none());
        assert!(exact_polynomial_root(&(&b.pow(2) + &mono(1, 0, 1)), 2, 4).is_none());
    }
}
