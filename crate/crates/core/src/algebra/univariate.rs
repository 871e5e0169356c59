use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::GaussianRational;

/// Dense univariate polynomial over the Gaussian rationals.
///
/// `coeffs[k]` is the coefficient of `X^k`; trailing zeros are trimmed so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<GaussianRational>,
}

impl UnivariatePoly {
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·X^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `X`.
    pub fn x() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex())
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(GaussianRational::to_complex)
            .collect()
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lc = divisor.coeffs[dd]
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![GaussianRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] * &inv_lc;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&q * d);
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(GaussianRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Yun's squarefree decomposition of a nonzero polynomial.
    ///
    /// Returns monic, pairwise coprime, squarefree factors with their
    /// multiplicities (ascending); constant factors are omitted. The product
    /// `lc · ∏ g^e` equals `self`.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let c = df.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut e = 1u32;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), e));
            }
            let nb = b.div_exact(&a).expect("gcd divides");
            let nc = d.div_exact(&a).expect("gcd divides");
            d = &nc - &nb.derivative();
            b = nb;
            e += 1;
        }
        out
    }

    /// Formats using `var` as the indeterminate.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayIn { poly: self, var }
    }
}

struct DisplayIn<'a> {
    poly: &'a UnivariatePoly,
    var: &'a str,
}

impl fmt::Display for DisplayIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .poly
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => self.var.to_string(),
                    _ => format!("{}^{}", self.var, k),
                };
                (c.clone(), mono)
            });
        super::poly::write_terms(f, terms)
    }
}

/// Prints in the variable `X`.
impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("X"))
    }
}

impl serde::Serialize for UnivariatePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn add(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn sub(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn mul(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UnivariatePoly::new(out)
    }
}

impl Neg for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn neg(self) -> UnivariatePoly {
        UnivariatePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
