use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, GaussianRational, UnivariatePoly};

/// Exponent pair `(e1, e2)` of the monomial `z1^e1 · z2^e2`.
///
/// The derived ordering is lexicographic with `z1` major, which is the term
/// order used for exact division and normalization.
pub type Exponent = (u32, u32);

/// Sparse bivariate polynomial in `z1, z2` over the Gaussian rationals.
///
/// No zero coefficient is ever stored; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Exponent, GaussianRational>,
}

/// Degree summary of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub total_degree: u32,
    pub order: u32,
    pub leading_form: Polynomial,
    pub initial_form: Polynomial,
}

/// Ring operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

pub fn arith(a: &Polynomial, b: &Polynomial, kind: ArithKind) -> Polynomial {
    match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, (0, 0))
    }

    pub fn monomial(c: GaussianRational, exp: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn z1() -> Self {
        Self::monomial(GaussianRational::one(), (1, 0))
    }

    pub fn z2() -> Self {
        Self::monomial(GaussianRational::one(), (0, 1))
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, GaussianRational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in ascending lexicographic (`z1`-major) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn coeff(&self, exp: Exponent) -> GaussianRational {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff((0, 0))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(Exponent, &GaussianRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    pub fn degree_z1(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_z2(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_component(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| a + b == k)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn degree_data(&self) -> Result<DegreeData, AlgebraError> {
        let (Some(total_degree), Some(order)) = (self.total_degree(), self.order()) else {
            return Err(AlgebraError::ZeroPolynomial);
        };
        Ok(DegreeData {
            total_degree,
            order,
            leading_form: self.homogeneous_component(total_degree),
            initial_form: self.homogeneous_component(order),
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `z1^e.0 z2^e.1`.
    pub fn shift(&self, e: Exponent) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + e.0, b + e.1), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, z1: &GaussianRational, z2: &GaussianRational) -> GaussianRational {
        // Horner in z2 over z1-polynomial coefficients.
        let mut acc = GaussianRational::zero();
        for c in self.z2_coefficients().iter().rev() {
            acc = &(&acc * z2) + &c.eval(z1);
        }
        acc
    }

    pub fn derivative_z1(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(&(a, b), c)| ((a - 1, b), c * &GaussianRational::from(a as i64))),
        )
    }

    pub fn derivative_z2(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(&(a, b), c)| ((a, b - 1), c * &GaussianRational::from(b as i64))),
        )
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Panics if `divisor` is zero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lt_exp, lt_coeff) = divisor.leading_term().expect("division by zero polynomial");
        let inv = lt_coeff.inv().expect("nonzero coefficient");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading_term() {
            if e.0 < lt_exp.0 || e.1 < lt_exp.1 {
                return None;
            }
            let qe = (e.0 - lt_exp.0, e.1 - lt_exp.1);
            let qc = c * &inv;
            for (de, dc) in divisor.terms.iter() {
                rem.add_term((de.0 + qe.0, de.1 + qe.1), &-(&qc * dc));
            }
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    /// Scales so the lexicographically largest coefficient is one.
    pub fn normalize_lex(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => Self::zero(),
        }
    }

    /// Coefficients in `z2`: entry `k` is the `z1`-polynomial multiplying
    /// `z2^k`.
    pub fn z2_coefficients(&self) -> Vec<UnivariatePoly> {
        let Some(d) = self.degree_z2() else {
            return Vec::new();
        };
        let mut dense: Vec<Vec<GaussianRational>> = vec![Vec::new(); d as usize + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut dense[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, GaussianRational::zero());
            }
            row[a as usize] = c.clone();
        }
        dense.into_iter().map(UnivariatePoly::new).collect()
    }

    pub fn from_z2_coefficients(coeffs: &[UnivariatePoly]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(b, u)| {
            u.coeffs()
                .iter()
                .enumerate()
                .map(move |(a, c)| ((a as u32, b as u32), c.clone()))
        }))
    }

    /// Embeds a univariate polynomial in `z1`.
    pub fn from_z1_poly(u: &UnivariatePoly) -> Self {
        Self::from_z2_coefficients(std::slice::from_ref(u))
    }

    /// The polynomial as univariate in `z1`, if it does not involve `z2`.
    pub fn as_z1_poly(&self) -> Option<UnivariatePoly> {
        match self.degree_z2() {
            None => Some(UnivariatePoly::zero()),
            Some(0) => Some(self.z2_coefficients().swap_remove(0)),
            Some(_) => None,
        }
    }

    pub fn depends_on_z1(&self) -> bool {
        self.degree_z1().is_some_and(|d| d > 0)
    }

    pub fn depends_on_z2(&self) -> bool {
        self.degree_z2().is_some_and(|d| d > 0)
    }

    /// `P(z2, z1)`.
    pub fn swap_variables(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((b, a), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `z1 := a1 + b1·u`, `z2 := a2 + b2·u`.
    pub fn restrict_to_line(
        &self,
        a1: &GaussianRational,
        b1: &GaussianRational,
        a2: &GaussianRational,
        b2: &GaussianRational,
    ) -> UnivariatePoly {
        let l1 = UnivariatePoly::new(vec![a1.clone(), b1.clone()]);
        let l2 = UnivariatePoly::new(vec![a2.clone(), b2.clone()]);
        let mut acc = UnivariatePoly::zero();
        for (&(a, b), c) in &self.terms {
            acc = &acc + &(&l1.pow(a) * &l2.pow(b)).scale(c);
        }
        acc
    }
}

/// Writes `c·mono` terms joined with signs, in the grammar the parser accepts.
pub(crate) fn write_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (GaussianRational, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let (negative, body) = if c.is_real() {
            let mag = GaussianRational::from(c.re().abs());
            (c.re().is_negative(), mag.to_string())
        } else if c.re().is_zero() {
            let mag = GaussianRational::new(Zero::zero(), c.im().abs());
            (c.im().is_negative(), mag.to_string())
        } else {
            (false, format!("({c})"))
        };
        let sep = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        f.write_str(sep)?;
        if mono.is_empty() {
            f.write_str(&body)?;
        } else if body == "1" {
            f.write_str(&mono)?;
        } else {
            write!(f, "{body}*{mono}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Canonical text: terms by descending total degree, then descending `z1`
/// exponent. Re-parses to an equal polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by_key(|x| std::cmp::Reverse((x.0 + x.1, x.0)));
        let terms = keys.into_iter().map(|&(a, b)| {
            let mut parts = Vec::new();
            for (var, e) in [("z1", a), ("z2", b)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            (self.terms[&(a, b)].clone(), parts.join("*"))
        });
        write_terms(f, terms)
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
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
    fn arith_examples() {
        let xy = mono(1, 1, 1);
        assert_eq!(arith(&xy, &xy, ArithKind::Add), mono(2, 1, 1));
        let p = &mono(3, 2, 0) + &mono(-1, 0, 5);
        assert!(arith(&p, &Polynomial::zero(), ArithKind::Mul).is_zero());
        let s = &Polynomial::z1() + &Polynomial::z2();
        let d = &Polynomial::z1() - &Polynomial::z2();
        assert_eq!(
            arith(&s, &d, ArithKind::Mul),
            &mono(1, 2, 0) - &mono(1, 0, 2)
        );
        assert!(arith(&xy, &xy, ArithKind::Sub).is_zero());
    }

    #[test]
    fn pow_examples() {
        let s = &Polynomial::z1() + &Polynomial::z2();
        let expect = &(&mono(1, 2, 0) + &mono(2, 1, 1)) + &mono(1, 0, 2);
        assert_eq!(s.pow(2), expect);
        assert_eq!(Polynomial::zero().pow(0), Polynomial::one());
        assert!(Polynomial::zero().pow(3).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(mono(1, 2, 1).evaluate(&g(2), &g(3)), g(12));
        let p = &(&mono(7, 0, 0) + &mono(1, 3, 1)) + &mono(2, 0, 2);
        assert_eq!(p.evaluate(&g(0), &g(0)), g(7));
        let q = &Polynomial::z1() + &Polynomial::z2().scale(&GaussianRational::i());
        assert_eq!(
            q.evaluate(&GaussianRational::i(), &g(1)),
            GaussianRational::from_parts((0, 1), (2, 1))
        );
    }

    #[test]
    fn degree_data_examples() {
        let p = &mono(1, 2, 0) + &mono(1, 3, 0);
        let d = p.degree_data().unwrap();
        assert_eq!((d.total_degree, d.order), (3, 2));
        assert_eq!(d.leading_form, mono(1, 3, 0));
        assert_eq!(d.initial_form, mono(1, 2, 0));

        let d = mono(1, 1, 1).degree_data().unwrap();
        assert_eq!((d.total_degree, d.order), (2, 2));
        assert_eq!(d.leading_form, mono(1, 1, 1));

        let d = mono(5, 0, 0).degree_data().unwrap();
        assert_eq!((d.total_degree, d.order), (0, 0));
        assert_eq!(d.initial_form, mono(5, 0, 0));

        assert!(matches!(
            Polynomial::zero().degree_data(),
            Err(AlgebraError::ZeroPolynomial)
        ));
    }

    #[test]
    fn exact_division() {
        let a = &Polynomial::z1() + &mono(2, 0, 1);
        let b = &mono(1, 2, 3) - &mono(3, 0, 0);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a).unwrap(), b);
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert!(ab.div_exact(&(&a + &Polynomial::one())).is_none());
    }

    #[test]
    fn derivatives() {
        let p = &mono(3, 2, 1) + &mono(1, 0, 4);
        assert_eq!(p.derivative_z1(), mono(6, 1, 1));
        assert_eq!(p.derivative_z2(), &mono(3, 2, 0) + &mono(4, 0, 3));
    }

    #[test]
    fn display_is_canonical() {
        let p = Polynomial::from_terms([
            ((2, 1), g(1)),
            ((0, 3), GaussianRational::from_parts((0, 1), (3, 2))),
            ((0, 0), g(-1)),
        ]);
        assert_eq!(p.to_string(), "z1^2*z2 + 3/2*i*z2^3 - 1");
        let q = Polynomial::from_terms([((1, 0), GaussianRational::from_parts((-1, 1), (1, 1)))]);
        assert_eq!(q.to_string(), "(-1 + i)*z1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn line_restriction() {
        // z1*z2 on z1 = u, z2 = 1 + u is u + u^2.
        let p = mono(1, 1, 1);
        let r = p.restrict_to_line(&g(0), &g(1), &g(1), &g(1));
        assert_eq!(r, UnivariatePoly::new(vec![g(0), g(1), g(1)]));
    }
}
