use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact complex number `re + im·i` with rational parts.
///
/// Both parts are kept in lowest terms with a positive denominator (this is
/// what [`BigRational`] maintains), so derived equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
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

    /// Nearest double-precision complex value.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Exact conversion of a finite double-precision complex value.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(Self::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }

    /// Magnitude estimate used for coefficient scales.
    pub fn abs_f64(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Denominator-free multiple: returns `(g, d)` with `self = g / d`,
    /// `g` a Gaussian integer and `d > 0` an integer.
    pub(crate) fn as_gaussian_integer_over(&self) -> ((BigInt, BigInt), BigInt) {
        let d = num_integer::Integer::lcm(self.re.denom(), self.im.denom());
        let a = self.re.numer() * (&d / self.re.denom());
        let b = self.im.numer() * (&d / self.im.denom());
        ((a, b), d)
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

fn fmt_ratio(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Prints in the expression grammar accepted by the parser: `3/2`, `-i`,
/// `1/2 - 3*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_im = |f: &mut fmt::Formatter<'_>, im: &BigRational| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else {
                fmt_ratio(im, f)?;
                write!(f, "*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_ratio(&self.re, f),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                write_im(f, &self.im.abs())
            }
            (false, false) => {
                fmt_ratio(&self.re, f)?;
                write!(f, " {} ", if self.im.is_negative() { '-' } else { '+' })?;
                write_im(f, &self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, thiserror::Error)]
#[error("malformed Gaussian rational: {0:?}")]
pub struct ParseGaussianError(String);

/// Parses the canonical [`Display`](fmt::Display) form (and plain `p/q`).
impl FromStr for GaussianRational {
    type Err = ParseGaussianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussianError(s.to_string());
        let parse_ratio = |t: &str| -> Result<BigRational, ParseGaussianError> {
            let t = t.trim();
            match t.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| err())?;
                    let d: BigInt = d.trim().parse().map_err(|_| err())?;
                    if d.is_zero() {
                        return Err(err());
                    }
                    Ok(BigRational::new(n, d))
                }
                None => Ok(BigRational::from_integer(t.parse().map_err(|_| err())?)),
            }
        };
        let parse_im = |t: &str, negative: bool| -> Result<BigRational, ParseGaussianError> {
            let t = t.trim();
            let mag = if t == "i" {
                BigRational::one()
            } else {
                parse_ratio(t.strip_suffix("*i").ok_or_else(err)?)?
            };
            Ok(if negative { -mag } else { mag })
        };
        let s = s.trim();
        if !s.ends_with('i') {
            return Ok(Self::from(parse_ratio(s)?));
        }
        // Split at the last binary sign, skipping a leading sign.
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .last();
        match split {
            Some((pos, sign)) => Ok(Self::new(
                parse_ratio(&s[..pos])?,
                parse_im(&s[pos + 1..], sign == '-')?,
            )),
            None => {
                let (neg, rest) = match s.strip_prefix('-') {
                    Some(r) => (true, r),
                    None => (false, s),
                };
                Ok(Self::new(BigRational::zero(), parse_im(rest, neg)?))
            }
        }
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = GaussianRational::from_parts((2, 4), (-6, -3));
        assert_eq!(a.re().numer(), &BigInt::from(1));
        assert_eq!(a.re().denom(), &BigInt::from(2));
        assert_eq!(a.im(), &BigRational::from_integer(BigInt::from(2)));
        assert_eq!(a, GaussianRational::from_parts((1, 2), (2, 1)));
    }

    #[test]
    fn field_ops() {
        let a = GaussianRational::from_parts((1, 2), (3, 1));
        let b = GaussianRational::from_parts((-2, 1), (1, 5));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from(-1));
        assert_eq!(GaussianRational::i().pow(4), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn display_and_parse() {
        for (v, s) in [
            (GaussianRational::from_fraction(3, 2), "3/2"),
            (GaussianRational::from_parts((0, 1), (-1, 1)), "-i"),
            (GaussianRational::from_parts((1, 2), (-3, 1)), "1/2 - 3*i"),
            (GaussianRational::from_parts((-1, 1), (3, 2)), "-1 + 3/2*i"),
            (GaussianRational::zero(), "0"),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<GaussianRational>().unwrap(), v);
        }
    }

    #[test]
    fn gaussian_integer_split() {
        let a = GaussianRational::from_parts((1, 6), (3, 4));
        let ((x, y), d) = a.as_gaussian_integer_over();
        assert_eq!(d, BigInt::from(12));
        assert_eq!((x, y), (BigInt::from(2), BigInt::from(9)));
    }
}
