//! Double-double ("twice working precision") real and complex arithmetic.
//!
//! Used to evaluate expanded polynomials on level curves, where the individual
//! terms can exceed the value by many orders of magnitude.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use crate::algebra::{ratio_to_f64, GaussianRational};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let hi = ratio_to_f64(r);
        let lo = match BigRational::from_float(hi) {
            Some(h) => ratio_to_f64(&(r - h)),
            None => 0.0,
        };
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn from_complex(z: Complex64) -> Self {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn from_gaussian(g: &GaussianRational) -> Self {
        CDd {
            re: Dd::from_rational(g.re()),
            im: Dd::from_rational(g.im()),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for CDd {
    type Output = CDd;
    #[inline]
    fn add(self, b: CDd) -> CDd {
        CDd {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for CDd {
    type Output = CDd;
    #[inline]
    fn sub(self, b: CDd) -> CDd {
        CDd {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for CDd {
    type Output = CDd;
    #[inline]
    fn mul(self, b: CDd) -> CDd {
        CDd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

/// Horner evaluation of `Σ coeffs[k] x^k` in double-double.
pub fn horner(coeffs: &[CDd], x: CDd) -> CDd {
    coeffs.iter().rev().fold(CDd::ZERO, |acc, &c| acc * x + c)
}
