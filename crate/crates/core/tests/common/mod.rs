//! Seeded generators and strategies shared by the integration tests.
#![allow(dead_code)]

use foliate::{GaussianRational, Polynomial, UnivariatePoly};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational, nonzero, imaginary part present about a third of the time.
pub fn gauss(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let re = (rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4));
        let im = if rng.gen_bool(0.3) {
            (rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3))
        } else {
            (0, 1)
        };
        let g = GaussianRational::from_parts(re, im);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Small nonzero integer.
pub fn small_int(rng: &mut ChaCha8Rng) -> GaussianRational {
    let mut k = 0;
    while k == 0 {
        k = rng.gen_range(-4i64..=4);
    }
    GaussianRational::from(k)
}

pub fn mono(c: GaussianRational, a: u32, b: u32) -> Polynomial {
    Polynomial::monomial(c, (a, b))
}

/// Random polynomial of total degree exactly `deg` (when `deg > 0`), with
/// `P(0,0) = 0` if `vanish` and a nonzero constant term otherwise.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    deg: u32,
    vanish: bool,
    coeff: fn(&mut ChaCha8Rng) -> GaussianRational,
) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        let top = rng.gen_range(0..=deg);
        terms.push(((top, deg - top), coeff(rng)));
        let extra = rng.gen_range(0..=3);
        for _ in 0..extra {
            let d = rng.gen_range(1..=deg.max(1));
            let a = rng.gen_range(0..=d);
            terms.push(((a, d - a), coeff(rng)));
        }
        if !vanish {
            terms.push(((0, 0), coeff(rng)));
        }
        let p = Polynomial::from_terms(terms);
        let ok_degree = p.total_degree() == Some(deg);
        let ok_constant = vanish == p.constant_term().is_zero();
        if ok_degree && ok_constant {
            return p;
        }
    }
}

pub fn random_univariate(
    rng: &mut ChaCha8Rng,
    deg: usize,
    coeff: fn(&mut ChaCha8Rng) -> GaussianRational,
) -> UnivariatePoly {
    let mut cs: Vec<GaussianRational> = (0..=deg)
        .map(|_| {
            if rng.gen_bool(0.7) {
                coeff(rng)
            } else {
                GaussianRational::from(0)
            }
        })
        .collect();
    cs[deg] = coeff(rng);
    UnivariatePoly::new(cs)
}

pub fn gaussian_strategy() -> impl Strategy<Value = GaussianRational> {
    (-7i64..=7, 1i64..=5, -3i64..=3, 1i64..=3)
        .prop_map(|(a, b, c, d)| GaussianRational::from_parts((a, b), (c, d)))
}

/// Up to `max_terms` terms with exponents in `0..=max_exp` per variable.
pub fn poly_strategy(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        ((0..=max_exp, 0..=max_exp), gaussian_strategy()),
        0..=max_terms,
    )
    .prop_map(Polynomial::from_terms)
}

pub fn univariate_strategy(max_deg: usize) -> impl Strategy<Value = UnivariatePoly> {
    prop::collection::vec(gaussian_strategy(), 0..=max_deg + 1).prop_map(UnivariatePoly::new)
}
