//! Bivariate gcd by a primitive remainder sequence in `z2` over `Q(i)[z1]`.

use super::{AlgebraError, Polynomial, UnivariatePoly};

type Z2Poly = Vec<UnivariatePoly>;

fn trim(mut a: Z2Poly) -> Z2Poly {
    while a.last().is_some_and(UnivariatePoly::is_zero) {
        a.pop();
    }
    a
}

/// Monic gcd of the `z1`-coefficients.
fn content(a: &[UnivariatePoly]) -> UnivariatePoly {
    a.iter().fold(UnivariatePoly::zero(), |g, c| {
        if g.is_constant() && !g.is_zero() {
            g
        } else {
            g.gcd(c)
        }
    })
}

fn primitive_part(a: &[UnivariatePoly]) -> Z2Poly {
    let c = content(a);
    a.iter()
        .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` (both in `z2`, `deg a >= deg b >= 1`).
fn pseudo_rem(a: &[UnivariatePoly], b: &[UnivariatePoly]) -> Z2Poly {
    let n = b.len() - 1;
    let lc_b = &b[n];
    let mut r: Z2Poly = a.to_vec();
    while r.len() > n {
        let m = r.len() - 1;
        let lc_r = r[m].clone();
        for x in r.iter_mut() {
            *x = &*x * lc_b;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &lc_r * bj;
            r[m - n + j] = &r[m - n + j] - &t;
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor of two bivariate polynomials.
///
/// The result is normalized so that its lexicographically largest term
/// (`z1`-major) has coefficient one.
pub fn gcd_bivariate(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, AlgebraError> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(AlgebraError::BothZero),
        (true, false) => return Ok(b.normalize_lex()),
        (false, true) => return Ok(a.normalize_lex()),
        _ => {}
    }
    let ca = a.z2_coefficients();
    let cb = b.z2_coefficients();
    let cont = content(&ca).gcd(&content(&cb));
    let mut pa = primitive_part(&ca);
    let mut pb = primitive_part(&cb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    let prim: Z2Poly = loop {
        if pb.len() == 1 {
            // Degree zero in z2 and primitive: a unit.
            break vec![UnivariatePoly::constant(num_traits::One::one())];
        }
        let r = pseudo_rem(&pa, &pb);
        if r.is_empty() {
            break pb;
        }
        pa = pb;
        pb = primitive_part(&r);
    };
    let g = Polynomial::from_z2_coefficients(&prim) * Polynomial::from_z1_poly(&cont);
    Ok(g.normalize_lex())
}

/// `gcd(g, ∂g/∂z1, ∂g/∂z2)` is a scalar.
pub fn is_squarefree(g: &Polynomial) -> bool {
    if g.is_zero() {
        return false;
    }
    let g1 = gcd_bivariate(g, &g.derivative_z1()).expect("g nonzero");
    let g2 = gcd_bivariate(&g1, &g.derivative_z2()).expect("g nonzero");
    g2.is_constant()
}
