use num_traits::One;
use serde::Serialize;

use super::{gcd_bivariate, AlgebraError, GaussianRational, Polynomial, UnivariatePoly};

/// `unit · ∏ g^e` with squarefree, pairwise coprime, lex-normalized `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeDecomposition {
    pub unit: GaussianRational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (g, e)| {
                &acc * &g.pow(*e)
            })
    }
}

fn yun_in_z2(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    let gcd = |a: &Polynomial, b: &Polynomial| gcd_bivariate(a, b).expect("nonzero operand");
    let div = |a: &Polynomial, b: &Polynomial| a.div_exact(b).expect("gcd divides");
    let positive_z2 = |p: &Polynomial| p.depends_on_z2();

    let mut out = Vec::new();
    let df = f.derivative_z2();
    let a0 = gcd(f, &df);
    let mut b = div(f, &a0);
    let c = div(&df, &a0);
    let mut d = &c - &b.derivative_z2();
    let mut e = 1;
    while positive_z2(&b) {
        let a = gcd(&b, &d);
        if positive_z2(&a) {
            out.push((a.clone(), e));
        }
        let nb = div(&b, &a);
        let nc = div(&d, &a);
        d = &nc - &nb.derivative_z2();
        b = nb;
        e += 1;
    }
    out
}

/// Squarefree decomposition of a nonzero polynomial.
///
/// The `z1`-content is split with a univariate Yun pass; the primitive part
/// with Yun's scheme in `z2`. Content factors come first, each group in
/// ascending multiplicity.
pub fn squarefree_decomposition(p: &Polynomial) -> Result<SquarefreeDecomposition, AlgebraError> {
    let Some((_, lc)) = p.leading_term() else {
        return Err(AlgebraError::ZeroPolynomial);
    };
    let unit = lc.clone();
    if p.is_constant() {
        return Ok(SquarefreeDecomposition {
            unit,
            factors: Vec::new(),
        });
    }
    let coeffs = p.z2_coefficients();
    let content = coeffs.iter().fold(UnivariatePoly::zero(), |g, c| g.gcd(c));
    let primitive = p
        .div_exact(&Polynomial::from_z1_poly(&content))
        .expect("content divides");

    let mut factors: Vec<(Polynomial, u32)> = content
        .squarefree()
        .into_iter()
        .map(|(g, e)| (Polynomial::from_z1_poly(&g).normalize_lex(), e))
        .collect();
    if primitive.depends_on_z2() {
        factors.extend(
            yun_in_z2(&primitive)
                .into_iter()
                .map(|(g, e)| (g.normalize_lex(), e)),
        );
    }
    debug_assert!(factors
        .iter()
        .all(|(g, _)| g.leading_term().is_some_and(|(_, c)| c.is_one())));
    Ok(SquarefreeDecomposition { unit, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gcd::is_squarefree;

    fn mono(c: i64, a: u32, b: u32) -> Polynomial {
        Polynomial::monomial(GaussianRational::from(c), (a, b))
    }

    fn sorted(mut f: Vec<(Polynomial, u32)>) -> Vec<(String, u32)> {
        let mut v: Vec<_> = f.drain(..).map(|(g, e)| (g.to_string(), e)).collect();
        v.sort();
        v
    }

    #[test]
    fn monomial_input() {
        let d = squarefree_decomposition(&mono(1, 2, 4)).unwrap();
        assert_eq!(d.unit, GaussianRational::one());
        assert_eq!(sorted(d.factors), vec![("z1".into(), 2), ("z2".into(), 4)]);
    }

    #[test]
    fn content_only_input() {
        let p = &mono(1, 2, 0) + &mono(1, 3, 0);
        let d = squarefree_decomposition(&p).unwrap();
        assert_eq!(d.unit, GaussianRational::one());
        assert_eq!(
            sorted(d.factors),
            vec![("z1".into(), 2), ("z1 + 1".into(), 1)]
        );
    }

    #[test]
    fn constant_input() {
        let d = squarefree_decomposition(&mono(-4, 0, 0)).unwrap();
        assert_eq!(d.unit, GaussianRational::from(-4));
        assert!(d.factors.is_empty());
        assert!(matches!(
            squarefree_decomposition(&Polynomial::zero()),
            Err(AlgebraError::ZeroPolynomial)
        ));
    }

    #[test]
    fn mixed_product_reexpands() {
        // 3 (z1 z2 + 1)^2 (z1 - z2)^3 z1 (z2^2 + z1)
        let a = &mono(1, 1, 1) + &mono(1, 0, 0);
        let b = &mono(1, 1, 0) - &mono(1, 0, 1);
        let c = &mono(1, 0, 2) + &mono(1, 1, 0);
        let p = (&(&(&a.pow(2) * &b.pow(3)) * &mono(3, 1, 0)) * &c).scale(&GaussianRational::i());
        let d = squarefree_decomposition(&p).unwrap();
        assert_eq!(d.expand(), p);
        let mut es: Vec<u32> = d.factors.iter().map(|f| f.1).collect();
        es.sort();
        assert_eq!(es, vec![1, 1, 2, 3]);
        for (g, _) in &d.factors {
            assert!(is_squarefree(g));
        }
    }
}
