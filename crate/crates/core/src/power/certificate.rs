//! Numeric witness `Q` with `Q^m = P` in `C[[z1, z2]]`, built degree by degree.

use num_complex::Complex64;
use serde::Serialize;

use super::{power_order, PowerError};
use crate::algebra::{Polynomial, UnivariatePoly};
use crate::numeric::{find_roots, ComplexF, DEFAULT_ROOT_TOL};

/// Accepted relative residual of `Q^m - P` through the truncation degree.
pub const CERTIFICATE_TOL: f64 = 1e-9;
pub const DEFAULT_TRUNCATION: u32 = 12;
/// Relative radius under which numeric roots of the initial form are merged.
pub const CLUSTER_RADIUS: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub exponent: (u32, u32),
    pub coeff: ComplexF,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesCertificate {
    pub m: u32,
    pub truncation_order: u32,
    /// Nonzero terms of the truncated root, ascending total degree.
    pub root: Vec<SeriesTerm>,
    pub residual: f64,
}

impl SeriesCertificate {
    pub fn coeff(&self, e1: u32, e2: u32) -> ComplexF {
        self.root
            .iter()
            .find(|t| t.exponent == (e1, e2))
            .map_or(Complex64::new(0.0, 0.0), |t| t.coeff)
    }
}

/// Binary form of degree `len - 1`: entry `j` multiplies `z1^j z2^(deg - j)`.
type Form = Vec<Complex64>;

fn zero_form(deg: usize) -> Form {
    vec![Complex64::new(0.0, 0.0); deg + 1]
}

fn form_mul(a: &Form, b: &Form) -> Form {
    let mut out = zero_form(a.len() + b.len() - 2);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn form_pow(a: &Form, k: u32) -> Form {
    (0..k).fold(vec![Complex64::new(1.0, 0.0)], |acc, _| form_mul(&acc, a))
}

/// Truncated series stored by homogeneous components, `comps[d]` of degree `d`.
#[derive(Clone)]
struct Graded {
    comps: Vec<Form>,
}

impl Graded {
    fn zero(max_deg: usize) -> Self {
        Self {
            comps: (0..=max_deg).map(zero_form).collect(),
        }
    }

    fn mul_truncated(&self, other: &Self) -> Self {
        let n = self.comps.len() - 1;
        let mut out = Self::zero(n);
        for (da, a) in self.comps.iter().enumerate() {
            if a.iter().all(|c| c.norm() == 0.0) {
                continue;
            }
            for (db, b) in other.comps.iter().enumerate().take(n + 1 - da) {
                if b.iter().all(|c| c.norm() == 0.0) {
                    continue;
                }
                let prod = form_mul(a, b);
                for (j, c) in prod.into_iter().enumerate() {
                    out.comps[da + db][j] += c;
                }
            }
        }
        out
    }

    fn pow_truncated(&self, m: u32) -> Self {
        let n = self.comps.len() - 1;
        let mut one = Self::zero(n);
        one.comps[0][0] = Complex64::new(1.0, 0.0);
        (0..m).fold(one, |acc, _| acc.mul_truncated(self))
    }
}

fn graded_from(p: &Polynomial, max_deg: usize) -> Graded {
    let mut g = Graded::zero(max_deg);
    for (&(a, b), c) in p.terms() {
        let d = (a + b) as usize;
        if d <= max_deg {
            g.comps[d][a as usize] = c.to_complex();
        }
    }
    g
}

/// Divides binary form `t` by `d` (whose top `z1` index is `top`), keeping a
/// quotient of degree `qdeg`. The remainder is discarded; the final residual
/// check accounts for it.
fn form_div(t: &Form, d: &Form, top: usize, qdeg: usize) -> Form {
    let mut rem = t.clone();
    let lead = d[top];
    let mut q = zero_form(qdeg);
    for j in (top..rem.len()).rev() {
        let k = j - top;
        let c = rem[j] / lead;
        for (i, dj) in d.iter().enumerate().take(top + 1) {
            rem[k + i] -= c * dj;
        }
        if k <= qdeg {
            q[k] = c;
        }
    }
    q
}

/// Roots of the dehomogenized initial form, with multiplicities.
///
/// Multiplicities come from an exact squarefree split; simple roots of each
/// factor are found numerically, then merged within [`CLUSTER_RADIUS`].
fn initial_form_roots(p: &UnivariatePoly) -> Result<Vec<(Complex64, u32)>, PowerError> {
    let mut roots: Vec<(Complex64, u32)> = Vec::new();
    for (g, e) in p.squarefree() {
        let rs = find_roots(&g.to_complex_coeffs(), DEFAULT_ROOT_TOL)?;
        roots.extend(rs.roots.into_iter().map(|r| (r, e)));
    }
    let mut merged: Vec<(Complex64, u32)> = Vec::new();
    for (r, e) in roots {
        match merged
            .iter_mut()
            .find(|(s, _)| (s - r).norm() <= CLUSTER_RADIUS * s.norm().max(r.norm()).max(1.0))
        {
            Some(slot) => slot.1 += e,
            None => merged.push((r, e)),
        }
    }
    Ok(merged)
}

/// Truncated `m`-th root of `P` with its residual.
///
/// The initial form is factored into linear forms and its `m`-th root `q0`
/// assembled; each higher component `q_k` solves
/// `m q0^(m-1) q_k = P_(ν+k) - [(q_0 + … + q_(k-1))^m]_(ν+k)`.
pub fn power_certificate(p: &Polynomial, m: u32, n: u32) -> Result<SeriesCertificate, PowerError> {
    if p.is_zero() {
        return Err(PowerError::ZeroPolynomial);
    }
    if m < 2 {
        return Err(PowerError::InvalidArgument(format!(
            "m must be at least 2, got {m}"
        )));
    }
    let rho = power_order(p).rho;
    if !rho.admits(m) {
        return Err(PowerError::NotAPower { m, rho });
    }
    let nu = p.order().expect("nonzero") as usize;
    let n = n as usize;
    if n < nu {
        return Err(PowerError::InvalidArgument(format!(
            "truncation order {n} is below the order {nu} of P"
        )));
    }
    let m_us = m as usize;
    let mu = nu / m_us;

    // P_ν = lc · z2^(ν-δ) · ∏ (z1 - r z2)^mult
    let initial = p.homogeneous_component(nu as u32);
    let dehom = UnivariatePoly::new(
        (0..=nu)
            .map(|j| initial.coeff((j as u32, (nu - j) as u32)))
            .collect(),
    );
    let delta = dehom.degree().expect("nonzero initial form");
    let lc = dehom.leading_coeff().expect("nonzero").to_complex();
    let roots = initial_form_roots(&dehom)?;
    let z2_power = nu - delta;
    if !z2_power.is_multiple_of(m_us) || roots.iter().any(|&(_, e)| e % m != 0) {
        return Err(PowerError::CertificateFailed {
            residual: f64::INFINITY,
        });
    }

    let mut q0: Form = zero_form(z2_power / m_us);
    q0[0] = lc.powf(1.0 / m as f64);
    for &(r, e) in &roots {
        let linear = vec![-r, Complex64::new(1.0, 0.0)];
        q0 = form_mul(&q0, &form_pow(&linear, e / m));
    }
    // q0 has z1-degree delta / m; the divisor keeps (m-1) times that.
    debug_assert_eq!(q0.len(), mu + 1);
    let divisor: Form = form_pow(&q0, m - 1)
        .into_iter()
        .map(|c| c * m as f64)
        .collect();
    let top = (m_us - 1) * (delta / m_us);

    // Components of the root through degree n need P through n + ν - μ.
    let work = n + nu - mu;
    let target = graded_from(p, work);
    let mut root = Graded::zero(work);
    root.comps[mu] = q0;
    for k in 1..=(n - mu) {
        let partial = root.pow_truncated(m);
        let t: Form = target.comps[nu + k]
            .iter()
            .zip(&partial.comps[nu + k])
            .map(|(a, b)| a - b)
            .collect();
        root.comps[mu + k] = form_div(&t, &divisor, top, mu + k);
    }

    let full = root.pow_truncated(m);
    let p_scale = p.terms().map(|(_, c)| c.abs_f64()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for (a, b) in full.comps.iter().zip(&target.comps).take(n + 1) {
        for (x, y) in a.iter().zip(b) {
            worst = worst.max((x - y).norm());
        }
    }
    let residual = worst / p_scale;
    if !residual.is_finite() || residual > CERTIFICATE_TOL {
        return Err(PowerError::CertificateFailed { residual });
    }

    let terms = root
        .comps
        .iter()
        .enumerate()
        .take(n + 1)
        .flat_map(|(d, form)| {
            form.iter()
                .enumerate()
                .filter(|(_, c)| c.norm() != 0.0)
                .map(move |(j, &c)| SeriesTerm {
                    exponent: (j as u32, (d - j) as u32),
                    coeff: c,
                })
        })
        .collect();
    Ok(SeriesCertificate {
        m,
        truncation_order: n as u32,
        root: terms,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;

    fn mono(c: i64, a: u32, b: u32) -> Polynomial {
        Polynomial::monomial(GaussianRational::from(c), (a, b))
    }

    #[test]
    fn monomial_square_root() {
        let cert = power_certificate(&mono(1, 2, 4), 2, 8).unwrap();
        assert!(cert.residual < 1e-14);
        let c = cert.coeff(1, 2);
        assert!((c.norm() - 1.0).abs() < 1e-12);
        let others: f64 = cert
            .root
            .iter()
            .filter(|t| t.exponent != (1, 2))
            .map(|t| t.coeff.norm())
            .sum();
        assert!(others < 1e-12);
    }

    #[test]
    fn binomial_series() {
        // sqrt(z1^2 + z1^3) = z1 (1 + z1)^(1/2); binomial coefficients by recurrence.
        let p = &mono(1, 2, 0) + &mono(1, 3, 0);
        let cert = power_certificate(&p, 2, 12).unwrap();
        assert!(cert.residual <= 1e-10);
        let mut binom = 1.0;
        for k in 0..12u32 {
            // coefficient of z1^(k+1)
            let c = cert.coeff(k + 1, 0);
            assert!((c - binom).norm() < 1e-12, "k = {k}: {c} vs {binom}");
            binom *= (0.5 - k as f64) / (k as f64 + 1.0);
        }
    }

    #[test]
    fn refuses_non_powers() {
        assert!(matches!(
            power_certificate(&mono(1, 1, 1), 2, 8),
            Err(PowerError::NotAPower { m: 2, .. })
        ));
        assert!(matches!(
            power_certificate(&Polynomial::zero(), 2, 8),
            Err(PowerError::ZeroPolynomial)
        ));
    }

    #[test]
    fn unit_cube_root() {
        // 8 + z1 + z2 z1: units have roots of every order.
        let p = &(&mono(8, 0, 0) + &mono(1, 1, 0)) + &mono(1, 1, 1);
        let cert = power_certificate(&p, 3, 10).unwrap();
        assert!(cert.residual <= CERTIFICATE_TOL);
        assert!((cert.coeff(0, 0) - 2.0).norm() < 1e-12);
    }

    #[test]
    fn mixed_initial_form() {
        // ((z1 + 2 i z2)(z1 - z2) + z1^3)^2 has initial form with two double roots.
        let q = &(&(&mono(1, 1, 0)
            + &Polynomial::z2().scale(&GaussianRational::from_parts((0, 1), (2, 1))))
            * &(&mono(1, 1, 0) - &mono(1, 0, 1)))
            + &mono(1, 3, 0);
        let cert = power_certificate(&q.pow(2), 2, 12).unwrap();
        assert!(cert.residual <= CERTIFICATE_TOL, "{}", cert.residual);
    }
}
