//! Level curves `P = c` sampled numerically, and whether `f` is constant on them.
//!
//! A leaf is sampled by slicing: `z1` runs over a polar grid and `P(z1, ·) = c`
//! is solved for `z2`. All slice roots are pooled into one leaf statistic,
//! which is sound for generic `c` because such a leaf is then connected.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Polynomial;
use crate::decompose::{decompose_exact, DecompositionResult};
use crate::numeric::{
    find_roots, horner_dd, CDd, CompiledPoly, ComplexF, NumericError, DEFAULT_ROOT_TOL,
};
use crate::power::{power_order, Rho};

/// Relative spread under which `f` counts as constant on a leaf.
pub const SPREAD_TOL: f64 = 1e-8;
/// Points with `|P - c| > LEAF_RESIDUAL_TOL · (|c| + 1)` are discarded.
pub const LEAF_RESIDUAL_TOL: f64 = 1e-8;
pub const DEFAULT_LEVELS: usize = 8;
pub const DEFAULT_GROWTH_RADII: [f64; 3] = [1.0, 10.0, 100.0];

// Slice coefficients below this fraction of the largest are treated as zero.
const DEGENERATE_COEFF: f64 = 1e-13;
const NEWTON_STEPS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub radii: Vec<f64>,
    pub angles_per_radius: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            radii: vec![1.0, 2.0, 4.0, 8.0],
            angles_per_radius: 16,
        }
    }
}

impl Grid {
    fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        let n = self.angles_per_radius.max(1);
        self.radii.iter().flat_map(move |&r| {
            (0..n)
                .map(move |k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / n as f64))
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LeafError {
    #[error("P is constant")]
    ConstantP,
    #[error("no point of the level curve P = {level} survived sampling")]
    EmptyLeafSample { level: ComplexF },
    #[error("P is a power in the power series ring or constant (rho = {rho})")]
    HypothesisViolated { rho: Rho },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeafSample {
    pub level: ComplexF,
    pub points: Vec<(ComplexF, ComplexF)>,
    /// Empty until [`LeafSample::with_function`].
    pub f_values: Vec<ComplexF>,
    /// `max |f_i - f_j|`.
    pub spread: f64,
    /// `max(1, max |f_i|)`.
    pub scale: f64,
    /// `max |P(point) - c|`.
    pub residual_max: f64,
    /// Slices whose polynomial lost degree or had to be dropped.
    pub degenerate_slices: usize,
    pub discarded_points: usize,
}

impl LeafSample {
    pub fn relative_spread(&self) -> f64 {
        self.spread / self.scale
    }

    /// Evaluates `f` at every point, in double-double.
    pub fn with_function(mut self, f: &Polynomial) -> Result<Self, NumericError> {
        let fc = CompiledPoly::new(f);
        self.f_values = self
            .points
            .iter()
            .map(|&(a, b)| fc.eval(a, b))
            .collect::<Result<_, _>>()?;
        self.scale = self.f_values.iter().map(|v| v.norm()).fold(1.0, f64::max);
        self.spread = max_pairwise(&self.f_values);
        Ok(self)
    }
}

fn max_pairwise(v: &[Complex64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in v.iter().enumerate() {
        for b in &v[i + 1..] {
            worst = worst.max((a - b).norm());
        }
    }
    worst
}

/// Roots `w` of `P(fixed, w) = c`, each with its double-double residual.
///
/// `cp` is `P` compiled with the solved variable in second position.
struct Slice {
    roots: Vec<(Complex64, f64)>,
    degenerate: bool,
}

fn solve_slice(cp: &CompiledPoly, fixed: Complex64, c: Complex64) -> Result<Slice, NumericError> {
    let mut coeffs = cp.slice_z2(fixed);
    coeffs[0] = coeffs[0] - CDd::from_complex(c);
    let approx: Vec<Complex64> = coeffs.iter().map(|a| a.to_complex()).collect();
    if approx
        .iter()
        .any(|a| !a.is_finite() || a.norm() > crate::numeric::OVERFLOW_LIMIT)
    {
        return Err(NumericError::Overflow);
    }
    let big = approx.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let full = approx.len() - 1;
    let deg = approx
        .iter()
        .rposition(|a| a.norm() > DEGENERATE_COEFF * big)
        .unwrap_or(0);
    let degenerate = deg < full;
    if deg == 0 {
        return Ok(Slice {
            roots: Vec::new(),
            degenerate: true,
        });
    }
    coeffs.truncate(deg + 1);
    let found = match find_roots(&approx[..=deg], DEFAULT_ROOT_TOL) {
        Ok(rs) => rs.roots,
        Err(NumericError::NoConvergence { .. }) => {
            return Ok(Slice {
                roots: Vec::new(),
                degenerate: true,
            })
        }
        Err(e) => return Err(e),
    };
    let deriv: Vec<CDd> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &a)| a * CDd::from_complex(Complex64::new(k as f64, 0.0)))
        .collect();
    let roots = found
        .into_iter()
        .map(|w| polish(&coeffs, &deriv, w))
        .collect();
    Ok(Slice { roots, degenerate })
}

/// Newton steps with the polynomial evaluated in double-double; keeps the
/// iterate with the smallest residual.
fn polish(coeffs: &[CDd], deriv: &[CDd], mut w: Complex64) -> (Complex64, f64) {
    let mut value = horner_dd(coeffs, CDd::from_complex(w)).to_complex();
    for _ in 0..NEWTON_STEPS {
        let d = horner_dd(deriv, CDd::from_complex(w)).to_complex();
        if d.norm() == 0.0 || value.norm() == 0.0 {
            break;
        }
        let cand = w - value / d;
        if !cand.is_finite() {
            break;
        }
        let cv = horner_dd(coeffs, CDd::from_complex(cand)).to_complex();
        if cv.norm() >= value.norm() {
            break;
        }
        w = cand;
        value = cv;
    }
    (w, value.norm())
}

/// Which coordinate is held fixed on the grid.
#[derive(Clone, Copy)]
enum Fixed {
    Z1,
    Z2,
}

fn sample_on(
    p: &Polynomial,
    c: Complex64,
    fixed_values: impl Iterator<Item = Complex64>,
    fixed: Fixed,
) -> Result<LeafSample, NumericError> {
    let cp = match fixed {
        Fixed::Z1 => CompiledPoly::new(p),
        Fixed::Z2 => CompiledPoly::new(&p.swap_variables()),
    };
    let tol = LEAF_RESIDUAL_TOL * (c.norm() + 1.0);
    let mut sample = LeafSample {
        level: c,
        points: Vec::new(),
        f_values: Vec::new(),
        spread: 0.0,
        scale: 1.0,
        residual_max: 0.0,
        degenerate_slices: 0,
        discarded_points: 0,
    };
    for v in fixed_values {
        let slice = solve_slice(&cp, v, c)?;
        sample.degenerate_slices += usize::from(slice.degenerate);
        for (w, res) in slice.roots {
            if res <= tol {
                sample.residual_max = sample.residual_max.max(res);
                sample.points.push(match fixed {
                    Fixed::Z1 => (v, w),
                    Fixed::Z2 => (w, v),
                });
            } else {
                sample.discarded_points += 1;
            }
        }
    }
    Ok(sample)
}

/// Points of `P = c`: over the `z1` grid when `P` involves `z2`, otherwise
/// the roots of `P(z1) = c` paired with the grid as `z2` values.
pub fn sample_leaf(p: &Polynomial, c: ComplexF, grid: &Grid) -> Result<LeafSample, LeafError> {
    if p.is_constant() {
        return Err(LeafError::ConstantP);
    }
    let fixed = if p.depends_on_z2() {
        Fixed::Z1
    } else {
        Fixed::Z2
    };
    let sample = sample_on(p, c, grid.values(), fixed)?;
    if sample.points.is_empty() {
        return Err(LeafError::EmptyLeafSample { level: c });
    }
    Ok(sample)
}

/// `count` distinct levels drawn uniformly by area from `0.5 ≤ |c| ≤ 2`.
pub fn generic_levels(seed: u64, count: usize) -> Vec<ComplexF> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ComplexF> = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.gen_range(0.25f64..=4.0).sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let c = Complex64::from_polar(r, theta);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelSpread {
    pub level: ComplexF,
    /// `spread / scale`; absent when sampling failed.
    pub relative_spread: Option<f64>,
    pub failure: Option<String>,
}

pub fn leaf_spread_report(
    f: &Polynomial,
    p: &Polynomial,
    levels: &[ComplexF],
    grid: &Grid,
) -> Result<Vec<LevelSpread>, LeafError> {
    if p.is_constant() {
        return Err(LeafError::ConstantP);
    }
    Ok(levels
        .iter()
        .map(|&c| {
            let sampled =
                sample_leaf(p, c, grid).and_then(|s| s.with_function(f).map_err(LeafError::from));
            match sampled {
                Ok(s) => LevelSpread {
                    level: c,
                    relative_spread: Some(s.relative_spread()),
                    failure: None,
                },
                Err(e) => LevelSpread {
                    level: c,
                    relative_spread: None,
                    failure: Some(e.to_string()),
                },
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthTable {
    pub radii: Vec<f64>,
    /// Max `|f|` over leaf points with `|z1| = R` or `|z2| = R`; absent when no
    /// point was found or evaluation overflowed.
    pub max_abs_f: Vec<Option<f64>>,
    /// Set at the first overflow; later radii are not probed.
    pub overflowed: bool,
}

impl GrowthTable {
    /// Consecutive entries grow by at least `factor` per decade of radius.
    /// An overflow counts as growth; a missing entry without one does not.
    pub fn grows_by_factor_per_decade(&self, factor: f64) -> bool {
        let known: Vec<(f64, f64)> = self
            .radii
            .iter()
            .zip(&self.max_abs_f)
            .filter_map(|(&r, v)| v.map(|v| (r, v)))
            .collect();
        if !self.overflowed && known.len() < self.radii.len() {
            return false;
        }
        if known.len() < 2 && !self.overflowed {
            return false;
        }
        known.windows(2).all(|w| {
            let decades = (w[1].0 / w[0].0).log10();
            w[1].1 > w[0].1 && w[1].1 >= w[0].1 * factor.powf(decades)
        })
    }
}

/// Max `|f|` on the leaf `P = c` along the slices `|z1| = R` and `|z2| = R`.
///
/// Both slices are needed: on `z1 z2 = c` the coordinate `z2` is only large
/// where `z1` is small.
pub fn growth_probe(
    f: &Polynomial,
    p: &Polynomial,
    c: ComplexF,
    radii: &[f64],
) -> Result<GrowthTable, LeafError> {
    if p.is_constant() {
        return Err(LeafError::ConstantP);
    }
    let fc = CompiledPoly::new(f);
    let angles = Grid::default().angles_per_radius;
    let mut table = GrowthTable {
        radii: radii.to_vec(),
        max_abs_f: Vec::new(),
        overflowed: false,
    };
    for &r in radii {
        if table.overflowed {
            table.max_abs_f.push(None);
            continue;
        }
        let ring = Grid {
            radii: vec![r],
            angles_per_radius: angles,
        };
        let mut best: Option<f64> = None;
        let mut probe = || -> Result<(), NumericError> {
            for (fixed, needed) in [
                (Fixed::Z1, p.depends_on_z2()),
                (Fixed::Z2, p.depends_on_z1()),
            ] {
                if !needed {
                    continue;
                }
                let s = sample_on(p, c, ring.values(), fixed)?;
                for &(a, b) in &s.points {
                    let v = fc.eval(a, b)?.norm();
                    best = Some(best.map_or(v, |m: f64| m.max(v)));
                }
            }
            Ok(())
        };
        match probe() {
            Ok(()) => table.max_abs_f.push(best),
            Err(NumericError::Overflow) => {
                table.overflowed = true;
                table.max_abs_f.push(None);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremConfig {
    pub num_levels: usize,
    pub grid: Grid,
    pub spread_tol: f64,
    pub seed: u64,
    pub growth_radii: Vec<f64>,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        Self {
            num_levels: DEFAULT_LEVELS,
            grid: Grid::default(),
            spread_tol: SPREAD_TOL,
            seed: 0,
            growth_radii: DEFAULT_GROWTH_RADII.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub exact: DecompositionResult,
    pub leaf_spreads: Vec<LevelSpread>,
    /// `Found` iff every sampled spread is within tolerance.
    pub consistent: bool,
    /// Growth on the worst level, attached when no `h` exists.
    pub growth: Option<GrowthTable>,
}

impl TheoremVerdict {
    pub fn all_spreads_within(&self, tol: f64) -> bool {
        self.leaf_spreads
            .iter()
            .all(|l| l.relative_spread.is_some_and(|s| s <= tol))
    }
}

/// Exact decomposition against constancy on generic leaves.
pub fn theorem_check(
    f: &Polynomial,
    p: &Polynomial,
    config: &TheoremConfig,
) -> Result<TheoremVerdict, LeafError> {
    if p.is_constant() {
        return Err(LeafError::HypothesisViolated { rho: Rho::Infinite });
    }
    let rho = power_order(p).rho;
    if rho != Rho::Finite(1) {
        return Err(LeafError::HypothesisViolated { rho });
    }
    let exact = decompose_exact(f, p).map_err(|_| LeafError::ConstantP)?;
    let levels = generic_levels(config.seed, config.num_levels);
    let leaf_spreads = leaf_spread_report(f, p, &levels, &config.grid)?;
    let all_small = leaf_spreads
        .iter()
        .all(|l| l.relative_spread.is_some_and(|s| s <= config.spread_tol));
    let growth = if exact.is_found() {
        None
    } else {
        let worst = leaf_spreads
            .iter()
            .filter_map(|l| l.relative_spread.map(|s| (l.level, s)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map_or(levels[0], |(c, _)| c);
        Some(growth_probe(f, p, worst, &config.growth_radii)?)
    };
    Ok(TheoremVerdict {
        consistent: exact.is_found() == all_small,
        exact,
        leaf_spreads,
        growth,
    })
}
