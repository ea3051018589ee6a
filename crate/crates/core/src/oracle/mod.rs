//! Monte Carlo interpolation oracle for fat-point linear systems on the plane.
//!
//! A system `(k, r, s)` is the space of degree-`k` plane curves with an
//! `r`-fold point at each of `s` general points. Its actual dimension is
//! measured by sampling the points at random in the affine chart `z = 1` over
//! a large prime field and computing the rank of the interpolation matrix
//! exactly. Special configurations can only raise `h^0` (and lower ranks), so
//! the generic value is the minimum of `h^0` (maximum of the rank) over the
//! trials.

pub mod field;
pub mod matrix;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use field::{is_prime, PrimeField, PrimeFieldElement, DEFAULT_PRIME};
pub use matrix::{Echelon, PrimeFieldMatrix};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_TRIALS: usize = 5;

/// Seed, trial count and modulus for one oracle run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub field: PrimeField,
    pub trials: usize,
    pub seed: u64,
}

impl OracleConfig {
    pub fn new(prime: u64, trials: usize, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(Self {
            field: PrimeField::new(prime)?,
            trials,
            seed,
        })
    }

    /// Independent RNG stream for trial `index`, fixed by `(seed, index)`.
    pub fn trial_rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    fn run_trials<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        (0..self.trials).into_par_iter().map(f).collect()
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            field: PrimeField::default(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    }
}

/// Exponent triple `(i, j, l)` of `x^i y^j z^l`.
pub type Monomial = [u32; 3];

/// `(k + 2)(k + 1) / 2`, the number of degree-`k` monomials in three variables.
pub fn ambient_dim(k: u32) -> u64 {
    let k = k as u64;
    (k + 2) * (k + 1) / 2
}

/// Degree-`k` monomials in graded lex order with `x > y > z`.
pub fn monomial_basis(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(ambient_dim(k) as usize);
    for i in (0..=k).rev() {
        for j in (0..=k - i).rev() {
            out.push([i, j, k - i - j]);
        }
    }
    out
}

/// Position of `x^i y^j z^(k-i-j)` in [`monomial_basis`]`(k)`.
pub fn monomial_index(k: u32, i: u32, j: u32) -> usize {
    debug_assert!(i + j <= k);
    let above = (k - i) as usize;
    above * (above + 1) / 2 + (k - i - j) as usize
}

/// Plane curves of degree `k` with multiplicity `r` at each of `s` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FatPointSystem {
    pub degree: u32,
    pub multiplicity: u32,
    pub point_count: u32,
}

impl FatPointSystem {
    pub fn new(degree: u32, multiplicity: u32, point_count: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::InvalidSystem("multiplicity must be positive".into()));
        }
        if point_count == 0 {
            return Err(Error::InvalidSystem("point count must be positive".into()));
        }
        Ok(Self {
            degree,
            multiplicity,
            point_count,
        })
    }

    pub fn ambient_dim(&self) -> u64 {
        ambient_dim(self.degree)
    }

    /// `s * r(r + 1) / 2` linear conditions.
    pub fn conditions(&self) -> u64 {
        let r = self.multiplicity as u64;
        self.point_count as u64 * r * (r + 1) / 2
    }

    /// `N(k) - C(r, s)`, which may be negative.
    pub fn virtual_dim(&self) -> i64 {
        self.ambient_dim() as i64 - self.conditions() as i64
    }

    pub fn expected_h0(&self) -> u64 {
        self.virtual_dim().max(0) as u64
    }

    fn check_field(&self, field: PrimeField) -> Result<()> {
        // derivative conditions match the fat-point ideal only when p > k
        if self.degree as u64 >= field.modulus() {
            return Err(Error::InvalidSystem(format!(
                "degree {} not below the field characteristic",
                self.degree
            )));
        }
        Ok(())
    }
}

/// Distinct affine points `(x, y)` (with `z = 1`) over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub points: Vec<(u64, u64)>,
    pub seed: u64,
    pub stream: u64,
}

impl PointConfiguration {
    /// Wrap explicit points; rejects repeated points.
    pub fn from_points(field: PrimeField, points: Vec<(u64, u64)>) -> Result<Self> {
        let points: Vec<_> = points
            .into_iter()
            .map(|(x, y)| (field.reduce(x), field.reduce(y)))
            .collect();
        let mut seen = HashSet::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(*p) {
                return Err(Error::DegenerateConfiguration(i));
            }
        }
        Ok(Self {
            points,
            seed: 0,
            stream: 0,
        })
    }

    /// `s` uniform points, resampling collisions. Bit-exact for a given
    /// `(field, s, seed, stream)`.
    pub fn random(field: PrimeField, s: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self::sample(field, s, &mut rng, seed, stream)
    }

    fn sample(field: PrimeField, s: usize, rng: &mut impl Rng, seed: u64, stream: u64) -> Self {
        let p = field.modulus();
        let mut seen = HashSet::with_capacity(s);
        let mut points = Vec::with_capacity(s);
        while points.len() < s {
            let pt = (rng.gen_range(0..p), rng.gen_range(0..p));
            if seen.insert(pt) {
                points.push(pt);
            }
        }
        Self {
            points,
            seed,
            stream,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn falling_factorial(field: PrimeField, n: u32, a: u32) -> u64 {
    (0..a).fold(1, |acc, t| field.mul(acc, (n - t) as u64))
}

fn powers(field: PrimeField, base: u64, max: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = 1;
    for _ in 0..=max {
        out.push(acc);
        acc = field.mul(acc, base);
    }
    out
}

/// Interpolation matrix of `sys` at `cfg`.
///
/// Rows are the partial derivatives `d^a/dx^a d^b/dy^b` with `a + b < r` of the
/// dehomogenized polynomial at each point; columns follow
/// [`monomial_basis`]`(k)`. The kernel is the space of degree-`k` forms with an
/// `r`-fold point at every configuration point.
pub fn vanishing_matrix(
    field: PrimeField,
    cfg: &PointConfiguration,
    sys: &FatPointSystem,
) -> Result<PrimeFieldMatrix> {
    if cfg.len() != sys.point_count as usize {
        return Err(Error::PointCountMismatch {
            expected: sys.point_count as usize,
            actual: cfg.len(),
        });
    }
    sys.check_field(field)?;
    let mut seen = HashSet::with_capacity(cfg.len());
    for (i, p) in cfg.points.iter().enumerate() {
        if !seen.insert((field.reduce(p.0), field.reduce(p.1))) {
            return Err(Error::DegenerateConfiguration(i));
        }
    }

    let k = sys.degree;
    let r = sys.multiplicity;
    let basis = monomial_basis(k);
    let mut m = PrimeFieldMatrix::zeros(field, 0, basis.len());
    let ff: Vec<Vec<u64>> = (0..=k)
        .map(|n| {
            (0..r)
                .map(|a| {
                    if a <= n {
                        falling_factorial(field, n, a)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let mut row = vec![0u64; basis.len()];
    for &(px, py) in &cfg.points {
        let xp = powers(field, px, k);
        let yp = powers(field, py, k);
        for a in 0..r {
            for b in 0..(r - a) {
                for (slot, &[i, j, _]) in row.iter_mut().zip(&basis) {
                    *slot = if a > i || b > j {
                        0
                    } else {
                        let c = field.mul(ff[i as usize][a as usize], ff[j as usize][b as usize]);
                        field.mul(c, field.mul(xp[(i - a) as usize], yp[(j - b) as usize]))
                    };
                }
                m.push_row(&row);
            }
        }
    }
    Ok(m)
}

fn random_configuration(cfg: &OracleConfig, s: u32, trial: usize) -> PointConfiguration {
    PointConfiguration::random(cfg.field, s as usize, cfg.seed, trial as u64)
}

/// `h^0` of `sys` for one trial configuration.
pub fn h0_single_trial(sys: &FatPointSystem, cfg: &OracleConfig, trial: usize) -> Result<u64> {
    let points = random_configuration(cfg, sys.point_count, trial);
    let m = vanishing_matrix(cfg.field, &points, sys)?;
    Ok(sys.ambient_dim() - m.rank() as u64)
}

/// Generic `h^0`: the minimum over `cfg.trials` independent configurations.
pub fn h0_fatpoints(sys: &FatPointSystem, cfg: &OracleConfig) -> Result<u64> {
    let per_trial = cfg.run_trials(|t| h0_single_trial(sys, cfg, t))?;
    Ok(per_trial.into_iter().min().expect("at least one trial"))
}

/// `h^1 = h^0 - (N(k) - C(r, s))`, never negative.
pub fn h1_fatpoints(sys: &FatPointSystem, cfg: &OracleConfig) -> Result<u64> {
    let h0 = h0_fatpoints(sys, cfg)?;
    Ok(h1_from_h0(sys, h0))
}

fn h1_from_h0(sys: &FatPointSystem, h0: u64) -> u64 {
    let h1 = h0 as i64 - sys.virtual_dim();
    debug_assert!(h1 >= 0);
    h1 as u64
}

/// Excess of the measured `h^0` over the expected `max(0, N - C)`.
pub fn speciality_defect(sys: &FatPointSystem, cfg: &OracleConfig) -> Result<u64> {
    Ok(h0_fatpoints(sys, cfg)? - sys.expected_h0())
}

/// All three fat-point numbers from one set of trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPointMeasurement {
    pub system: FatPointSystem,
    pub h0: u64,
    pub h1: u64,
    pub expected_h0: u64,
    pub speciality_defect: u64,
}

pub fn measure_fatpoints(sys: &FatPointSystem, cfg: &OracleConfig) -> Result<FatPointMeasurement> {
    let h0 = h0_fatpoints(sys, cfg)?;
    Ok(FatPointMeasurement {
        system: *sys,
        h0,
        h1: h1_from_h0(sys, h0),
        expected_h0: sys.expected_h0(),
        speciality_defect: h0 - sys.expected_h0(),
    })
}

/// Measured rank of the multiplication map
/// `H^0(O(d-1) ⊗ m) ⊗ H^0(O(1)) -> H^0(O(d) ⊗ m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaRank {
    pub rank: u64,
    /// `3 * dim V_{d-1}`
    pub dim_source: u64,
    /// `dim V_d`
    pub dim_target: u64,
}

impl AlphaRank {
    pub fn is_surjective(&self) -> bool {
        self.rank == self.dim_target
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.dim_source
    }

    pub fn cokernel_dim(&self) -> u64 {
        self.dim_target - self.rank
    }

    pub fn kernel_dim(&self) -> u64 {
        self.dim_source - self.rank
    }
}

/// α for one trial configuration.
pub fn alpha_single_trial(d: u32, s: u32, cfg: &OracleConfig, trial: usize) -> Result<AlphaRank> {
    if d < 2 {
        return Err(Error::InvalidSystem(format!("alpha needs d >= 2, got {d}")));
    }
    let points = random_configuration(cfg, s, trial);
    let lower = FatPointSystem::new(d - 1, 1, s)?;
    let upper = FatPointSystem::new(d, 1, s)?;
    let lower_basis = vanishing_matrix(cfg.field, &points, &lower)?.kernel();
    let dim_target =
        upper.ambient_dim() - vanishing_matrix(cfg.field, &points, &upper)?.rank() as u64;

    let source = monomial_basis(d - 1);
    let target_len = ambient_dim(d) as usize;
    let mut products = PrimeFieldMatrix::zeros(cfg.field, 0, target_len);
    let mut row = vec![0u64; target_len];
    for v in &lower_basis {
        for var in 0..3 {
            row.iter_mut().for_each(|x| *x = 0);
            for (&coef, &[i, j, l]) in v.iter().zip(&source) {
                if coef == 0 {
                    continue;
                }
                let mut e = [i, j, l];
                e[var] += 1;
                row[monomial_index(d, e[0], e[1])] = coef;
            }
            products.push_row(&row);
        }
    }
    Ok(AlphaRank {
        rank: products.rank() as u64,
        dim_source: 3 * lower_basis.len() as u64,
        dim_target,
    })
}

/// Generic α: among the trials, the one with the smallest `(dim_target,
/// dim_source)` and, among those, the largest rank.
pub fn alpha_rank(d: u32, s: u32, cfg: &OracleConfig) -> Result<AlphaRank> {
    if s == 0 {
        return Err(Error::InvalidSystem("alpha needs s >= 1".into()));
    }
    let per_trial = cfg.run_trials(|t| alpha_single_trial(d, s, cfg, t))?;
    Ok(per_trial
        .into_iter()
        .min_by_key(|a| (a.dim_target, a.dim_source, std::cmp::Reverse(a.rank)))
        .expect("at least one trial"))
}
