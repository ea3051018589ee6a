//! Invariant pairs shared by rigid double covers and scroll divisors, plus the
//! geography data of the covers.
//!
//! A cover with invariants `(p_g, c1²)` lands on the scroll line of `m` exactly
//! when `s = ((m-5)d² + 9(m-3)d - (m-3)²(m+4)) / (2(2m-7))`.

use num_integer::Roots;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    classify, deformation_class, smooth_cover_exists, DeformationClass, PairDS, TriState,
};
use crate::error::{Error, Result};
use crate::invariants::cover_invariants;
use crate::scroll::{find_witness, line_for_m, parametric_invariants, ScrollWitness};

/// Largest `m` whose line has been fully analyzed.
pub const CERTIFIED_MAX_M: i64 = 17;

/// `s` as a function of `d` on the line of `m`.
pub fn s_of_d(m: i64, d: u32) -> Result<Ratio<i128>> {
    if m < 4 {
        return Err(Error::InvalidMultiple(m));
    }
    let (m, d) = (m as i128, d as i128);
    let numer = (m - 5) * d * d + 9 * (m - 3) * d - (m - 3) * (m - 3) * (m + 4);
    Ok(Ratio::new(numer, 2 * (2 * m - 7)))
}

/// Residues of `d` for which the line of `m` (5 <= m <= 10) carries integral
/// covers with integral scroll data.
pub fn congruence_residues(m: i64) -> Result<(u32, &'static [u32])> {
    Ok(match m {
        5 => (4, &[1, 2]),
        6 => (25, &[0, 3]),
        7 => (7, &[4, 6]),
        8 => (21, &[5, 19]),
        9 => (88, &[6, 30, 61, 85]),
        10 => (39, &[7, 20, 22, 35]),
        _ => return Err(Error::CongruenceOutOfRange(m)),
    })
}

pub fn congruence_ok(m: i64, d: u32) -> Result<bool> {
    let (modulus, residues) = congruence_residues(m)?;
    Ok(residues.contains(&(d % modulus)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiPoint {
    /// `p_g`
    pub x: i64,
    /// `c1²`
    pub y: i64,
    pub m: i64,
    pub d: u32,
    pub s: u32,
    pub scroll_witness: Option<ScrollWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiEnumeration {
    pub m: i64,
    pub d_max: u32,
    /// False for `m` beyond the analyzed range.
    pub certified: bool,
    /// Covers on the line with a scroll witness: the members of Ξ.
    pub points: Vec<XiPoint>,
    /// Rigid covers on the line for which no admissible scroll divisor exists.
    pub unwitnessed: Vec<XiPoint>,
}

impl XiEnumeration {
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.points.iter().map(|p| (p.x, p.y)).collect()
    }
}

fn candidate(m: i64, d: u32) -> Result<Option<XiPoint>> {
    let s = s_of_d(m, d)?;
    if !s.is_integer() || *s.numer() < 1 || *s.numer() > u32::MAX as i128 {
        return Ok(None);
    }
    let pair = PairDS::new(d, *s.numer() as u32)?;
    if deformation_class(pair) != DeformationClass::Degree2Always {
        return Ok(None);
    }
    let inv = cover_invariants(pair)?;
    let (x, y) = (inv.p_g, inv.c1sq);
    let inconsistent = |reason: String| Error::Inconsistent {
        d: pair.d(),
        s: pair.s(),
        reason,
    };
    if !line_for_m(m)?.contains((x, y)) {
        return Err(inconsistent(format!(
            "({x}, {y}) is off the line of m = {m}"
        )));
    }
    let scroll_witness = find_witness(m, x)?;
    if let Some(w) = scroll_witness {
        let sc = parametric_invariants(w.r, m, w.l)?;
        if (sc.p_g, sc.c1sq) != (x, y) {
            return Err(inconsistent(format!(
                "witness {w:?} gives ({}, {}), cover gives ({x}, {y})",
                sc.p_g, sc.c1sq
            )));
        }
    }
    Ok(Some(XiPoint {
        x,
        y,
        m,
        d: pair.d(),
        s: pair.s(),
        scroll_witness,
    }))
}

/// Members of Ξ on the line of `m` coming from covers with `2 <= d <= d_max`,
/// in increasing `d`.
pub fn enumerate_xi(m: i64, d_max: u32) -> Result<XiEnumeration> {
    if m < 4 {
        return Err(Error::InvalidMultiple(m));
    }
    let found: Vec<XiPoint> = (2..=d_max.max(1))
        .into_par_iter()
        .map(|d| candidate(m, d))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let (points, unwitnessed) = found.into_iter().partition(|p| p.scroll_witness.is_some());
    Ok(XiEnumeration {
        m,
        d_max,
        certified: m <= CERTIFIED_MAX_M,
        points,
        unwitnessed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalMethod {
    /// Hull of `χ` over the classified `(d, s)` zones.
    Zones,
    /// Between the two bounding parabolas, intersected with the line.
    Parabolas,
}

/// The line `y - 2x - c = 0` in the `(χ, c1²)` plane and its integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeographyLine {
    pub d: u32,
    /// `c = d² - 3d - 4`
    pub intercept: i64,
    pub x_min: i64,
    pub x_max: i64,
    pub method: IntervalMethod,
}

impl GeographyLine {
    pub fn equation(&self) -> String {
        match self.intercept {
            0 => "y-2x=0".to_string(),
            c if c > 0 => format!("y-2x-{c}=0"),
            c => format!("y-2x+{}=0", -c),
        }
    }

    /// `x=6` or `5<=x<=10`.
    pub fn range(&self) -> String {
        if self.x_min == self.x_max {
            format!("x={}", self.x_min)
        } else {
            format!("{}<=x<={}", self.x_min, self.x_max)
        }
    }
}

pub fn line_intercept(d: u32) -> i64 {
    let d = d as i64;
    d * d - 3 * d - 4
}

fn has_known_class(pair: PairDS) -> bool {
    matches!(
        deformation_class(pair),
        DeformationClass::Degree1 | DeformationClass::Degree2Always
    )
}

fn cover_pairs(d: u32) -> impl Iterator<Item = PairDS> {
    (1u32..)
        .map(move |s| PairDS::new(d, s).expect("d >= 2, s >= 1"))
        .take_while(|&p| smooth_cover_exists(p) != TriState::No)
}

/// `[min χ, max χ]` over covers of degree `d` with a settled deformation class.
pub fn interval_from_zones(d: u32) -> Result<(i64, i64)> {
    let chis: Vec<i64> = cover_pairs(d)
        .filter(|&p| has_known_class(p))
        .map(|p| cover_invariants(p).map(|inv| inv.chi))
        .collect::<Result<_>>()?;
    let lo = chis.iter().min().copied();
    let hi = chis.iter().max().copied();
    lo.zip(hi).ok_or(Error::InvalidPair { d, s: 0 })
}

fn isqrt(n: i128) -> i128 {
    debug_assert!(n >= 0);
    (n as u128).sqrt() as i128
}

/// Integer range of `x` on `y = 2x + c` between the parabolas
/// `256x² - 96xy + 9y² - 638x + 44y = 0` and `16x² - 8xy + y² - 48x - 6y = 0`,
/// taking the larger intersection of the line with each.
pub fn interval_from_parabolas(d: u32) -> (i64, i64) {
    let c = line_intercept(d) as i128;
    // on the line: 100x² - (60c + 550)x + 9c² + 44c = 0
    let (a1, b1, c1) = (100i128, 60 * c + 550, 9 * c * c + 44 * c);
    // on the line: 4x² - (4c + 60)x + c² - 6c = 0
    let (a2, b2, c2) = (4i128, 4 * c + 60, c * c - 6 * c);

    let disc1 = b1 * b1 - 4 * a1 * c1;
    let disc2 = b2 * b2 - 4 * a2 * c2;
    // x >= (b + sqrt(disc)) / 2a  <=>  2ax - b >= 0 and (2ax - b)² >= disc
    let above = |x: i128| {
        let t = 2 * a1 * x - b1;
        t >= 0 && t * t >= disc1
    };
    // x <= (b + sqrt(disc)) / 2a  <=>  2ax - b <= 0 or (2ax - b)² <= disc
    let below = |x: i128| {
        let t = 2 * a2 * x - b2;
        t <= 0 || t * t <= disc2
    };
    let mut lo = (b1 + isqrt(disc1.max(0))) / (2 * a1);
    while !above(lo) {
        lo += 1;
    }
    while above(lo - 1) {
        lo -= 1;
    }
    let mut hi = (b2 + isqrt(disc2.max(0))) / (2 * a2);
    while !below(hi) {
        hi -= 1;
    }
    while below(hi + 1) {
        hi += 1;
    }
    (lo as i64, hi as i64)
}

/// One line per `d` in `d_lo..=d_hi`.
pub fn geography_lines(d_lo: u32, d_hi: u32) -> Result<Vec<GeographyLine>> {
    (d_lo..=d_hi)
        .map(|d| {
            PairDS::new(d, 1)?;
            let ((x_min, x_max), method) = if d <= 6 {
                (interval_from_zones(d)?, IntervalMethod::Zones)
            } else {
                (interval_from_parabolas(d), IntervalMethod::Parabolas)
            };
            Ok(GeographyLine {
                d,
                intercept: line_intercept(d),
                x_min,
                x_max,
                method,
            })
        })
        .collect()
}

/// A cover placed in the `(χ, c1²)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeographyPoint {
    pub d: u32,
    pub s: u32,
    pub chi: i64,
    pub c1sq: i64,
    pub p_g: i64,
    pub deformation: DeformationClass,
}

/// Every pair with a smooth cover, sorted by `(d, s)`.
pub fn geography_points(d_lo: u32, d_hi: u32) -> Result<Vec<GeographyPoint>> {
    let mut out = Vec::new();
    for d in d_lo..=d_hi {
        PairDS::new(d, 1)?;
        for pair in cover_pairs(d) {
            let rec = classify(pair)?;
            if rec.smooth_cover != TriState::Yes {
                continue;
            }
            let inv = cover_invariants(pair)?;
            out.push(GeographyPoint {
                d,
                s: pair.s(),
                chi: inv.chi,
                c1sq: inv.c1sq,
                p_g: inv.p_g,
                deformation: rec.deformation,
            });
        }
    }
    Ok(out)
}
