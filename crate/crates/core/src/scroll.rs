//! Smooth divisors `S ∈ |mH + lF|` on rational normal scrolls `S(a, b, c)`.
//!
//! With `r = a + b + c + 3` and `K = rm + 3l`, adjunction and Riemann-Roch give
//!
//! ```text
//! p_g(S)  = (m-2)(m-1)K/6 - (m-2)(m-1)(m+1)/2
//! c1²(S)  = (m-3)(m-1)K   - m(m-3)(3m+1)
//! ```
//!
//! and eliminating `K` puts `(p_g, c1²)` on the line
//! `(m-2) y = 6(m-3) x - (m-2)(m-3)(m+3)`.

use num_integer::Roots;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScrollSpec {
    a: u32,
    b: u32,
    c: u32,
}

impl ScrollSpec {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        if a > b || b > c {
            return Err(Error::InvalidScroll { a, b, c });
        }
        Ok(Self { a, b, c })
    }

    pub fn abc(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    pub fn r(&self) -> i64 {
        (self.a + self.b + self.c) as i64 + 3
    }

    /// Degree of the scroll in `P^{r-1}`.
    pub fn degree(&self) -> i64 {
        self.r() - 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    m: i64,
    l: i64,
}

impl DivisorClass {
    pub fn new(m: i64, l: i64) -> Result<Self> {
        check_m(m)?;
        Ok(Self { m, l })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn l(&self) -> i64 {
        self.l
    }
}

fn check_m(m: i64) -> Result<()> {
    if m < 4 {
        return Err(Error::InvalidMultiple(m));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollInvariants {
    pub p_g: i64,
    pub c1sq: i64,
}

fn exact_div(what: &'static str, numer: i128, denom: i128) -> Result<i64> {
    if numer % denom != 0 {
        return Err(Error::NonIntegral { what, numer, denom });
    }
    Ok((numer / denom) as i64)
}

/// `(p_g, c1²)` from `r`, `m`, `l` alone.
pub fn parametric_invariants(r: i64, m: i64, l: i64) -> Result<ScrollInvariants> {
    check_m(m)?;
    let (r, m, l) = (r as i128, m as i128, l as i128);
    let k = r * m + 3 * l;
    let pencil = (m - 2) * (m - 1);
    let p_g = exact_div("p_g", pencil * k - 3 * pencil * (m + 1), 6)?;
    let c1sq = (m - 3) * (m - 1) * k - m * (m - 3) * (3 * m + 1);
    Ok(ScrollInvariants {
        p_g,
        c1sq: c1sq as i64,
    })
}

pub fn scroll_surface_invariants(spec: ScrollSpec, cls: DivisorClass) -> Result<ScrollInvariants> {
    parametric_invariants(spec.r(), cls.m, cls.l)
}

/// `y = (slope_num / slope_den) x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicitLine {
    pub m: i64,
    pub slope_num: i64,
    pub slope_den: i64,
    pub intercept: i64,
}

impl ImplicitLine {
    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.slope_num, self.slope_den)
    }

    pub fn eval(&self, x: i64) -> Ratio<i64> {
        self.slope() * x + self.intercept
    }

    pub fn contains(&self, (x, y): (i64, i64)) -> bool {
        let (x, y) = (x as i128, y as i128);
        self.slope_den as i128 * y
            == self.slope_num as i128 * x + self.slope_den as i128 * self.intercept as i128
    }
}

pub fn line_for_m(m: i64) -> Result<ImplicitLine> {
    check_m(m)?;
    Ok(ImplicitLine {
        m,
        slope_num: 6 * (m - 3),
        slope_den: m - 2,
        intercept: -(m - 3) * (m + 3),
    })
}

pub fn on_line(m: i64, point: (i64, i64)) -> Result<bool> {
    Ok(line_for_m(m)?.contains(point))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineHit {
    pub pair: (i64, i64),
    pub m: i64,
}

/// Every `m >= 4` whose line passes through `(x, y)`, ascending.
///
/// Membership is the monic cubic
/// `m³ - 2m² + (y - 9 - 6x) m + (18 + 18x - 2y) = 0`, so an integer root
/// divides the constant term. Since the slope lies in `[3, 6)` for `m >= 4`,
/// a root also satisfies `m² <= max(6x, 3x) - y + 9`, which bounds the search.
pub fn lines_through(point: (i64, i64)) -> Vec<i64> {
    let (x, y) = (point.0 as i128, point.1 as i128);
    let bound_sq = (6 * x).max(3 * x) - y + 9;
    if bound_sq < 16 {
        return Vec::new();
    }
    let bound = (bound_sq as u128).sqrt() as i128;
    let c1 = y - 9 - 6 * x;
    let c0 = 18 + 18 * x - 2 * y;
    (4..=bound)
        .filter(|&m| c0 % m == 0)
        .filter(|&m| m * m * m - 2 * m * m + c1 * m + c0 == 0)
        .map(|m| m as i64)
        .collect()
}

/// Which of `pairs` (as `(p_g, c1²)`) lie on a line `m >= 4`, with every `m`.
pub fn noin3folds_check(pairs: &[(i64, i64)]) -> Vec<LineHit> {
    pairs
        .iter()
        .flat_map(|&pair| {
            lines_through(pair)
                .into_iter()
                .map(move |m| LineHit { pair, m })
        })
        .collect()
}

/// `ma + l > 0` and `(m-3)a + r + l - 5 > 0`: `mH + lF` and `K_Z + S` are
/// very ample, so a general member is smooth with very ample canonical class.
pub fn scroll_admissible(spec: ScrollSpec, cls: DivisorClass) -> bool {
    let a = spec.a as i64;
    cls.m * a + cls.l > 0 && (cls.m - 3) * a + spec.r() + cls.l - 5 > 0
}

/// The `m = 4` case where `K_Z + S = H - F` is base-point-free but not ample,
/// as for `(p_g, c1²) = (5, 8)` on `S(1, 2, 2)` with `l = -4`.
pub fn is_m4_exception(spec: ScrollSpec, cls: DivisorClass) -> bool {
    let a = spec.a as i64;
    cls.m == 4 && a >= 1 && spec.r() + cls.l - 5 == -1 && 4 * a + cls.l >= 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    /// Both inequalities of [`scroll_admissible`] hold.
    Admissible,
    /// [`is_m4_exception`].
    M4BasePointFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollWitness {
    pub r: i64,
    pub l: i64,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub kind: WitnessKind,
}

impl ScrollWitness {
    pub fn spec(&self) -> ScrollSpec {
        ScrollSpec::new(self.a, self.b, self.c).expect("witness scroll is sorted")
    }
}

/// `a <= b <= c`, `a >= 1`, `a + b + c = total`, in lexicographic order.
fn partitions3(total: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (1..=total / 3).flat_map(move |a| {
        let rest = total - a;
        (a..=rest / 2).map(move |b| (a, b, rest - b))
    })
}

/// A scroll divisor with `p_g = x` on the line of `m`, if one exists.
///
/// `x` fixes `K = rm + 3l`. With the largest `a` for a given `r`, both
/// admissibility inequalities are unchanged under `r -> r + 3`, so `r` in
/// `6..=8` decides existence. Returns the smallest `r`, then the
/// lexicographically smallest `(a, b, c)`.
pub fn find_witness(m: i64, x: i64) -> Result<Option<ScrollWitness>> {
    check_m(m)?;
    let pencil = (m - 2) as i128 * (m - 1) as i128;
    let numer = 6 * x as i128 + 3 * pencil * (m + 1) as i128;
    if numer % pencil != 0 {
        return Ok(None);
    }
    let k = (numer / pencil) as i64;

    for r in 6..=8i64 {
        if (k - r * m).rem_euclid(3) != 0 {
            continue;
        }
        let l = (k - r * m) / 3;
        let cls = DivisorClass::new(m, l)?;
        for (a, b, c) in partitions3(r as u32 - 3) {
            let spec = ScrollSpec::new(a, b, c)?;
            if scroll_admissible(spec, cls) {
                return Ok(Some(ScrollWitness {
                    r,
                    l,
                    a,
                    b,
                    c,
                    kind: WitnessKind::Admissible,
                }));
            }
        }
    }

    if m == 4 {
        // l = 4 - r and 4r + 3l = K force r = K - 12
        let r = k - 12;
        if r >= 6 {
            let l = 4 - r;
            let cls = DivisorClass::new(m, l)?;
            for (a, b, c) in partitions3(r as u32 - 3) {
                let spec = ScrollSpec::new(a, b, c)?;
                if is_m4_exception(spec, cls) {
                    return Ok(Some(ScrollWitness {
                        r,
                        l,
                        a,
                        b,
                        c,
                        kind: WitnessKind::M4BasePointFree,
                    }));
                }
            }
        }
    }
    Ok(None)
}
