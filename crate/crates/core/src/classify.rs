//! Integer case analysis of a pair `(d, s)`: the surface `Y` is the plane blown
//! up at `s` general points, embedded by curves of degree `d` through them.
//!
//! Every zone boundary is compared in exact rational arithmetic. Each verdict
//! carries a short description of the zone that produced it.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted `d`; keeps every polynomial in `d` well inside `i64`.
pub const MAX_DEGREE: u32 = 1_000_000;

type Q = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct PairDS {
    d: u32,
    s: u32,
}

impl PairDS {
    pub fn new(d: u32, s: u32) -> Result<Self> {
        if !(2..=MAX_DEGREE).contains(&d) || s == 0 {
            return Err(Error::InvalidPair { d, s });
        }
        Ok(Self { d, s })
    }

    pub fn d(self) -> u32 {
        self.d
    }

    pub fn s(self) -> u32 {
        self.s
    }

    fn di(self) -> i64 {
        self.d as i64
    }

    fn sq(self) -> Q {
        Q::from_integer(self.s as i64)
    }
}

impl TryFrom<(u32, u32)> for PairDS {
    type Error = Error;
    fn try_from((d, s): (u32, u32)) -> Result<Self> {
        Self::new(d, s)
    }
}

impl From<PairDS> for (u32, u32) {
    fn from(p: PairDS) -> Self {
        (p.d, p.s)
    }
}

impl fmt::Display for PairDS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d, self.s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TriState::Yes => "Yes",
            TriState::No => "No",
            TriState::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Behavior of the canonical map of a general deformation of the double cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeformationClass {
    /// Deforms to a canonical morphism of degree 1.
    Degree1,
    /// Every deformation keeps a degree-2 canonical morphism.
    Degree2Always,
    /// A smooth cover exists but its deformation behavior is not settled.
    OpenQuestion,
    /// No smooth canonical double cover of an embedded `Y`.
    NotApplicable,
}

impl DeformationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DeformationClass::Degree1 => "Degree1",
            DeformationClass::Degree2Always => "Degree2Always",
            DeformationClass::OpenQuestion => "OpenQuestion",
            DeformationClass::NotApplicable => "NotApplicable",
        }
    }
}

impl fmt::Display for DeformationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The seven pairs whose double covers deform to birational canonical maps.
pub const DEGREE1_PAIRS: [(u32, u32); 7] =
    [(3, 5), (3, 6), (4, 8), (4, 9), (4, 10), (5, 13), (5, 14)];

/// Pairs with a smooth cover whose deformation class is unresolved.
pub const OPEN_PAIRS: [(u32, u32); 2] = [(5, 12), (6, 17)];

/// A verdict plus the zone that fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict<T> {
    pub value: T,
    pub zone: &'static str,
}

fn verdict<T>(value: T, zone: &'static str) -> Verdict<T> {
    Verdict { value, zone }
}

// Zone boundaries as exact rationals in d.

fn q(n: i64, den: i64) -> Q {
    Q::new(n, den)
}

/// d²/2 + 3d/2 - 5
fn very_ample_bound(d: i64) -> Q {
    q(d * d + 3 * d - 10, 2)
}

/// d²/5 + 13d/10 + 21/10
fn cover_sufficient_bound(d: i64) -> Q {
    q(2 * d * d + 13 * d + 21, 10)
}

/// d²/5 + 3d/2 + 14/5
fn cover_necessary_bound(d: i64) -> Q {
    q(2 * d * d + 15 * d + 28, 10)
}

/// d²/2 - d/2 + 1
fn alpha_low_bound(d: i64) -> Q {
    q(d * d - d + 2, 2)
}

/// d²/2 - 1/2
fn alpha_gap_top(d: i64) -> Q {
    q(d * d - 1, 2)
}

/// d²/2 + 3d/2 + 1
fn alpha_high_bound(d: i64) -> Q {
    q(d * d + 3 * d + 2, 2)
}

pub fn very_ample_verdict(pair: PairDS) -> Verdict<TriState> {
    let s = pair.s;
    match pair.d {
        2 => verdict(TriState::from_bool(s == 1), "d=2: very ample iff s=1"),
        3 => verdict(TriState::from_bool(s <= 6), "d=3: very ample iff s<=6"),
        4 => verdict(TriState::from_bool(s <= 10), "d=4: very ample iff s<=10"),
        _ => verdict(
            TriState::from_bool(pair.sq() <= very_ample_bound(pair.di())),
            "d>=5: very ample iff s<=d^2/2+3d/2-5",
        ),
    }
}

/// Whether `|dL - E|` is very ample. Never `Unknown`.
pub fn very_ample(pair: PairDS) -> TriState {
    very_ample_verdict(pair).value
}

pub fn smooth_cover_verdict(pair: PairDS) -> Verdict<TriState> {
    let s = pair.s;
    let d = pair.di();
    match pair.d {
        2 => verdict(TriState::from_bool(s == 1), "d=2: smooth cover iff s=1"),
        3 => verdict(TriState::from_bool(s <= 6), "d=3: smooth cover iff s<=6"),
        4 => verdict(TriState::from_bool(s <= 10), "d=4: smooth cover iff s<=10"),
        _ if very_ample(pair) == TriState::No => verdict(TriState::No, "d>=5: not very ample"),
        _ if pair.sq() >= cover_necessary_bound(d) => {
            verdict(TriState::No, "d>=5: violates necessary s<d^2/5+3d/2+14/5")
        }
        5 if s <= 14 => verdict(TriState::Yes, "d=5: sufficient s<=14"),
        5 => verdict(
            TriState::Unknown,
            "d=5: between sufficient s<=14 and necessary s<d^2/5+3d/2+14/5",
        ),
        _ if pair.sq() <= cover_sufficient_bound(d) => {
            verdict(TriState::Yes, "d>=6: sufficient s<=d^2/5+13d/10+21/10")
        }
        _ => verdict(
            TriState::Unknown,
            "d>=6: between sufficient s<=d^2/5+13d/10+21/10 and necessary s<d^2/5+3d/2+14/5",
        ),
    }
}

/// Whether `Y` is very ample under `|dL - E|` and `|-2K_Y + 2dL - 2E|` has a
/// smooth member, i.e. a smooth canonical double cover exists.
pub fn smooth_cover_exists(pair: PairDS) -> TriState {
    smooth_cover_verdict(pair).value
}

pub fn alpha_surjective_verdict(pair: PairDS) -> Verdict<TriState> {
    let s = pair.s;
    let d = pair.di();
    let sq = pair.sq();
    match pair.d {
        2 => verdict(
            TriState::from_bool(s == 1 || s >= 6),
            "d=2: surjective iff s=1 or s>=6",
        ),
        3 => verdict(
            TriState::from_bool(s <= 4 || s >= 10),
            "d=3: surjective iff s<=4 or s>=10",
        ),
        4 => verdict(
            TriState::from_bool(s <= 7 || s >= 15),
            "d=4: surjective iff s<=7 or s>=15",
        ),
        _ if sq <= alpha_low_bound(d) => {
            verdict(TriState::Yes, "d>=5: surjective for s<=d^2/2-d/2+1")
        }
        _ if sq >= alpha_high_bound(d) => {
            verdict(TriState::Yes, "d>=5: surjective for s>=d^2/2+3d/2+1")
        }
        _ if sq > alpha_gap_top(d) => verdict(
            TriState::No,
            "d>=5: not surjective for d^2/2-1/2<s<d^2/2+3d/2+1",
        ),
        _ => verdict(TriState::Unknown, "d>=5: gap d^2/2-d/2+1<s<=d^2/2-1/2"),
    }
}

/// Surjectivity of `H^0(O(d-1) ⊗ m) ⊗ H^0(O(1)) -> H^0(O(d) ⊗ m)`.
pub fn alpha_surjective(pair: PairDS) -> TriState {
    alpha_surjective_verdict(pair).value
}

pub fn ext1_verdict(pair: PairDS) -> Verdict<TriState> {
    let s = pair.s;
    let d = pair.di();
    match pair.d {
        2 => verdict(TriState::from_bool(s >= 2), "d=2: nonzero iff s>=2"),
        3 => verdict(TriState::from_bool(s >= 5), "d=3: nonzero iff s>=5"),
        4 => verdict(TriState::from_bool(s >= 8), "d=4: nonzero iff s>=8"),
        _ if pair.sq() <= alpha_low_bound(d) => {
            verdict(TriState::No, "d>=5: zero for s<=d^2/2-d/2+1")
        }
        _ if pair.sq() > alpha_gap_top(d) => {
            verdict(TriState::Yes, "d>=5: nonzero for s>d^2/2-1/2")
        }
        _ => verdict(TriState::Unknown, "d>=5: gap d^2/2-d/2+1<s<=d^2/2-1/2"),
    }
}

/// Whether `Ext^1(Ω_Y, ω_Y ⊗ M^∨) ≠ 0` with `M = O_Y(dL - E)`, i.e. whether
/// double structures on `Y` with that conormal bundle exist.
pub fn ext1_nonzero(pair: PairDS) -> TriState {
    ext1_verdict(pair).value
}

pub fn deformation_verdict(pair: PairDS) -> Verdict<DeformationClass> {
    let key = (pair.d, pair.s);
    let d = pair.di();
    if smooth_cover_exists(pair) != TriState::Yes {
        return verdict(
            DeformationClass::NotApplicable,
            "no smooth canonical double cover",
        );
    }
    if DEGREE1_PAIRS.contains(&key) {
        return verdict(DeformationClass::Degree1, "one of the seven degree-1 pairs");
    }
    if OPEN_PAIRS.contains(&key) {
        return verdict(
            DeformationClass::OpenQuestion,
            "(5,12) or (6,17): unresolved",
        );
    }
    let (inside, zone) = match pair.d {
        2 => (pair.s == 1, "d=2, s=1"),
        3..=6 => (pair.sq() <= alpha_low_bound(d), "3<=d<=6, s<=d^2/2-d/2+1"),
        _ => (
            pair.sq() <= cover_sufficient_bound(d),
            "d>=7, s<=d^2/5+13d/10+21/10",
        ),
    };
    if inside {
        verdict(DeformationClass::Degree2Always, zone)
    } else {
        // unreachable for pairs with a smooth cover; `classify` reports it
        verdict(DeformationClass::NotApplicable, "no zone matched")
    }
}

pub fn deformation_class(pair: PairDS) -> DeformationClass {
    deformation_verdict(pair).value
}

/// Zone descriptions backing each field of a [`ClassificationRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub very_ample: String,
    pub smooth_cover: String,
    pub alpha_surjective: String,
    pub ext1_nonzero: String,
    pub deformation: String,
}

impl Provenance {
    /// All zones joined into one string, for flat table output.
    pub fn joined(&self) -> String {
        format!(
            "very_ample[{}]; smooth_cover[{}]; alpha[{}]; ext1[{}]; deformation[{}]",
            self.very_ample,
            self.smooth_cover,
            self.alpha_surjective,
            self.ext1_nonzero,
            self.deformation
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub pair: PairDS,
    pub very_ample: TriState,
    pub smooth_cover: TriState,
    pub alpha_surjective: TriState,
    pub ext1_nonzero: TriState,
    pub deformation: DeformationClass,
    pub provenance: Provenance,
}

/// Full verdict for `pair`, with the record invariants checked.
pub fn classify(pair: PairDS) -> Result<ClassificationRecord> {
    let va = very_ample_verdict(pair);
    let sc = smooth_cover_verdict(pair);
    let al = alpha_surjective_verdict(pair);
    let ex = ext1_verdict(pair);
    let de = deformation_verdict(pair);
    let record = ClassificationRecord {
        pair,
        very_ample: va.value,
        smooth_cover: sc.value,
        alpha_surjective: al.value,
        ext1_nonzero: ex.value,
        deformation: de.value,
        provenance: Provenance {
            very_ample: va.zone.into(),
            smooth_cover: sc.zone.into(),
            alpha_surjective: al.zone.into(),
            ext1_nonzero: ex.zone.into(),
            deformation: de.zone.into(),
        },
    };
    check_record(&record)?;
    Ok(record)
}

fn check_record(r: &ClassificationRecord) -> Result<()> {
    let fail = |reason: &str| {
        Err(Error::Inconsistent {
            d: r.pair.d,
            s: r.pair.s,
            reason: reason.into(),
        })
    };
    if r.smooth_cover == TriState::Yes && r.very_ample != TriState::Yes {
        return fail("smooth cover without very ampleness");
    }
    match r.deformation {
        DeformationClass::Degree1 => {
            if r.ext1_nonzero != TriState::Yes || r.smooth_cover != TriState::Yes {
                return fail("Degree1 needs ext1_nonzero = Yes and smooth_cover = Yes");
            }
        }
        DeformationClass::Degree2Always => {
            if r.ext1_nonzero != TriState::No || r.smooth_cover != TriState::Yes {
                return fail("Degree2Always needs ext1_nonzero = No and smooth_cover = Yes");
            }
        }
        DeformationClass::OpenQuestion => {
            if r.smooth_cover != TriState::Yes {
                return fail("OpenQuestion needs a smooth cover");
            }
        }
        DeformationClass::NotApplicable => {
            if r.smooth_cover == TriState::Yes {
                return fail("a pair with a smooth cover fell through every deformation zone");
            }
        }
    }
    // in the very-ample range coker(α) computes Ext¹
    if r.very_ample == TriState::Yes
        && r.alpha_surjective != TriState::Unknown
        && r.ext1_nonzero != TriState::Unknown
        && (r.ext1_nonzero == TriState::Yes) != (r.alpha_surjective == TriState::No)
    {
        return fail("ext1_nonzero disagrees with alpha_surjective");
    }
    Ok(())
}
