use std::ops::RangeInclusive;

use cangeo_core::classify::{classify as classify_pair, ClassificationRecord};
use cangeo_core::invariants::{
    cover_invariants, h0_normal_pi, moduli_dim_degree2, moduli_dims_degree1,
};
use cangeo_core::oracle::{
    alpha_rank, measure_fatpoints, AlphaRank, FatPointMeasurement, OracleConfig,
};
use cangeo_core::scroll::WitnessKind;
use cangeo_core::xi::{
    enumerate_xi, geography_lines, geography_points, GeographyLine, GeographyPoint, IntervalMethod,
};
use cangeo_core::{DeformationClass, FatPointSystem, PairDS, TriState};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::render::{opt, Report, Table};
use crate::{CliError, OracleCommand, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Match,
    Mismatch,
}

impl CheckStatus {
    fn of(ok: bool) -> Self {
        if ok {
            CheckStatus::Match
        } else {
            CheckStatus::Mismatch
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Match => "MATCH",
            CheckStatus::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRow {
    pub p_g: i64,
    pub q: i64,
    pub chi: i64,
    pub c1sq: i64,
    pub c2: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliRow {
    pub mu: i64,
    pub mu2: i64,
    pub codim: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCheck {
    pub rank: u64,
    pub dim_source: u64,
    pub dim_target: u64,
    pub cokernel_dim: u64,
    pub predicted_surjective: TriState,
    pub predicted_cokernel: Option<u64>,
    /// `None` when nothing is predicted for this pair.
    pub status: Option<CheckStatus>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub d: u32,
    pub s: u32,
    pub very_ample: TriState,
    pub smooth_cover: TriState,
    pub alpha_surjective: TriState,
    pub ext1_nonzero: TriState,
    pub deformation: DeformationClass,
    pub invariants: Option<InvariantsRow>,
    /// `c1²/c2` in lowest terms
    pub c1sq_over_c2: Option<String>,
    pub moduli: Option<ModuliRow>,
    pub h0_normal_pi: Option<i64>,
    pub provenance: String,
    pub oracle: Option<AlphaCheck>,
}

/// `dim coker α = 2s + 1 - d²` for the degree-1 pairs.
fn predicted_cokernel(rec: &ClassificationRecord) -> Option<u64> {
    if rec.deformation != DeformationClass::Degree1 {
        return None;
    }
    let (d, s) = (rec.pair.d() as i64, rec.pair.s() as i64);
    u64::try_from(2 * s + 1 - d * d).ok()
}

pub fn check_alpha(rec: &ClassificationRecord, measured: AlphaRank) -> AlphaCheck {
    let predicted_surjective = rec.alpha_surjective;
    let predicted_cokernel = predicted_cokernel(rec);
    let mut checks = Vec::new();
    match predicted_surjective {
        TriState::Yes => checks.push(measured.is_surjective()),
        TriState::No => checks.push(!measured.is_surjective()),
        TriState::Unknown => {}
    }
    if let Some(c) = predicted_cokernel {
        checks.push(measured.cokernel_dim() == c);
    }
    AlphaCheck {
        rank: measured.rank,
        dim_source: measured.dim_source,
        dim_target: measured.dim_target,
        cokernel_dim: measured.cokernel_dim(),
        predicted_surjective,
        predicted_cokernel,
        status: (!checks.is_empty()).then(|| CheckStatus::of(checks.iter().all(|&ok| ok))),
    }
}

fn classify_row(pair: PairDS, oracle: Option<&OracleConfig>) -> Result<ClassifyRow, CliError> {
    let rec = classify_pair(pair)?;
    let inv = match rec.smooth_cover {
        TriState::Yes => Some(cover_invariants(pair)?),
        _ => None,
    };
    let moduli = match rec.deformation {
        DeformationClass::Degree1 => {
            let m = moduli_dims_degree1(pair)?;
            Some(ModuliRow {
                mu: m.mu,
                mu2: m.mu2,
                codim: m.codim,
            })
        }
        DeformationClass::Degree2Always => {
            let mu = moduli_dim_degree2(pair)?;
            Some(ModuliRow {
                mu,
                mu2: mu,
                codim: 0,
            })
        }
        _ => None,
    };
    let oracle = match oracle {
        Some(cfg) => Some(check_alpha(&rec, alpha_rank(pair.d(), pair.s(), cfg)?)),
        None => None,
    };
    Ok(ClassifyRow {
        d: pair.d(),
        s: pair.s(),
        very_ample: rec.very_ample,
        smooth_cover: rec.smooth_cover,
        alpha_surjective: rec.alpha_surjective,
        ext1_nonzero: rec.ext1_nonzero,
        deformation: rec.deformation,
        invariants: inv.map(|i| InvariantsRow {
            p_g: i.p_g,
            q: i.q,
            chi: i.chi,
            c1sq: i.c1sq,
            c2: i.c2,
        }),
        c1sq_over_c2: inv.and_then(|i| i.c1sq_over_c2()).map(|r| r.to_string()),
        moduli,
        h0_normal_pi: inv.map(|_| h0_normal_pi(pair)).transpose()?,
        provenance: rec.provenance.joined(),
        oracle,
    })
}

const CLASSIFY_HEADERS: [&str; 16] = [
    "d",
    "s",
    "very_ample",
    "smooth_cover",
    "alpha_surjective",
    "ext1_nonzero",
    "deformation",
    "p_g",
    "q",
    "chi",
    "c1sq",
    "c2",
    "c1sq_over_c2",
    "mu",
    "mu2",
    "h0_normal_pi",
];
const ORACLE_HEADERS: [&str; 4] = [
    "alpha_rank",
    "alpha_dim_target",
    "alpha_cokernel",
    "oracle_check",
];

fn classify_table(rows: &[ClassifyRow], with_oracle: bool) -> Table {
    let mut headers = CLASSIFY_HEADERS.to_vec();
    if with_oracle {
        headers.extend(ORACLE_HEADERS);
    }
    headers.push("provenance");
    let mut t = Table::new(&headers);
    for r in rows {
        let inv = r.invariants;
        let mut row = vec![
            r.d.to_string(),
            r.s.to_string(),
            r.very_ample.to_string(),
            r.smooth_cover.to_string(),
            r.alpha_surjective.to_string(),
            r.ext1_nonzero.to_string(),
            r.deformation.to_string(),
            opt(inv.map(|i| i.p_g)),
            opt(inv.map(|i| i.q)),
            opt(inv.map(|i| i.chi)),
            opt(inv.map(|i| i.c1sq)),
            opt(inv.map(|i| i.c2)),
            r.c1sq_over_c2.clone().unwrap_or_default(),
            opt(r.moduli.map(|m| m.mu)),
            opt(r.moduli.map(|m| m.mu2)),
            opt(r.h0_normal_pi),
        ];
        if with_oracle {
            let o = r.oracle;
            row.extend([
                opt(o.map(|o| o.rank)),
                opt(o.map(|o| o.dim_target)),
                opt(o.map(|o| o.cokernel_dim)),
                opt(o.and_then(|o| o.status).map(CheckStatus::as_str)),
            ]);
        }
        row.push(r.provenance.clone());
        t.push(row);
    }
    t
}

fn any_mismatch(rows: &[ClassifyRow]) -> bool {
    rows.iter()
        .any(|r| matches!(r.oracle.and_then(|o| o.status), Some(CheckStatus::Mismatch)))
}

pub fn classify(d: u32, s: u32, with_oracle: bool, config: &RunConfig) -> Result<Report, CliError> {
    let pair = PairDS::new(d, s)?;
    let cfg = with_oracle.then(|| config.oracle()).transpose()?;
    let row = classify_row(pair, cfg.as_ref())?;
    let rows = [row];
    let mut report = Report::new(&rows[0], classify_table(&rows, with_oracle))?;
    report.mismatch = any_mismatch(&rows);
    Ok(report)
}

pub fn table(
    d: RangeInclusive<u32>,
    s: RangeInclusive<u32>,
    with_oracle: bool,
    config: &RunConfig,
) -> Result<Report, CliError> {
    let cfg = with_oracle.then(|| config.oracle()).transpose()?;
    let pairs: Vec<PairDS> = d
        .flat_map(|d| s.clone().map(move |s| (d, s)))
        .map(|(d, s)| PairDS::new(d, s))
        .collect::<Result<_, _>>()?;
    let rows: Vec<ClassifyRow> = pairs
        .into_par_iter()
        .map(|p| classify_row(p, cfg.as_ref()))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new(&rows, classify_table(&rows, with_oracle))?;
    report.mismatch = any_mismatch(&rows);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FatPointQuantity {
    H0,
    H1,
}

/// Known values of `(h^0, h^1)` for a fat-point system, with their source.
pub fn predicted_fatpoints(k: u32, r: u32, s: u32) -> Option<(u64, u64, &'static str)> {
    if (k, r, s) == (12, 3, 14) {
        return Some((7, 0, "tabulated special case"));
    }
    // (2d+6)L - 4E for a pair (d, s) with a smooth cover is non-special
    if r == 4 && k >= 10 && k.is_multiple_of(2) {
        let d = (k - 6) / 2;
        let pair = PairDS::new(d, s).ok()?;
        if cangeo_core::smooth_cover_exists(pair) == TriState::Yes {
            let h0 = h0_normal_pi(pair).ok()? + 1;
            return Some((h0 as u64, 0, "k = 2d+6, r = 4 over a covered pair"));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPointRow {
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub quantity: FatPointQuantity,
    pub measured: u64,
    pub predicted: Option<u64>,
    pub status: Option<CheckStatus>,
    pub source: Option<String>,
    pub virtual_dim: i64,
    pub h0: u64,
    pub h1: u64,
    pub speciality_defect: u64,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaRow {
    pub d: u32,
    pub s: u32,
    pub rank: u64,
    pub dim_source: u64,
    pub dim_target: u64,
    pub cokernel_dim: u64,
    pub kernel_dim: u64,
    pub predicted_surjective: TriState,
    pub predicted_cokernel: Option<u64>,
    pub status: Option<CheckStatus>,
    pub config: RunConfig,
}

fn fatpoint_report(
    quantity: FatPointQuantity,
    m: FatPointMeasurement,
    config: &RunConfig,
) -> Result<Report, CliError> {
    let sys = m.system;
    let measured = match quantity {
        FatPointQuantity::H0 => m.h0,
        FatPointQuantity::H1 => m.h1,
    };
    let known = predicted_fatpoints(sys.degree, sys.multiplicity, sys.point_count);
    let predicted = known.map(|(h0, h1, _)| match quantity {
        FatPointQuantity::H0 => h0,
        FatPointQuantity::H1 => h1,
    });
    let row = FatPointRow {
        k: sys.degree,
        r: sys.multiplicity,
        s: sys.point_count,
        quantity,
        measured,
        predicted,
        status: predicted.map(|p| CheckStatus::of(p == measured)),
        source: known.map(|(_, _, src)| src.to_string()),
        virtual_dim: sys.virtual_dim(),
        h0: m.h0,
        h1: m.h1,
        speciality_defect: m.speciality_defect,
        config: *config,
    };
    let mut t = Table::new(&[
        "k",
        "r",
        "s",
        "quantity",
        "measured",
        "predicted",
        "status",
        "virtual_dim",
        "speciality_defect",
    ]);
    t.push(vec![
        row.k.to_string(),
        row.r.to_string(),
        row.s.to_string(),
        match quantity {
            FatPointQuantity::H0 => "h0",
            FatPointQuantity::H1 => "h1",
        }
        .to_string(),
        row.measured.to_string(),
        opt(row.predicted),
        opt(row.status.map(CheckStatus::as_str)),
        row.virtual_dim.to_string(),
        row.speciality_defect.to_string(),
    ]);
    let mismatch = row.status == Some(CheckStatus::Mismatch);
    let mut report = Report::new(&row, t)?;
    report.mismatch = mismatch;
    Ok(report)
}

pub fn oracle(which: OracleCommand, config: &RunConfig) -> Result<Report, CliError> {
    let cfg = config.oracle()?;
    match which {
        OracleCommand::H0(a) | OracleCommand::H1(a) => {
            let quantity = match which {
                OracleCommand::H0(_) => FatPointQuantity::H0,
                _ => FatPointQuantity::H1,
            };
            let sys = FatPointSystem::new(a.k, a.r, a.s)?;
            fatpoint_report(quantity, measure_fatpoints(&sys, &cfg)?, config)
        }
        OracleCommand::Alpha { d, s } => {
            let pair = PairDS::new(d, s)?;
            let rec = classify_pair(pair)?;
            let measured = alpha_rank(d, s, &cfg)?;
            let c = check_alpha(&rec, measured);
            let row = AlphaRow {
                d,
                s,
                rank: c.rank,
                dim_source: c.dim_source,
                dim_target: c.dim_target,
                cokernel_dim: c.cokernel_dim,
                kernel_dim: measured.kernel_dim(),
                predicted_surjective: c.predicted_surjective,
                predicted_cokernel: c.predicted_cokernel,
                status: c.status,
                config: *config,
            };
            let mut t = Table::new(&[
                "d",
                "s",
                "rank",
                "dim_source",
                "dim_target",
                "cokernel",
                "predicted_surjective",
                "predicted_cokernel",
                "status",
            ]);
            t.push(vec![
                d.to_string(),
                s.to_string(),
                row.rank.to_string(),
                row.dim_source.to_string(),
                row.dim_target.to_string(),
                row.cokernel_dim.to_string(),
                row.predicted_surjective.to_string(),
                opt(row.predicted_cokernel),
                opt(row.status.map(CheckStatus::as_str)),
            ]);
            let mut report = Report::new(&row, t)?;
            report.mismatch = row.status == Some(CheckStatus::Mismatch);
            Ok(report)
        }
    }
}

pub fn xi(m: i64, d_max: u32) -> Result<Report, CliError> {
    let xi = enumerate_xi(m, d_max)?;
    let mut t = Table::new(&[
        "m", "p_g", "c1sq", "d", "s", "r", "l", "a", "b", "c", "witness",
    ]);
    for p in &xi.points {
        let w = p.scroll_witness.expect("points carry a witness");
        t.push(vec![
            m.to_string(),
            p.x.to_string(),
            p.y.to_string(),
            p.d.to_string(),
            p.s.to_string(),
            w.r.to_string(),
            w.l.to_string(),
            w.a.to_string(),
            w.b.to_string(),
            w.c.to_string(),
            match w.kind {
                WitnessKind::Admissible => "admissible",
                WitnessKind::M4BasePointFree => "m4_base_point_free",
            }
            .to_string(),
        ]);
    }
    let mut report = Report::new(&xi, t)?;
    report.notes.push(format!(
        "{} point(s) for m = {m}, 2 <= d <= {d_max}",
        xi.points.len()
    ));
    if !xi.unwitnessed.is_empty() {
        let list: Vec<String> = xi
            .unwitnessed
            .iter()
            .map(|p| format!("(d={}, s={}) -> ({}, {})", p.d, p.s, p.x, p.y))
            .collect();
        report.notes.push(format!(
            "rigid covers on the line without a scroll divisor: {}",
            list.join(", ")
        ));
    }
    if !xi.certified {
        report
            .notes
            .push("m > 17: oracle-resolved only, outside the analyzed range".to_string());
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRow {
    pub d: u32,
    pub equation: String,
    pub range: String,
    pub intercept: i64,
    pub x_min: i64,
    pub x_max: i64,
    pub method: IntervalMethod,
}

impl From<GeographyLine> for LineRow {
    fn from(l: GeographyLine) -> Self {
        Self {
            d: l.d,
            equation: l.equation(),
            range: l.range(),
            intercept: l.intercept,
            x_min: l.x_min,
            x_max: l.x_max,
            method: l.method,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeographyData {
    pub lines: Vec<LineRow>,
    pub points: Vec<GeographyPoint>,
}

pub fn geography(d: RangeInclusive<u32>) -> Result<Report, CliError> {
    let (lo, hi) = (*d.start(), *d.end());
    let data = GeographyData {
        lines: geography_lines(lo, hi)?
            .into_iter()
            .map(LineRow::from)
            .collect(),
        points: geography_points(lo, hi)?,
    };
    let mut t = Table::new(&[
        "kind",
        "d",
        "s",
        "equation",
        "range",
        "x_min",
        "x_max",
        "method",
        "chi",
        "c1sq",
        "p_g",
        "deformation",
    ]);
    for l in &data.lines {
        t.push(vec![
            "line".into(),
            l.d.to_string(),
            String::new(),
            l.equation.clone(),
            l.range.clone(),
            l.x_min.to_string(),
            l.x_max.to_string(),
            match l.method {
                IntervalMethod::Zones => "zones",
                IntervalMethod::Parabolas => "parabolas",
            }
            .into(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    for p in &data.points {
        t.push(vec![
            "point".into(),
            p.d.to_string(),
            p.s.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            p.chi.to_string(),
            p.c1sq.to_string(),
            p.p_g.to_string(),
            p.deformation.to_string(),
        ]);
    }
    Report::new(&data, t)
}
