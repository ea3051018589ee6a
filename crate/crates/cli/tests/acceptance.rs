//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use cangeo_core::classify::DEGREE1_PAIRS;
use cangeo_core::invariants::{cover_invariants, h0_normal_pi, moduli_dims_degree1};
use cangeo_core::oracle::{alpha_rank, h0_fatpoints, FatPointSystem, OracleConfig};
use cangeo_core::scroll::noin3folds_check;
use cangeo_core::{alpha_surjective, smooth_cover_exists, PairDS, TriState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn cangeo(args: &str) -> Result<(String, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cangeo"))
        .args(args.split_whitespace())
        .env_remove("CANGEO_SEED")
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((stdout, out.status.code().unwrap_or(-1)))
}

fn cangeo_json(args: &str) -> Result<Value, String> {
    let (out, code) = cangeo(&format!("{args} --format json"))?;
    ensure!(code == 0, "`{args}` exited with {code}");
    serde_json::from_str(&out).map_err(|e| format!("`{args}`: {e}"))
}

fn pair(d: u32, s: u32) -> PairDS {
    PairDS::new(d, s).unwrap()
}

fn invariants_table() -> Check {
    let rows = cangeo_json("table --d 3..5 --s 5..14")?;
    let expected = [
        (3, 6, [4, 0, 5, 6], "1/9"),
        (3, 5, [5, 0, 6, 8], "1/8"),
        (4, 10, [5, 0, 6, 12], "1/5"),
        (4, 9, [6, 0, 7, 14], "1/5"),
        (4, 8, [7, 0, 8, 16], "1/5"),
        (5, 14, [7, 0, 8, 22], "11/37"),
        (5, 13, [8, 0, 9, 24], "2/7"),
    ];
    for (d, s, nums, ratio) in expected {
        let row = rows
            .as_array()
            .and_then(|r| r.iter().find(|r| r["d"] == d && r["s"] == s))
            .ok_or(format!("row ({d},{s}) missing"))?;
        let inv = &row["invariants"];
        let got = [&inv["p_g"], &inv["q"], &inv["chi"], &inv["c1sq"]];
        ensure!(
            got.iter().zip(nums).all(|(g, n)| **g == n),
            "({d},{s}): {inv}"
        );
        ensure!(
            row["c1sq_over_c2"] == ratio,
            "({d},{s}): ratio {}",
            row["c1sq_over_c2"]
        );
    }
    Ok(())
}

fn moduli_table() -> Check {
    let expected = [
        (3, 5, 44, 42),
        (3, 6, 38, 34),
        (4, 8, 48, 47),
        (4, 9, 42, 39),
        (4, 10, 36, 31),
        (5, 13, 42, 40),
        (5, 14, 36, 32),
    ];
    for (d, s, mu, mu2) in expected {
        let m = moduli_dims_degree1(pair(d, s)).map_err(|e| e.to_string())?;
        ensure!(
            (m.mu, m.mu2) == (mu, mu2),
            "({d},{s}): got ({}, {})",
            m.mu,
            m.mu2
        );
    }
    Ok(())
}

fn tabulated_fat_points() -> Check {
    for (k, r, s, h0) in [(12, 3, 14, 7), (16, 4, 14, 13)] {
        let start = Instant::now();
        let v = cangeo_json(&format!("oracle h0 --k {k} --r {r} --s {s}"))?;
        ensure!(
            start.elapsed() < Duration::from_secs(5),
            "({k},{r},{s}) took {:?}",
            start.elapsed()
        );
        ensure!(v["measured"] == h0 && v["h1"] == 0, "({k},{r},{s}): {v}");
        ensure!(
            v["status"] == "MATCH",
            "({k},{r},{s}): status {}",
            v["status"]
        );
    }
    Ok(())
}

fn alpha_cross_validation() -> Check {
    let cfg = OracleConfig::default();
    let mut checked = 0;
    for d in 2..=8 {
        for s in 1..=40 {
            let expect = match alpha_surjective(pair(d, s)) {
                TriState::Yes => true,
                TriState::No => false,
                TriState::Unknown => continue,
            };
            let a = alpha_rank(d, s, &cfg).map_err(|e| e.to_string())?;
            ensure!(
                a.is_surjective() == expect,
                "({d},{s}): predicted {expect}, measured {a:?}"
            );
            checked += 1;
        }
    }
    ensure!(checked > 0, "no pair had a verdict");
    Ok(())
}

fn alpha_cokernel() -> Check {
    let cfg = OracleConfig::default();
    for (d, s) in DEGREE1_PAIRS {
        let coker = alpha_rank(d, s, &cfg)
            .map_err(|e| e.to_string())?
            .cokernel_dim() as i64;
        let m = moduli_dims_degree1(pair(d, s)).map_err(|e| e.to_string())?;
        let formula = 2 * s as i64 + 1 - (d * d) as i64;
        ensure!(
            coker == formula && formula == m.mu - m.mu2,
            "({d},{s}): coker {coker}, formula {formula}, mu-mu2 {}",
            m.mu - m.mu2
        );
    }
    Ok(())
}

fn normal_bundle() -> Check {
    let cfg = OracleConfig::default();
    for (d, s) in DEGREE1_PAIRS.into_iter().chain([(2, 1), (3, 4), (7, 14)]) {
        let sys = FatPointSystem::new(2 * d + 6, 4, s).map_err(|e| e.to_string())?;
        let measured = h0_fatpoints(&sys, &cfg).map_err(|e| e.to_string())? as i64 - 1;
        let formula = h0_normal_pi(pair(d, s)).map_err(|e| e.to_string())?;
        ensure!(
            measured == formula,
            "({d},{s}): oracle {measured}, formula {formula}"
        );
    }
    Ok(())
}

fn xi_pairs(m: i64, dmax: u32) -> Result<Vec<(i64, i64, u64, u64)>, String> {
    let v = cangeo_json(&format!("xi --m {m} --dmax {dmax}"))?;
    let points = v["points"].as_array().ok_or("no points array")?;
    Ok(points
        .iter()
        .map(|p| {
            (
                p["x"].as_i64().unwrap_or(-1),
                p["y"].as_i64().unwrap_or(-1),
                p["d"].as_u64().unwrap_or(0),
                p["s"].as_u64().unwrap_or(0),
            )
        })
        .collect())
}

fn xi_golden() -> Check {
    let m4: Vec<_> = xi_pairs(4, 10)?
        .into_iter()
        .map(|(x, y, _, _)| (x, y))
        .collect();
    ensure!(m4 == [(9, 20), (15, 38), (23, 62), (33, 92)], "m=4: {m4:?}");
    let m11 = xi_pairs(11, 40)?;
    ensure!(m11 == [(135, 608, 20, 96)], "m=11: {m11:?}");
    let m13 = xi_pairs(13, 40)?;
    ensure!(m13 == [(264, 1280, 29, 201)], "m=13: {m13:?}");
    for m in [12, 14, 15, 16, 17] {
        let pts = xi_pairs(m, 100)?;
        ensure!(pts.is_empty(), "m={m}: {pts:?}");
    }
    Ok(())
}

fn scroll_exclusion() -> Check {
    let pts: Vec<(i64, i64)> = DEGREE1_PAIRS
        .iter()
        .map(|&(d, s)| cover_invariants(pair(d, s)).map(|i| (i.p_g, i.c1sq)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let hits: Vec<_> = noin3folds_check(&pts)
        .into_iter()
        .map(|h| (h.pair, h.m))
        .collect();
    ensure!(hits == [((5, 8), 4)], "hits: {hits:?}");
    Ok(())
}

fn geography() -> Check {
    let v = cangeo_json("geography --d 2..6")?;
    let lines: Vec<(&str, &str)> = v["lines"]
        .as_array()
        .ok_or("no lines")?
        .iter()
        .map(|l| {
            (
                l["equation"].as_str().unwrap_or(""),
                l["range"].as_str().unwrap_or(""),
            )
        })
        .collect();
    let expected = [
        ("y-2x+6=0", "x=6"),
        ("y-2x+4=0", "5<=x<=10"),
        ("y-2x=0", "6<=x<=15"),
        ("y-2x-6=0", "8<=x<=21"),
        ("y-2x-14=0", "13<=x<=28"),
    ];
    ensure!(lines == expected, "got {lines:?}");
    Ok(())
}

fn property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut noether = 0;
    while noether < 1000 {
        let d = rng.gen_range(2..=500u32);
        let s = rng.gen_range(1..=(d * d) / 2 + 2 * d);
        let p = pair(d, s);
        if smooth_cover_exists(p) != TriState::Yes {
            continue;
        }
        let inv = cover_invariants(p).map_err(|e| e.to_string())?;
        ensure!(
            12 * inv.chi == inv.c1sq + inv.c2,
            "Noether fails at ({d},{s}): {inv:?}"
        );
        noether += 1;
    }

    let cfg = OracleConfig::default();
    for _ in 0..500 {
        let k = rng.gen_range(1..=20u32);
        let r = rng.gen_range(1..=4u32);
        let s = rng.gen_range(1..=12u32);
        let h = |s| {
            h0_fatpoints(&FatPointSystem::new(k, r, s).unwrap(), &cfg).map_err(|e| e.to_string())
        };
        let (a, b) = (h(s)?, h(s + 1)?);
        ensure!(
            b <= a,
            "h0({k},{r},{}) = {b} > h0({k},{r},{s}) = {a}",
            s + 1
        );
    }

    for args in [
        "table --d 2..8 --s 1..30 --oracle --format csv",
        "oracle h0 --k 12 --r 3 --s 14 --format json",
        "xi --m 5 --dmax 60",
        "geography --d 2..9 --format json",
    ] {
        let (a, b) = (cangeo(args)?, cangeo(args)?);
        ensure!(a == b, "`{args}` is not deterministic");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("invariants table", Duration::from_secs(1), invariants_table),
        ("moduli table", Duration::from_secs(1), moduli_table),
        (
            "tabulated fat-point systems",
            Duration::from_secs(10),
            tabulated_fat_points,
        ),
        (
            "alpha cross-validation",
            Duration::from_secs(60),
            alpha_cross_validation,
        ),
        (
            "coker alpha = mu - mu2",
            Duration::from_secs(60),
            alpha_cokernel,
        ),
        (
            "h0 of the normal sheaf",
            Duration::from_secs(60),
            normal_bundle,
        ),
        ("Xi golden sets", Duration::from_secs(10), xi_golden),
        (
            "scroll-line exclusion",
            Duration::from_secs(1),
            scroll_exclusion,
        ),
        ("geography intervals", Duration::from_secs(1), geography),
        ("property suite", Duration::from_secs(120), property_suite),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(()) => println!("PASS  {:>2}  {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL  {:>2}  {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
