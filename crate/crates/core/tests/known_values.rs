use cangeo_core::classify::{DEGREE1_PAIRS, OPEN_PAIRS};
use cangeo_core::invariants::{cover_invariants, h0_normal_pi, moduli_dims_degree1};
use cangeo_core::oracle::{alpha_rank, h0_fatpoints, h1_fatpoints, FatPointSystem, OracleConfig};
use cangeo_core::scroll::noin3folds_check;
use cangeo_core::{alpha_surjective, classify, DeformationClass, PairDS, TriState};
use num_rational::Ratio;

fn pair(d: u32, s: u32) -> PairDS {
    PairDS::new(d, s).unwrap()
}

#[test]
fn invariants_of_the_seven_pairs() {
    // (d, s, p_g, q, chi, c1sq, c1sq/c2)
    let rows = [
        (3, 6, 4, 0, 5, 6, (1, 9)),
        (3, 5, 5, 0, 6, 8, (1, 8)),
        (4, 10, 5, 0, 6, 12, (1, 5)),
        (4, 9, 6, 0, 7, 14, (1, 5)),
        (4, 8, 7, 0, 8, 16, (1, 5)),
        (5, 14, 7, 0, 8, 22, (11, 37)),
        (5, 13, 8, 0, 9, 24, (2, 7)),
    ];
    for (d, s, p_g, q, chi, c1sq, (n, m)) in rows {
        let inv = cover_invariants(pair(d, s)).unwrap();
        assert_eq!(
            (inv.p_g, inv.q, inv.chi, inv.c1sq),
            (p_g, q, chi, c1sq),
            "({d},{s})"
        );
        assert_eq!(inv.c1sq_over_c2(), Some(Ratio::new(n, m)));
    }
}

#[test]
fn moduli_of_the_seven_pairs() {
    let rows = [
        (3, 5, 44, 42),
        (3, 6, 38, 34),
        (4, 8, 48, 47),
        (4, 9, 42, 39),
        (4, 10, 36, 31),
        (5, 13, 42, 40),
        (5, 14, 36, 32),
    ];
    for (d, s, mu, mu2) in rows {
        let m = moduli_dims_degree1(pair(d, s)).unwrap();
        assert_eq!((m.mu, m.mu2), (mu, mu2), "({d},{s})");
    }
}

#[test]
fn tabulated_fat_point_systems() {
    let cfg = OracleConfig::default();
    for (k, r, s, h0) in [(12, 3, 14, 7), (16, 4, 14, 13)] {
        let sys = FatPointSystem::new(k, r, s).unwrap();
        assert_eq!(h0_fatpoints(&sys, &cfg).unwrap(), h0);
        assert_eq!(h1_fatpoints(&sys, &cfg).unwrap(), 0);
    }
}

#[test]
fn normal_bundle_sections_match_the_oracle() {
    let cfg = OracleConfig::default();
    let extra = [(2, 1), (3, 4), (7, 14)];
    for (d, s) in DEGREE1_PAIRS.into_iter().chain(extra) {
        let sys = FatPointSystem::new(2 * d + 6, 4, s).unwrap();
        let measured = h0_fatpoints(&sys, &cfg).unwrap() as i64 - 1;
        assert_eq!(measured, h0_normal_pi(pair(d, s)).unwrap(), "({d},{s})");
    }
}

#[test]
fn alpha_cokernel_is_the_moduli_codimension() {
    let cfg = OracleConfig::default();
    for (d, s) in DEGREE1_PAIRS {
        let a = alpha_rank(d, s, &cfg).unwrap();
        let m = moduli_dims_degree1(pair(d, s)).unwrap();
        let expected = 2 * s as i64 + 1 - (d * d) as i64;
        assert_eq!(a.cokernel_dim() as i64, expected, "({d},{s})");
        assert_eq!(m.codim, expected);
    }
}

#[test]
fn alpha_verdicts_agree_with_ranks() {
    let cfg = OracleConfig::default();
    let mut checked = 0;
    for d in 2..=8 {
        for s in 1..=40 {
            let expect = match alpha_surjective(pair(d, s)) {
                TriState::Yes => true,
                TriState::No => false,
                TriState::Unknown => continue,
            };
            let a = alpha_rank(d, s, &cfg).unwrap();
            assert_eq!(a.is_surjective(), expect, "({d},{s}): {a:?}");
            checked += 1;
        }
    }
    assert!(checked > 200);
}

#[test]
fn seven_pairs_meet_one_scroll_line() {
    let pts: Vec<(i64, i64)> = DEGREE1_PAIRS
        .iter()
        .map(|&(d, s)| {
            let inv = cover_invariants(pair(d, s)).unwrap();
            (inv.p_g, inv.c1sq)
        })
        .collect();
    let hits: Vec<_> = noin3folds_check(&pts)
        .into_iter()
        .map(|h| (h.pair, h.m))
        .collect();
    assert_eq!(hits, vec![((5, 8), 4)]);
}

#[test]
fn open_pairs_stay_open() {
    for (d, s) in OPEN_PAIRS {
        let rec = classify(pair(d, s)).unwrap();
        assert_eq!(rec.deformation, DeformationClass::OpenQuestion);
        assert_eq!(rec.smooth_cover, TriState::Yes);
    }
}
