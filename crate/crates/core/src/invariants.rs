//! Numerical invariants of the canonical double cover `X -> Y` and the
//! dimensions of its moduli component.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::classify::{deformation_class, smooth_cover_exists, DeformationClass, PairDS, TriState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub p_g: i64,
    pub q: i64,
    pub chi: i64,
    pub c1sq: i64,
    pub c2: i64,
}

impl SurfaceInvariants {
    /// Build from `(p_g, q, c1²)`; `chi` and `c2` follow from Noether's formula.
    pub fn from_pg_q_c1sq(p_g: i64, q: i64, c1sq: i64) -> Self {
        let chi = p_g - q + 1;
        Self {
            p_g,
            q,
            chi,
            c1sq,
            c2: 12 * chi - c1sq,
        }
    }

    /// `c1² / c2` in lowest terms; `None` when `c2 = 0`.
    pub fn c1sq_over_c2(&self) -> Option<Ratio<i64>> {
        (self.c2 != 0).then(|| Ratio::new(self.c1sq, self.c2))
    }

    pub fn satisfies_noether(&self) -> bool {
        12 * self.chi == self.c1sq + self.c2 && self.chi == self.p_g - self.q + 1
    }
}

fn require_cover(pair: PairDS) -> Result<()> {
    match smooth_cover_exists(pair) {
        TriState::Yes => Ok(()),
        verdict => Err(Error::NoCover {
            d: pair.d(),
            s: pair.s(),
            verdict,
        }),
    }
}

fn require_class(pair: PairDS, expected: DeformationClass) -> Result<()> {
    let actual = deformation_class(pair);
    if actual != expected {
        return Err(Error::WrongClass {
            d: pair.d(),
            s: pair.s(),
            expected,
            actual,
        });
    }
    Ok(())
}

fn ds(pair: PairDS) -> (i64, i64) {
    (pair.d() as i64, pair.s() as i64)
}

/// `(d² + 3d) / 2`; `d² + 3d = d(d + 3)` is always even.
fn half_d2_3d(d: i64) -> i64 {
    (d * d + 3 * d) / 2
}

/// `p_g = (d² + 3d)/2 - s + 1`, `q = 0`, `c1² = 2d² - 2s`.
pub fn cover_invariants(pair: PairDS) -> Result<SurfaceInvariants> {
    require_cover(pair)?;
    let (d, s) = ds(pair);
    Ok(SurfaceInvariants::from_pg_q_c1sq(
        half_d2_3d(d) - s + 1,
        0,
        2 * d * d - 2 * s,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDims {
    pub mu: i64,
    pub mu2: i64,
    pub codim: i64,
}

/// `μ = d² + 15d + 20 - 6s` and `μ₂ = 2d² + 15d + 19 - 8s` for the seven
/// degree-1 pairs.
pub fn moduli_dims_degree1(pair: PairDS) -> Result<ModuliDims> {
    require_class(pair, DeformationClass::Degree1)?;
    let (d, s) = ds(pair);
    let mu = d * d + 15 * d + 20 - 6 * s;
    let mu2 = 2 * d * d + 15 * d + 19 - 8 * s;
    Ok(ModuliDims {
        mu,
        mu2,
        codim: mu - mu2,
    })
}

/// `μ = 2d² + 15d + 19 - 8s` for covers that never deform away from degree 2.
pub fn moduli_dim_degree2(pair: PairDS) -> Result<i64> {
    require_class(pair, DeformationClass::Degree2Always)?;
    let (d, s) = ds(pair);
    Ok(2 * d * d + 15 * d + 19 - 8 * s)
}

/// `h^0(N_π) = 2d² + 15d + 27 - 10s`, which is `h^0(O(2d+6) ⊗ m^4) - 1`.
pub fn h0_normal_pi(pair: PairDS) -> Result<i64> {
    require_cover(pair)?;
    let (d, s) = ds(pair);
    Ok(2 * d * d + 15 * d + 27 - 10 * s)
}

/// `χ(T_Y) = 2K_Y² - 10χ(O_Y) = 8 - 2s`.
pub fn chi_tangent_y(s: u32) -> i64 {
    8 - 2 * s as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u32, s: u32) -> PairDS {
        PairDS::new(d, s).unwrap()
    }

    #[test]
    fn cover_invariant_examples() {
        let inv = cover_invariants(p(3, 6)).unwrap();
        assert_eq!((inv.p_g, inv.q, inv.chi, inv.c1sq), (4, 0, 5, 6));
        assert_eq!(inv.c1sq_over_c2(), Some(Ratio::new(1, 9)));

        let inv = cover_invariants(p(5, 13)).unwrap();
        assert_eq!((inv.p_g, inv.q, inv.chi, inv.c1sq), (8, 0, 9, 24));
        assert_eq!(inv.c1sq_over_c2(), Some(Ratio::new(2, 7)));

        // cubic scroll: c1² = 2 deg Y = 6
        let inv = cover_invariants(p(2, 1)).unwrap();
        assert_eq!((inv.p_g, inv.q, inv.chi, inv.c1sq), (5, 0, 6, 6));
        assert!(inv.satisfies_noether());
    }

    #[test]
    fn c2_matches_closed_form() {
        for (d, s) in [(3, 6), (5, 14), (7, 14), (10, 30)] {
            let inv = cover_invariants(p(d, s)).unwrap();
            let (d, s) = (d as i64, s as i64);
            assert_eq!(inv.c2, 2 * (2 * d * d + 9 * d - 5 * s + 12));
        }
    }

    #[test]
    fn no_cover_is_rejected() {
        assert!(matches!(
            cover_invariants(p(2, 2)),
            Err(Error::NoCover {
                verdict: TriState::No,
                ..
            })
        ));
        assert!(matches!(
            h0_normal_pi(p(6, 18)),
            Err(Error::NoCover {
                verdict: TriState::Unknown,
                ..
            })
        ));
    }

    #[test]
    fn moduli_examples() {
        let m = moduli_dims_degree1(p(3, 5)).unwrap();
        assert_eq!((m.mu, m.mu2, m.codim), (44, 42, 2));
        let m = moduli_dims_degree1(p(4, 10)).unwrap();
        assert_eq!((m.mu, m.mu2), (36, 31));
        let m = moduli_dims_degree1(p(5, 14)).unwrap();
        assert_eq!((m.mu, m.mu2), (36, 32));
        assert!(matches!(
            moduli_dims_degree1(p(3, 4)),
            Err(Error::WrongClass { .. })
        ));

        assert_eq!(moduli_dim_degree2(p(2, 1)).unwrap(), 49);
        assert_eq!(moduli_dim_degree2(p(3, 4)).unwrap(), 50);
        assert_eq!(moduli_dim_degree2(p(7, 14)).unwrap(), 110);
        assert!(matches!(
            moduli_dim_degree2(p(5, 12)),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn normal_pi_and_tangent() {
        assert_eq!(h0_normal_pi(p(5, 14)).unwrap(), 12);
        assert_eq!(h0_normal_pi(p(3, 6)).unwrap(), 30);
        assert_eq!(h0_normal_pi(p(2, 1)).unwrap(), 55);
        assert_eq!(chi_tangent_y(1), 6);
        assert_eq!(chi_tangent_y(6), -4);
        assert_eq!(chi_tangent_y(14), -20);
    }
}
