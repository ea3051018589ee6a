//! Canonical double covers of the projective plane blown up at general points.
//!
//! - [`classify`]: very ampleness, branch divisors, the multiplication map α,
//!   double structures and the deformation class of a pair `(d, s)`.
//! - [`invariants`]: `p_g`, `χ`, `c1²`, `c2` of the covers and moduli dimensions.
//! - [`scroll`]: divisors on rational normal scrolls of dimension 3.
//! - [`xi`]: invariant pairs realized by both constructions, geography data.
//! - [`oracle`]: exact rank computations over F_p that measure fat-point
//!   dimensions and the rank of α at random points.

pub mod classify;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod scroll;
pub mod xi;

pub use classify::{
    alpha_surjective, classify, deformation_class, ext1_nonzero, smooth_cover_exists, very_ample,
    ClassificationRecord, DeformationClass, PairDS, TriState,
};
pub use error::{Error, Result};
pub use invariants::{ModuliDims, SurfaceInvariants};
pub use oracle::{AlphaRank, FatPointSystem, OracleConfig};
