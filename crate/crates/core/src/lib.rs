//! Exact computations with rank-2 V-twisted Higgs bundles on the projective line.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: rationals, univariate polynomials over ℚ, sections of `O(d)`,
//!   factorisation, square roots and Smith normal form over a discrete valuation ring.
//! * [`higgs`]: Higgs pairs with split `E` and `V`, validation, invariant line
//!   subbundles, stability and the endomorphism algebra.
//! * [`hitchin`]: the Hitchin map, its base, Cayley–Hamilton identities and the
//!   point model on the commuting variety.
//! * [`spectral`]: classification of spectral curves (zero locus, reducibility,
//!   étaleness, torsion and smoothness).
//! * [`moment`]: the moment map on commuting pairs and a Kempf–Ness descent that
//!   searches for a solution of the fibrewise Hitchin equation.

pub mod algebra;
pub mod error;
pub mod higgs;
pub mod hitchin;
pub mod moment;
pub mod spectral;

pub use error::{Error, Result};
