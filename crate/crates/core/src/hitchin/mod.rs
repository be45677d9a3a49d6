//! The Hitchin morphism `h(φ) = (b₁, b₂, b₃)` and the Hitchin base.
//!
//! Invariants are normalised so that a pair with common eigenvalues `(λ₁, λ₂)`
//! maps to `(λ₁², λ₂², λ₁λ₂)`: `b₁ = −det φ₁`, `b₂ = −det φ₂`, `b₃ = ½ tr(φ₁φ₂)`.
//! For traceless matrices `tr(φᵢ²) = 2λᵢ²`, so this is `½ tr(φ²)` componentwise.

pub mod point;

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Rational, Section};
use crate::error::{Error, Result};
use crate::higgs::{mat, HiggsPair, PolyMatrix};

pub use point::{
    classify_point_pair, point_spectral_data, universal_fiber_dim, ConePoint, GaussianRational,
    Mat2, PointClass, PointPair, Scalar,
};

/// `b = (b₁, b₂, b₃)` with `b₁ ∈ H⁰(O(2m₁))`, `b₂ ∈ H⁰(O(2m₂))`, `b₃ ∈ H⁰(O(m₁+m₂))`.
///
/// Construction checks the degree bounds only; the cone relation is a separate
/// predicate ([`base_membership`]) because rejecting off-cone input is the caller's call.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDatum")]
pub struct SpectralDatum {
    pub b1: Section,
    pub b2: Section,
    pub b3: Section,
}

#[derive(Deserialize)]
struct RawDatum {
    b1: Section,
    b2: Section,
    b3: Section,
}

impl TryFrom<RawDatum> for SpectralDatum {
    type Error = Error;
    fn try_from(r: RawDatum) -> Result<Self> {
        SpectralDatum::new(r.b1, r.b2, r.b3)
    }
}

impl SpectralDatum {
    pub fn new(b1: Section, b2: Section, b3: Section) -> Result<Self> {
        if !b1.bound().is_multiple_of(2) || !b2.bound().is_multiple_of(2) {
            return Err(Error::DatumBounds("b1 and b2 must have even bounds 2m1, 2m2".into()));
        }
        if 2 * b3.bound() != b1.bound() + b2.bound() {
            return Err(Error::DatumBounds("b3 must have bound m1 + m2".into()));
        }
        Ok(SpectralDatum { b1, b2, b3 })
    }

    /// Builds a datum from chart-0 polynomials for the twist `O(m₁) ⊕ O(m₂)`.
    pub fn from_polys(b1: Poly, b2: Poly, b3: Poly, m1: u32, m2: u32) -> Result<Self> {
        SpectralDatum::new(
            Section::new(b1, 2 * m1)?,
            Section::new(b2, 2 * m2)?,
            Section::new(b3, m1 + m2)?,
        )
    }

    pub fn twist_degrees(&self) -> (u32, u32) {
        (self.b1.bound() / 2, self.b2.bound() / 2)
    }

    pub fn components(&self) -> [&Section; 3] {
        [&self.b1, &self.b2, &self.b3]
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|s| s.is_zero())
    }

    /// The same datum in the chart at infinity.
    pub fn chart_swap(&self) -> SpectralDatum {
        SpectralDatum {
            b1: self.b1.chart_swap(),
            b2: self.b2.chart_swap(),
            b3: self.b3.chart_swap(),
        }
    }

    /// `b₁ ↔ b₂`, which corresponds to `X ↔ Y` and `m₁ ↔ m₂`.
    pub fn swapped(&self) -> SpectralDatum {
        SpectralDatum { b1: self.b2.clone(), b2: self.b1.clone(), b3: self.b3.clone() }
    }
}

/// `b₃² = b₁b₂` as a polynomial identity. Equality on chart 0 implies it on chart 1,
/// since both sides are sections of `O(2m₁ + 2m₂)`.
pub fn base_membership(b: &SpectralDatum) -> bool {
    let lhs = b.b3.poly() * b.b3.poly();
    let rhs = b.b1.poly() * b.b2.poly();
    lhs == rhs
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Invariants of a traceless commuting pair of polynomial matrices.
pub(crate) fn datum_of(phi1: &PolyMatrix, phi2: &PolyMatrix, m1: u32, m2: u32) -> Result<SpectralDatum> {
    let b1 = -mat::det(phi1);
    let b2 = -mat::det(phi2);
    let b3 = mat::trace(&mat::mul(phi1, phi2)).scale(&half());
    SpectralDatum::from_polys(b1, b2, b3, m1, m2)
}

/// The Hitchin map of a valid `SL(2)` pair.
pub fn hitchin_map(pair: &HiggsPair) -> Result<SpectralDatum> {
    pair.ensure_valid()?;
    if !pair.is_traceless() {
        return Err(Error::NotSl2);
    }
    let (m1, m2) = (pair.twist().m1, pair.twist().m2);
    datum_of(&pair.phi_polys(0), &pair.phi_polys(1), m1, m2)
}

/// Checks `φ₁² = b₁·id`, `φ₂² = b₂·id` and `φ₁φ₂ = b₃·id` entrywise.
pub fn cayley_hamilton_check(pair: &HiggsPair, b: &SpectralDatum) -> bool {
    let (p1, p2) = (pair.phi_polys(0), pair.phi_polys(1));
    let checks = [
        (mat::mul(&p1, &p1), b.b1.poly()),
        (mat::mul(&p2, &p2), b.b2.poly()),
        (mat::mul(&p1, &p2), b.b3.poly()),
    ];
    checks.iter().all(|(m, s)| *m == mat::scalar((*s).clone()))
}

/// `b₃² − b₁b₂` on chart 0.
pub fn cone_defect(b: &SpectralDatum) -> Poly {
    &(b.b3.poly() * b.b3.poly()) - &(b.b1.poly() * b.b2.poly())
}
