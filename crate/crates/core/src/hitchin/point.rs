//! The pointwise model: commuting traceless pairs in `sl(2,ℂ)` and the quadric cone
//! `C = {z² = xy} ⊂ ℂ³`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::serde_rational::Repr;
use crate::algebra::{format_rational, Rational};
use crate::error::{Error, Result};

/// Exact complex scalar `p + iq` with `p, q ∈ ℚ`.
pub type GaussianRational = Complex<Rational>;

/// Scalar ring for the point model.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

impl<T: Scalar> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Mat2::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn scalar(s: T) -> Self {
        Mat2::new(s.clone(), T::zero(), T::zero(), s)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.0[i][j]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        let [[a, b], [c, d]] = &self.0;
        Mat2([[f(a), f(b)], [f(c), f(d)]])
    }

    pub fn trace(&self) -> T {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    pub fn det(&self) -> T {
        self.0[0][0].clone() * self.0[1][1].clone() - self.0[0][1].clone() * self.0[1][0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn mul(&self, o: &Mat2<T>) -> Mat2<T> {
        let e = |i: usize, j: usize| {
            self.0[i][0].clone() * o.0[0][j].clone() + self.0[i][1].clone() * o.0[1][j].clone()
        };
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn add(&self, o: &Mat2<T>) -> Mat2<T> {
        let e = |i: usize, j: usize| self.0[i][j].clone() + o.0[i][j].clone();
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn sub(&self, o: &Mat2<T>) -> Mat2<T> {
        let e = |i: usize, j: usize| self.0[i][j].clone() - o.0[i][j].clone();
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn scale(&self, s: &T) -> Mat2<T> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn commutator(&self, o: &Mat2<T>) -> Mat2<T> {
        self.mul(o).sub(&o.mul(self))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointPair<T> {
    pub phi1: Mat2<T>,
    pub phi2: Mat2<T>,
}

impl<T: Scalar> PointPair<T> {
    pub fn new(phi1: Mat2<T>, phi2: Mat2<T>) -> Self {
        PointPair { phi1, phi2 }
    }

    pub fn is_traceless(&self) -> bool {
        self.phi1.trace().is_zero() && self.phi2.trace().is_zero()
    }

    pub fn is_commuting(&self) -> bool {
        self.phi1.commutator(&self.phi2).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.phi1.is_zero() && self.phi2.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConePoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> ConePoint<T> {
    pub fn on_cone(&self) -> bool {
        self.z.clone() * self.z.clone() == self.x.clone() * self.y.clone()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

/// `(x, y, z) = (−det φ₁, −det φ₂, ½ tr(φ₁φ₂))`.
pub fn point_spectral_data<T: Scalar>(pair: &PointPair<T>) -> ConePoint<T> {
    let two = T::one() + T::one();
    ConePoint {
        x: -pair.phi1.det(),
        y: -pair.phi2.det(),
        z: pair.phi1.mul(&pair.phi2).trace() / two,
    }
}

/// 3 at the origin, 2 elsewhere on the cone: the dimension of
/// `ℂ[X,Y]/(X² − x, Y² − y, XY − z)`.
pub fn universal_fiber_dim<T: Scalar>(c: &ConePoint<T>) -> Result<usize> {
    if !c.on_cone() {
        return Err(Error::ConeViolated);
    }
    Ok(if c.is_origin() { 3 } else { 2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Zero,
    NilpotentNonzero,
    PolystableDiagonalizable,
}

impl PointClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::Zero => "zero",
            PointClass::NilpotentNonzero => "nilpotent_nonzero",
            PointClass::PolystableDiagonalizable => "polystable_diagonalizable",
        }
    }
}

/// A commuting traceless pair is zero, nonzero with both matrices nilpotent, or
/// simultaneously diagonalisable (which is when it is polystable).
pub fn classify_point_pair<T: Scalar>(pair: &PointPair<T>) -> Result<PointClass> {
    if !pair.is_traceless() {
        return Err(Error::NotTraceless);
    }
    if !pair.is_commuting() {
        return Err(Error::NotCommuting);
    }
    if pair.is_zero() {
        return Ok(PointClass::Zero);
    }
    if point_spectral_data(pair).is_origin() {
        Ok(PointClass::NilpotentNonzero)
    } else {
        Ok(PointClass::PolystableDiagonalizable)
    }
}

// JSON: a complex scalar is `{"re": r, "im": r}` or a bare real `r`, where `r` is a
// number or a `"p/q"` string. Exact values are written back as strings.

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexRepr {
    Parts { re: Repr, #[serde(default)] im: Option<Repr> },
    Real(Repr),
}

fn complex_from_repr(r: ComplexRepr) -> std::result::Result<GaussianRational, String> {
    match r {
        ComplexRepr::Real(re) => Ok(Complex::new(re.into_rational()?, Rational::zero())),
        ComplexRepr::Parts { re, im } => Ok(Complex::new(
            re.into_rational()?,
            im.map(Repr::into_rational).transpose()?.unwrap_or_else(Rational::zero),
        )),
    }
}

#[derive(Serialize)]
struct ComplexOut {
    re: String,
    im: String,
}

fn complex_out(c: &GaussianRational) -> ComplexOut {
    ComplexOut { re: format_rational(&c.re), im: format_rational(&c.im) }
}

pub mod serde_gaussian {
    use super::*;

    pub fn serialize<S: Serializer>(c: &GaussianRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        complex_out(c).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<GaussianRational, D::Error> {
        complex_from_repr(ComplexRepr::deserialize(d)?).map_err(de::Error::custom)
    }
}

impl Serialize for Mat2<GaussianRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<ComplexOut>> =
            self.0.iter().map(|r| r.iter().map(complex_out).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2<GaussianRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[ComplexRepr; 2]; 2]>::deserialize(d)?;
        let [[a, b], [c, e]] = rows;
        let f = |r| complex_from_repr(r).map_err(de::Error::custom);
        Ok(Mat2::new(f(a)?, f(b)?, f(c)?, f(e)?))
    }
}

impl Serialize for PointPair<GaussianRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            phi1: &'a Mat2<GaussianRational>,
            phi2: &'a Mat2<GaussianRational>,
        }
        Out { phi1: &self.phi1, phi2: &self.phi2 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointPair<GaussianRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct In {
            phi1: Mat2<GaussianRational>,
            phi2: Mat2<GaussianRational>,
        }
        let In { phi1, phi2 } = In::deserialize(d)?;
        Ok(PointPair { phi1, phi2 })
    }
}

impl Serialize for ConePoint<GaussianRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            x: ComplexOut,
            y: ComplexOut,
            z: ComplexOut,
        }
        Out { x: complex_out(&self.x), y: complex_out(&self.y), z: complex_out(&self.z) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConePoint<GaussianRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            x: ComplexRepr,
            y: ComplexRepr,
            z: ComplexRepr,
        }
        let In { x, y, z } = In::deserialize(d)?;
        let f = |r| complex_from_repr(r).map_err(de::Error::custom);
        Ok(ConePoint { x: f(x)?, y: f(y)?, z: f(z)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        Complex::new(Rational::from_integer(n.into()), Rational::zero())
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<GaussianRational> {
        Mat2::new(q(a), q(b), q(c), q(d))
    }

    #[test]
    fn diagonal_pair() {
        let pair = PointPair::new(m(1, 0, 0, -1), m(2, 0, 0, -2));
        let c = point_spectral_data(&pair);
        assert_eq!((c.x.clone(), c.y.clone(), c.z.clone()), (q(1), q(4), q(2)));
        assert_eq!(classify_point_pair(&pair), Ok(PointClass::PolystableDiagonalizable));
        assert_eq!(universal_fiber_dim(&c), Ok(2));
    }

    #[test]
    fn nilpotent_and_zero() {
        let nil = PointPair::new(m(0, 1, 0, 0), m(0, 3, 0, 0));
        assert_eq!(classify_point_pair(&nil), Ok(PointClass::NilpotentNonzero));
        let c = point_spectral_data(&nil);
        assert!(c.is_origin());
        assert_eq!(universal_fiber_dim(&c), Ok(3));
        let zero = PointPair::new(m(0, 0, 0, 0), m(0, 0, 0, 0));
        assert_eq!(classify_point_pair(&zero), Ok(PointClass::Zero));
    }

    #[test]
    fn invalid_pairs() {
        let not_commuting = PointPair::new(m(1, 0, 0, -1), m(0, 1, 0, 0));
        assert_eq!(classify_point_pair(&not_commuting), Err(Error::NotCommuting));
        let traced = PointPair::new(m(1, 0, 0, 0), m(0, 0, 0, 0));
        assert_eq!(classify_point_pair(&traced), Err(Error::NotTraceless));
        let off = ConePoint { x: q(1), y: q(1), z: q(2) };
        assert_eq!(universal_fiber_dim(&off), Err(Error::ConeViolated));
    }

    #[test]
    fn complex_eigenvalues() {
        let i = Complex::new(Rational::zero(), Rational::one());
        let phi = Mat2::new(i.clone(), q(0), q(0), -i);
        let pair = PointPair::new(phi.clone(), phi);
        let c = point_spectral_data(&pair);
        assert_eq!(c.x, q(-1));
        assert!(c.on_cone());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"phi1": [[{"re": 0.5, "im": 0}, 0], [0, {"re": "-1/2"}]], "phi2": [[0, 0], [0, 0]]}"#;
        let pair: PointPair<GaussianRational> = serde_json::from_str(text).unwrap();
        let half = Complex::new(Rational::new(1.into(), 2.into()), Rational::zero());
        assert_eq!(pair.phi1.0[0][0], half);
        let back: PointPair<GaussianRational> =
            serde_json::from_str(&serde_json::to_string(&pair).unwrap()).unwrap();
        assert_eq!(back, pair);
    }
}
