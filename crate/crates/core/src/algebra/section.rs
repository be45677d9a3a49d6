use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A global section of `O(d)` on ℙ¹.
///
/// Stored through its chart-0 polynomial in `z`; the chart-1 representative in
/// `w = 1/z` is `w^d · poly(1/w)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawSection")]
pub struct Section {
    #[serde(rename = "coeffs")]
    poly: Poly,
    bound: u32,
}

#[derive(Deserialize)]
struct RawSection {
    coeffs: Poly,
    bound: u32,
}

impl TryFrom<RawSection> for Section {
    type Error = Error;
    fn try_from(raw: RawSection) -> Result<Self> {
        Section::new(raw.coeffs, raw.bound)
    }
}

impl Section {
    pub fn new(poly: Poly, bound: u32) -> Result<Self> {
        match poly.degree() {
            Some(degree) if degree > bound as usize => Err(Error::DegreeBound { degree, bound }),
            _ => Ok(Section { poly, bound }),
        }
    }

    pub fn zero(bound: u32) -> Self {
        Section { poly: Poly::zero(), bound }
    }

    pub fn constant(c: Rational, bound: u32) -> Self {
        Section { poly: Poly::constant(c), bound }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The same section seen from the other chart (coefficient reversal).
    pub fn chart_swap(&self) -> Section {
        Section {
            poly: self.poly.reversed(self.bound as usize + 1),
            bound: self.bound,
        }
    }

    /// Vanishing order at `z = ∞`; `None` for the zero section.
    pub fn order_at_infinity(&self) -> Option<u32> {
        self.poly.degree().map(|d| self.bound - d as u32)
    }

    pub fn mul(&self, other: &Section) -> Section {
        Section {
            poly: &self.poly * &other.poly,
            bound: self.bound + other.bound,
        }
    }

    /// Sum of two sections of the same line bundle.
    pub fn add(&self, other: &Section) -> Section {
        assert_eq!(self.bound, other.bound, "adding sections of different bundles");
        Section { poly: &self.poly + &other.poly, bound: self.bound }
    }

    pub fn sub(&self, other: &Section) -> Section {
        assert_eq!(self.bound, other.bound, "subtracting sections of different bundles");
        Section { poly: &self.poly - &other.poly, bound: self.bound }
    }

    pub fn scale(&self, c: &Rational) -> Section {
        Section { poly: self.poly.scale(c), bound: self.bound }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_swap_examples() {
        let one = Section::new(Poly::one(), 0).unwrap();
        assert_eq!(one.chart_swap(), one);
        let z = Section::new(Poly::z(), 2).unwrap();
        assert_eq!(z.chart_swap(), z);
        let z2 = Section::new(Poly::from_i64s(&[0, 0, 1]), 2).unwrap();
        assert_eq!(z2.chart_swap(), Section::new(Poly::one(), 2).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            Section::new(Poly::from_i64s(&[0, 0, 1]), 1),
            Err(Error::DegreeBound { degree: 2, bound: 1 })
        );
        let bad: std::result::Result<Section, _> =
            serde_json::from_str(r#"{"coeffs": [0, 0, 1], "bound": 1}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn order_at_infinity() {
        let s = Section::new(Poly::z(), 3).unwrap();
        assert_eq!(s.order_at_infinity(), Some(2));
        assert_eq!(Section::zero(3).order_at_infinity(), None);
    }

    #[test]
    fn json_shape() {
        let s = Section::new(Poly::from_i64s(&[1, -1]), 2).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"coeffs":["1","-1"],"bound":2}"#);
    }
}
