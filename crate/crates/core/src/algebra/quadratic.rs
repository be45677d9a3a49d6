//! The quadratic extension ℚ(√c) and polynomials over it.
//!
//! Values carry no copy of `c`; every operation takes the radicand explicitly and
//! all operands of one computation must share it. When `c` is a rational square the
//! irrational parts are kept at zero by the callers, so the ring stays a field.

use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::Poly;
use super::rational::Rational;

/// `u + v·√c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub u: Rational,
    pub v: Rational,
}

impl Quad {
    pub fn new(u: Rational, v: Rational) -> Self {
        Quad { u, v }
    }

    pub fn rational(u: Rational) -> Self {
        Quad { u, v: Rational::zero() }
    }

    pub fn zero() -> Self {
        Quad::rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, o: &Quad) -> Quad {
        Quad::new(&self.u + &o.u, &self.v + &o.v)
    }

    pub fn sub(&self, o: &Quad) -> Quad {
        Quad::new(&self.u - &o.u, &self.v - &o.v)
    }

    pub fn mul(&self, o: &Quad, c: &Rational) -> Quad {
        Quad::new(
            &self.u * &o.u + c * &self.v * &o.v,
            &self.u * &o.v + &self.v * &o.u,
        )
    }

    /// Inverse in ℚ(√c); requires `c` to be a non-square or `v = 0`.
    pub fn inv(&self, c: &Rational) -> Quad {
        let norm = &self.u * &self.u - c * &self.v * &self.v;
        assert!(!norm.is_zero(), "inverting zero in Q(sqrt c)");
        Quad::new(&self.u / &norm, -&self.v / &norm)
    }
}

/// `re + √c · im` with `re, im ∈ ℚ[z]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadPoly {
    pub re: Poly,
    pub im: Poly,
}

impl QuadPoly {
    pub fn new(re: Poly, im: Poly) -> Self {
        QuadPoly { re, im }
    }

    pub fn rational(re: Poly) -> Self {
        QuadPoly { re, im: Poly::zero() }
    }

    pub fn zero() -> Self {
        QuadPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.re.degree().max(self.im.degree())
    }

    pub fn coeff(&self, k: usize) -> Quad {
        Quad::new(self.re.coeff(k), self.im.coeff(k))
    }

    pub fn leading_coeff(&self) -> Option<Quad> {
        self.degree().map(|d| self.coeff(d))
    }

    fn from_coeffs(c: Vec<Quad>) -> QuadPoly {
        let (re, im): (Vec<_>, Vec<_>) = c.into_iter().map(|q| (q.u, q.v)).unzip();
        QuadPoly::new(Poly::new(re), Poly::new(im))
    }

    pub fn add(&self, o: &QuadPoly) -> QuadPoly {
        QuadPoly::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &QuadPoly) -> QuadPoly {
        QuadPoly::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> QuadPoly {
        QuadPoly::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &QuadPoly, c: &Rational) -> QuadPoly {
        let re = &(&self.re * &o.re) + &(&self.im * &o.im).scale(c);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        QuadPoly::new(re, im)
    }

    pub fn scale(&self, q: &Quad, c: &Rational) -> QuadPoly {
        QuadPoly::new(
            &self.re.scale(&q.u) + &self.im.scale(&(c * &q.v)),
            &self.re.scale(&q.v) + &self.im.scale(&q.u),
        )
    }

    pub fn monic(&self, c: &Rational) -> QuadPoly {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.inv(c), c),
            None => QuadPoly::zero(),
        }
    }

    pub fn div_rem(&self, d: &QuadPoly, c: &Rational) -> (QuadPoly, QuadPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.coeff(dd).inv(c);
        let mut rem: Vec<Quad> = (0..=self.degree().unwrap_or(0)).map(|k| self.coeff(k)).collect();
        if self.is_zero() || rem.len() <= dd {
            return (QuadPoly::zero(), self.clone());
        }
        let dc: Vec<Quad> = (0..=dd).map(|k| d.coeff(k)).collect();
        let mut quot = vec![Quad::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].mul(&inv, c);
            if q.is_zero() {
                continue;
            }
            for (j, x) in dc.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&q.mul(x, c));
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (QuadPoly::from_coeffs(quot), QuadPoly::from_coeffs(rem))
    }

    pub fn exact_div(&self, d: &QuadPoly, c: &Rational) -> Option<QuadPoly> {
        let (q, r) = self.div_rem(d, c);
        r.is_zero().then_some(q)
    }

    /// Monic gcd over ℚ(√c).
    pub fn gcd(&self, o: &QuadPoly, c: &Rational) -> QuadPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, c).1;
            a = b;
            b = r;
        }
        a.monic(c)
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

/// A section of `O(d)` with coefficients in ℚ(√c), serialised like a [`Section`]
/// plus `sqrt_coeffs` for the `√c` part when that is nonzero.
///
/// `bound` may be negative for the zero section of a negative-degree bundle.
///
/// [`Section`]: super::Section
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtSection {
    #[serde(rename = "coeffs")]
    pub re: Poly,
    #[serde(rename = "sqrt_coeffs", skip_serializing_if = "Poly::is_zero")]
    pub im: Poly,
    pub bound: i64,
}

impl ExtSection {
    pub fn new(value: QuadPoly, bound: i64) -> Self {
        ExtSection { re: value.re, im: value.im, bound }
    }

    pub fn value(&self) -> QuadPoly {
        QuadPoly::new(self.re.clone(), self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl From<Poly> for QuadPoly {
    fn from(p: Poly) -> Self {
        QuadPoly::rational(p)
    }
}

impl Quad {
    pub fn one() -> Self {
        Quad::rational(Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn field_inverse() {
        let c = q(2);
        let x = Quad::new(q(1), q(1));
        let prod = x.mul(&x.inv(&c), &c);
        assert_eq!(prod, Quad::one());
    }

    #[test]
    fn gcd_over_extension() {
        // (z - √2) divides both z² - 2 and z² - √2·z.
        let c = q(2);
        let a = QuadPoly::rational(Poly::from_i64s(&[-2, 0, 1]));
        let b = QuadPoly::new(Poly::from_i64s(&[0, 0, 1]), Poly::from_i64s(&[0, -1]));
        let g = a.gcd(&b, &c);
        assert_eq!(g, QuadPoly::new(Poly::z(), Poly::from_i64s(&[-1])));
        assert!(a.exact_div(&g, &c).is_some());
    }
}
