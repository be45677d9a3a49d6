use num_traits::Zero;

use super::factor::squarefree_parts;
use super::poly::Poly;
use super::rational::{rational_sqrt, Rational};

/// `p = constant · root²` with `root` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareRoot {
    pub root: Poly,
    pub constant: Rational,
    /// `√constant` when it is rational.
    pub rational_sqrt: Option<Rational>,
}

impl SquareRoot {
    pub fn in_rationals(&self) -> bool {
        self.rational_sqrt.is_some()
    }

    /// `√constant · root` when that has rational coefficients.
    pub fn rational_root(&self) -> Option<Poly> {
        self.rational_sqrt.as_ref().map(|r| self.root.scale(r))
    }
}

/// Square root up to a constant: present iff every irreducible factor of `p` has
/// even multiplicity. The zero polynomial has no normalised root and gives `None`.
pub fn exact_sqrt(p: &Poly) -> Option<SquareRoot> {
    let constant = p.leading_coeff()?.clone();
    let mut root = Poly::one();
    for (s, m) in squarefree_parts(p) {
        if m % 2 == 1 {
            return None;
        }
        root = &root * &s.pow(m / 2);
    }
    debug_assert!(!constant.is_zero());
    Some(SquareRoot {
        rational_sqrt: rational_sqrt(&constant),
        root,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn examples() {
        let r = exact_sqrt(&p(&[1, -2, 1])).unwrap();
        assert_eq!(r.root, p(&[-1, 1]));
        assert_eq!(r.constant, Rational::from_integer(1.into()));
        assert!(r.in_rationals());

        assert!(exact_sqrt(&p(&[0, 1])).is_none());

        let r = exact_sqrt(&p(&[0, 0, 2])).unwrap();
        assert_eq!(r.root, p(&[0, 1]));
        assert_eq!(r.constant, Rational::from_integer(2.into()));
        assert!(!r.in_rationals());
        assert_eq!(r.rational_root(), None);
    }

    #[test]
    fn negative_constant_is_not_rational() {
        let r = exact_sqrt(&p(&[-4])).unwrap();
        assert!(r.root.is_one());
        assert!(!r.in_rationals());
        assert!(exact_sqrt(&Poly::zero()).is_none());
    }
}
