//! Smith normal form over the local ring `ℚ[z]_(π)` at a monic irreducible `π`.
//!
//! Only operations that are invertible over the local ring are used: swaps, adding a
//! polynomial multiple of one line to another, and scaling a line by a polynomial
//! that is a unit at `π`. Everything stays inside `ℚ[z]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::factor::is_irreducible;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Exponent of an invariant factor `π^v`; `Infinite` marks a free summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn of(p: &Poly, prime: &Poly) -> Valuation {
        p.valuation(prime).map_or(Valuation::Infinite, Valuation::Finite)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Invariant factors of the module presented by `matrix` over the local ring at `prime`.
///
/// Rows index generators and columns index relations. The result has one entry per
/// generator, sorted nondecreasingly: `Finite(v)` contributes a summand `O/π^v`
/// (`v = 0` is trivial) and `Infinite` a free summand `O`.
pub fn snf_over_dvr(matrix: &[Vec<Poly>], prime: &Poly) -> Result<Vec<Valuation>> {
    if !prime.is_monic() || !is_irreducible(prime) {
        return Err(Error::NotIrreducible(prime.to_string()));
    }
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    assert!(matrix.iter().all(|r| r.len() == cols), "ragged presentation matrix");
    let mut a: Vec<Vec<Poly>> = matrix.to_vec();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        // Pivot: an entry of least valuation in the trailing block.
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if let Some(v) = x.valuation(prime) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let (_, unit) = a[t][t].split_valuation(prime).unwrap();

        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let (w, u2) = a[i][t].split_valuation(prime).unwrap();
            let m = &prime.pow(w - v) * &u2;
            for j in t..cols {
                let updated = &(&unit * &a[i][j]) - &(&m * &a[t][j]);
                a[i][j] = updated;
            }
            normalize_line(&mut a[i][t..]);
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let (w, u2) = a[t][j].split_valuation(prime).unwrap();
            let m = &prime.pow(w - v) * &u2;
            for row in a.iter_mut().skip(t) {
                let updated = &(&unit * &row[j]) - &(&m * &row[t]);
                row[j] = updated;
            }
        }
        debug_assert!((t + 1..rows).all(|i| a[i][t].is_zero()));
        debug_assert!((t + 1..cols).all(|j| a[t][j].is_zero()));
        diag.push(Valuation::Finite(v));
    }
    diag.resize(rows, Valuation::Infinite);
    diag.sort();
    Ok(diag)
}

/// Scales a row by a nonzero rational so that coefficient sizes stay small.
fn normalize_line(line: &mut [Poly]) {
    if let Some(lc) = line.iter().find_map(|p| p.leading_coeff().cloned()) {
        let inv = lc.recip();
        for p in line.iter_mut() {
            *p = p.scale(&inv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Valuation::{Finite, Infinite};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn identity_is_trivial() {
        let m = vec![vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]];
        assert_eq!(snf_over_dvr(&m, &Poly::z()).unwrap(), vec![Finite(0), Finite(0)]);
    }

    #[test]
    fn diagonal() {
        let m = vec![vec![p(&[0, 0, 1]), p(&[])], vec![p(&[]), p(&[1])]];
        assert_eq!(snf_over_dvr(&m, &Poly::z()).unwrap(), vec![Finite(0), Finite(2)]);
    }

    #[test]
    fn spectral_module_at_simple_zero() {
        // Generators 1, X, Y; relations b3·X − b1·Y and b2·X − b3·Y with b = (z, z, z).
        let z = Poly::z();
        let m = vec![
            vec![Poly::zero(), Poly::zero()],
            vec![z.clone(), z.clone()],
            vec![-&z, -&z],
        ];
        assert_eq!(
            snf_over_dvr(&m, &Poly::z()).unwrap(),
            vec![Finite(1), Infinite, Infinite]
        );
    }

    #[test]
    fn units_away_from_the_prime_are_invisible() {
        // z - 1 is a unit at z, so diag(z - 1, z(z - 1)) looks like diag(1, z).
        let m = vec![vec![p(&[-1, 1]), p(&[])], vec![p(&[]), p(&[0, -1, 1])]];
        assert_eq!(snf_over_dvr(&m, &Poly::z()).unwrap(), vec![Finite(0), Finite(1)]);
    }

    #[test]
    fn rejects_reducible_prime() {
        let m = vec![vec![p(&[1])]];
        assert!(matches!(snf_over_dvr(&m, &p(&[0, 0, 1])), Err(Error::NotIrreducible(_))));
        assert!(matches!(snf_over_dvr(&m, &p(&[0, 2])), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn nonlinear_prime() {
        let pi = p(&[1, 0, 1]);
        let m = vec![vec![pi.pow(3), &pi * &p(&[0, 1])], vec![pi.clone(), pi.pow(2)]];
        // Entries all divisible by π once; determinant π^5·... − π^2·z has valuation 2.
        let got = snf_over_dvr(&m, &pi).unwrap();
        assert_eq!(got, vec![Finite(1), Finite(1)]);
    }
}
