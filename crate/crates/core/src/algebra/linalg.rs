//! Exact Gaussian elimination over ℚ and over residue fields `ℚ[z]/(π)`.

use num_traits::Zero;

use super::poly::Poly;
use super::rational::Rational;

/// Rank of a rational matrix given by rows.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].recip();
        let pivot_row: Vec<Rational> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * p;
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Dimension of `{x : A·x = 0}` for `A` with `cols` columns.
pub fn kernel_dim(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    cols - rank(rows)
}

/// Rank over the residue field `ℚ[z]/(π)` of a matrix of polynomials.
/// `prime` must be irreducible.
pub fn rank_over_residue_field(rows: &[Vec<Poly>], prime: &Poly) -> usize {
    let mut a: Vec<Vec<Poly>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem(prime)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let (g, inv, _) = a[r][c].ext_gcd(prime);
        debug_assert!(g.is_one(), "residue ring is not a field");
        let pivot_row: Vec<Poly> = a[r].iter().map(|x| (x * &inv).rem(prime)).collect();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = (&*x - &(&f * p)).rem(prime);
            }
        }
        a[r] = pivot_row;
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(kernel_dim(vec![vec![q(1), q(1), q(1)]], 3), 2);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn residue_field_rank() {
        // Over ℚ[z]/(z² + 1), the rows (z, 1) and (-1, z) are proportional (z·z = -1).
        let pi = Poly::from_i64s(&[1, 0, 1]);
        let m = vec![
            vec![Poly::z(), Poly::one()],
            vec![Poly::from_i64s(&[-1]), Poly::z()],
        ];
        assert_eq!(rank_over_residue_field(&m, &pi), 1);
        let m = vec![vec![Poly::z(), Poly::one()], vec![Poly::one(), Poly::z()]];
        assert_eq!(rank_over_residue_field(&m, &pi), 2);
    }
}
