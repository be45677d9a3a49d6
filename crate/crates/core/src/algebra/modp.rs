//! Dense polynomials over a small prime field, used by the modular factoriser.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub(crate) type ModPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub(crate) p: u64,
}

fn trim(mut v: ModPoly) -> ModPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn deg(a: &ModPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

impl Fp {
    pub(crate) fn new(p: u64) -> Self {
        Fp { p }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub(crate) fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        let mut e = self.p - 2;
        let mut base = a % self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn reduce(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub(crate) fn from_ints(self, c: &[BigInt]) -> ModPoly {
        trim(c.iter().map(|x| self.reduce(x)).collect())
    }

    pub(crate) fn monic(self, a: &ModPoly) -> ModPoly {
        match a.last() {
            Some(&lc) if lc != 1 => {
                let inv = self.inv(lc);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
            _ => a.clone(),
        }
    }

    #[cfg(test)]
    pub(crate) fn add_poly(self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|k| (a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub(crate) fn sub_poly(self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|k| self.sub(a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0)))
                .collect(),
        )
    }

    pub(crate) fn mul_poly(self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mul(x, y)) % self.p;
            }
        }
        trim(c)
    }

    pub(crate) fn div_rem(self, a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
        let db = deg(b).expect("division by zero polynomial mod p");
        let inv = self.inv(b[db]);
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &bc) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, bc));
            }
            q[k] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub(crate) fn rem(self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        self.div_rem(a, b).1
    }

    pub(crate) fn gcd(self, a: &ModPoly, b: &ModPoly) -> ModPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub(crate) fn ext_gcd(self, a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("gcd of zeros"));
        let sc = |v: &ModPoly| trim(v.iter().map(|&c| self.mul(c, inv)).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub(crate) fn derivative(self, a: &ModPoly) -> ModPoly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul(c, k as u64 % self.p))
                .collect(),
        )
    }

    fn pow_mod(self, base: &ModPoly, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut acc = vec![1u64];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul_poly(&acc, &b), m);
            }
            b = self.rem(&self.mul_poly(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn is_squarefree(self, f: &ModPoly) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && deg(&self.gcd(f, &d)) == Some(0)
    }

    /// Berlekamp's algorithm: the monic irreducible factors of a monic squarefree
    /// polynomial, in a deterministic order.
    pub(crate) fn berlekamp(self, f: &ModPoly) -> Vec<ModPoly> {
        let n = deg(f).expect("factoring zero");
        if n <= 1 {
            return vec![f.clone()];
        }
        let xp = self.pow_mod(&vec![0, 1], self.p, f);
        // Row i of `rows` holds x^(i·p) mod f minus x^i.
        let mut rows = Vec::with_capacity(n);
        let mut cur = vec![1u64];
        for i in 0..n {
            let mut row = cur.clone();
            row.resize(n, 0);
            row[i] = self.sub(row[i], 1);
            rows.push(row);
            cur = self.rem(&self.mul_poly(&cur, &xp), f);
        }
        // Left kernel of `rows` = kernel of its transpose.
        let mut a: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
        let basis = self.kernel(&mut a, n);
        let k = basis.len();
        let mut factors = vec![f.clone()];
        for v in basis.iter().filter(|v| deg(v).unwrap_or(0) > 0) {
            if factors.len() == k {
                break;
            }
            let mut next = Vec::new();
            for u in factors {
                if deg(&u) == Some(1) {
                    next.push(u);
                    continue;
                }
                let mut rest = u;
                let vr = self.rem(v, &rest);
                for s in 0..self.p {
                    if deg(&rest) == Some(0) {
                        break;
                    }
                    let shifted = self.sub_poly(&vr, &vec![s]);
                    let g = self.gcd(&rest, &shifted);
                    if deg(&g).unwrap_or(0) > 0 {
                        rest = self.div_rem(&rest, &g).0;
                        next.push(g);
                    }
                }
            }
            factors = next;
        }
        debug_assert_eq!(factors.len(), k);
        factors
    }

    /// Basis of `{v : a·v = 0}` for a square matrix, as polynomials.
    fn kernel(self, a: &mut [Vec<u64>], n: usize) -> Vec<ModPoly> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(piv) = (row..n).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(row, piv);
            let inv = self.inv(a[row][col]);
            for c in 0..n {
                a[row][c] = self.mul(a[row][c], inv);
            }
            for r in 0..n {
                if r != row && a[r][col] != 0 {
                    let factor = a[r][col];
                    for c in 0..n {
                        let sub = self.mul(factor, a[row][c]);
                        a[r][c] = self.sub(a[r][c], sub);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; n];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, a[r][fc]);
                }
                trim(v)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_splits_product_of_irreducibles() {
        let f = Fp::new(7);
        // (x^2 + 1)(x + 3)(x + 5) over F_7; x^2 + 1 is irreducible since 7 ≡ 3 mod 4.
        let a = f.mul_poly(&vec![1, 0, 1], &vec![3, 1]);
        let g = f.mul_poly(&a, &vec![5, 1]);
        let mut parts = f.berlekamp(&g);
        parts.sort();
        assert_eq!(parts, vec![vec![1, 0, 1], vec![3, 1], vec![5, 1]]);
    }

    #[test]
    fn ext_gcd_mod_p() {
        let f = Fp::new(7);
        let a = vec![1, 0, 1];
        let b = vec![2, 1];
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        let lhs = f.add_poly(&f.mul_poly(&s, &a), &f.mul_poly(&t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
