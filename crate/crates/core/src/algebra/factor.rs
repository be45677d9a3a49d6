//! Squarefree decomposition and complete factorisation over ℚ.
//!
//! Squarefree parts come from Yun's algorithm. Each squarefree part is factored by
//! Zassenhaus' method: Berlekamp modulo a small prime, quadratic Hensel lifting past
//! a Mignotte-type coefficient bound, then recombination by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{deg, Fp, ModPoly};
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `p = constant · ∏ factor^multiplicity` with monic, pairwise distinct irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.constant.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Yun's algorithm: monic, squarefree, pairwise coprime `s_i` with `p = lc · ∏ s_i^i`.
/// Constant parts are omitted, so a constant input gives an empty list.
pub fn squarefree_parts(p: &Poly) -> Vec<(Poly, u32)> {
    if p.is_constant() {
        return Vec::new();
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Full factorisation over ℚ into monic irreducible factors with multiplicities,
/// sorted by degree and then by coefficients.
pub fn squarefree_decomposition(p: &Poly) -> Result<Factorization> {
    let constant = p.leading_coeff().ok_or(Error::ZeroInput)?.clone();
    let mut factors: Vec<(Poly, u32)> = squarefree_parts(p)
        .into_iter()
        .flat_map(|(s, m)| factor_squarefree(&s).into_iter().map(move |g| (g, m)))
        .collect();
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(Factorization { constant, factors })
}

/// True for nonconstant polynomials with no nontrivial factorisation over ℚ.
pub fn is_irreducible(p: &Poly) -> bool {
    if p.is_constant() {
        return false;
    }
    match squarefree_parts(p).as_slice() {
        [(s, 1)] => factor_squarefree(s).len() == 1,
        _ => false,
    }
}

/// Monic irreducible factors of a squarefree polynomial.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.degree().unwrap_or(0) <= 1 {
        return vec![f.monic()];
    }
    let (_, prim) = f.primitive_part();
    zassenhaus(prim)
        .into_iter()
        .map(|g| Poly::from_integers(&g).monic())
        .collect()
}

type IntPoly = Vec<BigInt>;

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn zassenhaus(mut f: IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    if f[0].is_zero() {
        // f is squarefree, so z divides it at most once.
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
    }
    let n = f.len() - 1;
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.push(f);
        return out;
    }
    let lc = f[n].clone();

    let mut best: Option<(Fp, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let fp = Fp::new(p);
        if fp.reduce(&lc) == 0 {
            continue;
        }
        let reduced = fp.monic(&fp.from_ints(&f));
        if !fp.is_squarefree(&reduced) {
            continue;
        }
        let parts = fp.berlekamp(&reduced);
        if best.as_ref().is_none_or(|(_, b)| parts.len() < b.len()) {
            best = Some((fp, parts));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (fp, parts) = best.expect("no admissible prime for a squarefree integer polynomial");
    if parts.len() == 1 {
        out.push(f);
        return out;
    }

    let max = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max * lc.abs();
    let target = bound * 2 + 1;
    let (lifted, modulus) = lift_all(&f, &parts, fp, &target);
    out.extend(recombine(f, lifted, &modulus));
    out
}

fn modp_to_int(a: &ModPoly) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce(a: &[BigInt], m: &BigInt) -> IntPoly {
    let mut v: IntPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: IntPoly = (0..n)
        .map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: IntPoly = (0..n)
        .map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    reduce(&c, m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (IntPoly, IntPoly) {
    let dh = h.len() - 1;
    debug_assert!(h[dh].is_one());
    let mut r = reduce(a, m);
    if r.len() <= dh {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let c = r[k + dh].clone();
        if c.is_zero() {
            continue;
        }
        for (j, hc) in h.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * hc).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(dh);
    (reduce(&q, m), reduce(&r, m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc(f) · ∏ parts (mod p)` to a factorisation modulo `p^(2^k) ≥ target`.
/// Returns monic lifted factors and the final modulus.
fn lift_all(f: &[BigInt], parts: &[ModPoly], fp: Fp, target: &BigInt) -> (Vec<IntPoly>, BigInt) {
    let p = BigInt::from(fp.p);
    let mut modulus = p.clone();
    while &modulus < target {
        modulus = &modulus * &modulus;
    }
    let mut lifted = Vec::with_capacity(parts.len());
    let mut current: IntPoly = f.to_vec();
    for (i, h0) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            let inv = mod_inverse(current.last().unwrap(), &modulus);
            lifted.push(mul(&current, &[inv], &modulus));
            break;
        }
        let lc = fp.reduce(current.last().unwrap());
        let g0 = parts[i + 1..]
            .iter()
            .fold(vec![lc], |acc, q| fp.mul_poly(&acc, q));
        let (g, h) = hensel_two(&current, &g0, h0, fp, target);
        lifted.push(h);
        current = g;
    }
    (lifted, modulus)
}

/// Quadratic Hensel lifting of `f ≡ g·h (mod p)` with `h` monic.
fn hensel_two(f: &[BigInt], g0: &ModPoly, h0: &ModPoly, fp: Fp, target: &BigInt) -> (IntPoly, IntPoly) {
    let (one, s0, t0) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(deg(&one), Some(0));
    let (mut g, mut h) = (modp_to_int(g0), modp_to_int(h0));
    let (mut s, mut t) = (modp_to_int(&s0), modp_to_int(&t0));
    let mut m = BigInt::from(fp.p);
    while &m < target {
        let m2 = &m * &m;
        let e = sub(f, &mul(&g, &h, &m2), &m2);
        let (q, r) = div_rem_monic(&mul(&s, &e, &m2), &h, &m2);
        let g_new = add(&add(&g, &mul(&t, &e, &m2), &m2), &mul(&q, &g, &m2), &m2);
        let h_new = add(&h, &r, &m2);
        let b = sub(
            &add(&mul(&s, &g_new, &m2), &mul(&t, &h_new, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = div_rem_monic(&mul(&s, &b, &m2), &h_new, &m2);
        s = sub(&s, &d, &m2);
        t = sub(&sub(&t, &mul(&t, &b, &m2), &m2), &mul(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn recombine(f: IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut current = Poly::from_integers(&f);
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let lc = current.primitive_part().1.last().unwrap().clone();
        let mut hit = None;
        for combo in combinations(lifted.len(), size) {
            let prod = combo
                .iter()
                .fold(vec![lc.clone()], |acc, &i| mul(&acc, &lifted[i], modulus));
            let cand = Poly::from_integers(&symmetric(&prod, modulus));
            if cand.is_constant() {
                continue;
            }
            let (_, prim) = cand.primitive_part();
            let cand = Poly::from_integers(&prim);
            if let Some(q) = current.exact_div(&cand) {
                hit = Some((combo, prim, q));
                break;
            }
        }
        match hit {
            Some((combo, prim, q)) => {
                out.push(prim);
                current = q;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !current.is_constant() {
        out.push(current.primitive_part().1);
    }
    out
}
