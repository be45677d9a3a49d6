//! Brute-force reference computations for cross-checking the exact algorithms.
//!
//! Everything here is deliberately naive: modules over the local ring at a prime `π`
//! are truncated to `ℚ[z]/(π^N)` and handled as finite-dimensional ℚ-vector spaces,
//! and all questions are answered by dense Gaussian elimination. Polynomials are plain
//! coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn poly(c: &[i64]) -> Vec<Q> {
    c.iter().map(|&x| q(x)).collect()
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Remainder modulo a monic polynomial.
fn prem(a: &[Q], m: &[Q]) -> Vec<Q> {
    let mut r = trim(a.to_vec());
    let d = m.len() - 1;
    while r.len() > d {
        let c = r.last().unwrap().clone();
        let shift = r.len() - 1 - d;
        for (i, y) in m.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        r = trim(r);
    }
    r
}

fn ppow(p: &[Q], e: usize) -> Vec<Q> {
    (0..e).fold(vec![Q::one()], |acc, _| pmul(&acc, p))
}

/// Incremental row echelon form.
struct Echelon {
    by_pivot: Vec<Option<Vec<Q>>>,
    rank: usize,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Echelon { by_pivot: vec![None; width], rank: 0 }
    }

    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for c in 0..v.len() {
            if v[c].is_zero() {
                continue;
            }
            match &self.by_pivot[c] {
                Some(row) => {
                    let f = v[c].clone();
                    for k in c..v.len() {
                        if !row[k].is_zero() {
                            let t = &f * &row[k];
                            v[k] -= t;
                        }
                    }
                }
                None => {
                    let inv = v[c].recip();
                    for x in v.iter_mut().skip(c) {
                        *x *= &inv;
                    }
                    self.by_pivot[c] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Rank over ℚ of a list of equal-length vectors.
pub fn rank(vectors: &[Vec<Q>]) -> usize {
    let Some(w) = vectors.first().map(Vec::len) else { return 0 };
    let mut e = Echelon::new(w);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank
}

/// A finitely generated module over `ℚ[z]_(π)` truncated mod `π^N`: `gens` copies of
/// `ℚ[z]/(π^N)` modulo the submodule spanned by `relations`.
struct Truncated {
    gens: usize,
    modulus: Vec<Q>,
    len: usize,
    prime_deg: usize,
    n: usize,
    prime: Vec<Q>,
}

impl Truncated {
    fn new(gens: usize, prime: &[Q], n: usize) -> Self {
        let modulus = ppow(prime, n);
        let len = modulus.len() - 1;
        Truncated { gens, len, prime_deg: prime.len() - 1, n, prime: prime.to_vec(), modulus }
    }

    fn dim(&self) -> usize {
        self.gens * self.len
    }

    /// Flattens a vector of polynomials, reducing each mod `π^N`.
    fn flatten(&self, entries: &[Vec<Q>]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (g, p) in entries.iter().enumerate() {
            for (t, c) in prem(p, &self.modulus).into_iter().enumerate() {
                out[g * self.len + t] = c;
            }
        }
        out
    }

    /// `c_j = #{summands O/π^a with a ≥ j}` for `j = 0..=N`, where `a = N` for free
    /// summands and `c_0` is the number of generators.
    ///
    /// `relations` are vectors of polynomials (one per generator) that span the
    /// relation submodule over `ℚ[z]`; they are multiplied by `z^s` here.
    fn filtration(&self, relations: &[Vec<Vec<Q>>]) -> Vec<usize> {
        let mut e = Echelon::new(self.dim());
        for rel in relations {
            for s in 0..self.len {
                let shifted: Vec<Vec<Q>> = rel
                    .iter()
                    .map(|p| {
                        let mut v = vec![Q::zero(); s];
                        v.extend(p.iter().cloned());
                        v
                    })
                    .collect();
                e.insert(self.flatten(&shifted));
            }
        }
        // dim(π^j V + W) for j = N, N-1, ..., 0.
        let mut span = vec![0; self.n + 1];
        span[self.n] = e.rank;
        for j in (0..self.n).rev() {
            let pj = ppow(&self.prime, j);
            for g in 0..self.gens {
                for t in 0..self.len {
                    let mut entries = vec![Vec::new(); self.gens];
                    let mut mono = vec![Q::zero(); t];
                    mono.push(Q::one());
                    entries[g] = pmul(&pj, &mono);
                    e.insert(self.flatten(&entries));
                }
            }
            span[j] = e.rank;
        }
        // k_j = dim ker(π^j) / deg π = (dim V − dim(π^j V + W)) / deg π.
        let k: Vec<usize> = (0..=self.n)
            .map(|j| {
                let d = self.dim() - span[j];
                assert_eq!(d % self.prime_deg, 0);
                d / self.prime_deg
            })
            .collect();
        let mut c = vec![self.gens];
        c.extend((1..=self.n).map(|j| k[j] - k[j - 1]));
        c
    }
}

/// Invariant factors of the module presented by `matrix` (rows = generators,
/// columns = relations) over the local ring at the monic irreducible `prime`,
/// determined from the π-power filtration of the quotient mod `π^N`.
///
/// Returns one entry per generator: `Some(v)` for `O/π^v`
/// (including `v = 0`) and `None` for free summands, sorted with `None` last.
/// Exponents `≥ N` are indistinguishable from free summands.
pub fn snf_invariants(matrix: &[Vec<Vec<Q>>], prime: &[Q], n: usize) -> Vec<Option<u32>> {
    let gens = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let relations: Vec<Vec<Vec<Q>>> = (0..cols).map(|j| matrix.iter().map(|row| row[j].clone()).collect()).collect();
    let m = Truncated::new(gens, prime, n);
    let c = m.filtration(&relations);
    let mut out = Vec::with_capacity(gens);
    // #{a = v} = c_v − c_{v+1}, with c_0 = gens.
    for v in 0..n {
        for _ in 0..c[v] - c[v + 1] {
            out.push(Some(v as u32));
        }
    }
    for _ in 0..c[n] {
        out.push(None);
    }
    out
}

fn monomials(max_degree: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for a in (0..=d).rev() {
            out.push((a, d - a));
        }
    }
    out
}

/// Spanning relations of the degree-`≤ D` part of `(X² − b₁, Y² − b₂, XY − b₃)`,
/// as coefficient vectors indexed by `monomials(D)`.
fn quadric_relations(b: [&[Q]; 3], max_degree: usize) -> (Vec<(usize, usize)>, Vec<Vec<Vec<Q>>>) {
    let monos = monomials(max_degree);
    let index = |a: usize, b: usize| monos.iter().position(|&m| m == (a, b)).unwrap();
    let lead = [(2, 0), (0, 2), (1, 1)];
    let mut rels = Vec::new();
    for (k, &(la, lb)) in lead.iter().enumerate() {
        for &(a, c) in &monos {
            if a + c + 2 > max_degree {
                continue;
            }
            let mut rel = vec![Vec::new(); monos.len()];
            rel[index(a + la, c + lb)] = vec![Q::one()];
            rel[index(a, c)] = b[k].iter().map(|x| -x).collect();
            rels.push(rel);
        }
    }
    (monos, rels)
}

/// Length of the π-torsion of `ℚ[z]_(π)[X,Y]/(X² − b₁, Y² − b₂, XY − b₃)`, from the
/// Macaulay truncation in degree `≤ D` mod `π^N`: `Σ_{j=1..N} (c_j − c_N)`.
pub fn spectral_torsion_length(b: [&[Q]; 3], prime: &[Q], n: usize, max_degree: usize) -> u32 {
    let (monos, rels) = quadric_relations(b, max_degree);
    let m = Truncated::new(monos.len(), prime, n);
    let c = m.filtration(&rels);
    (1..=n).map(|j| (c[j] - c[n]) as u32).sum()
}

/// `dim_ℚ ℚ[X,Y]/(X² − x, Y² − y, XY − z)` from the Macaulay matrix in degree `≤ D`.
pub fn fiber_dim(x: &Q, y: &Q, z: &Q, max_degree: usize) -> usize {
    let monos = monomials(max_degree);
    let index = |a: usize, b: usize| monos.iter().position(|&m| m == (a, b)).unwrap();
    let lead = [((2, 0), x), ((0, 2), y), ((1, 1), z)];
    let mut rows = Vec::new();
    for &((la, lb), c) in &lead {
        for &(a, bb) in &monos {
            if a + bb + 2 > max_degree {
                continue;
            }
            let mut row = vec![Q::zero(); monos.len()];
            row[index(a + la, bb + lb)] = Q::one();
            row[index(a, bb)] = -c.clone();
            rows.push(row);
        }
    }
    monos.len() - rank(&rows)
}
