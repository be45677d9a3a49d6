//! Seeded random corpora for property and acceptance tests.
//!
//! All generators take an explicit RNG so corpora are reproducible from a seed.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use vhiggs::algebra::{Poly, Rational, Section};
use vhiggs::higgs::{HiggsPair, PolyMatrix, TwistBundle};
use vhiggs::hitchin::{ConePoint, GaussianRational, Mat2, PointPair, SpectralDatum};

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn gauss(re: i64, im: i64) -> GaussianRational {
    Complex::new(rat(re), rat(im))
}

/// Random polynomial of degree `≤ max_deg` with coefficients in `[-h, h]`; `None` gives zero.
pub fn poly<R: Rng>(rng: &mut R, max_deg: Option<u32>, h: i64) -> Poly {
    match max_deg {
        None => Poly::zero(),
        Some(d) => Poly::from_i64s(&(0..=d).map(|_| rng.gen_range(-h..=h)).collect::<Vec<_>>()),
    }
}

fn bound(b: i64) -> Option<u32> {
    (b >= 0).then_some(b as u32)
}

fn scale_matrix(s: &Poly, m: &PolyMatrix) -> PolyMatrix {
    let e = |i: usize, j: usize| s * &m[i][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn add_scalar(m: &PolyMatrix, t: &Poly) -> PolyMatrix {
    [[&m[0][0] + t, m[0][1].clone()], [m[1][0].clone(), &m[1][1] + t]]
}

#[derive(Clone, Copy, Debug)]
pub struct PairOptions {
    /// Add random scalar (trace) parts.
    pub with_trace: bool,
    /// Range for `e₁, e₂`.
    pub e_range: i64,
    pub max_m: u32,
    pub height: i64,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions { with_trace: false, e_range: 2, max_m: 2, height: 3 }
    }
}

/// A valid commuting pair `φ_k = s_k·ψ (+ t_k·id)` with `ψ` traceless.
///
/// Every commuting traceless pair with a common non-scalar factor has this shape, so the
/// corpus covers irreducible, reducible, nilpotent and zero cases.
pub fn commuting_pair<R: Rng>(rng: &mut R, opts: PairOptions) -> HiggsPair {
    let e1 = rng.gen_range(-opts.e_range..=opts.e_range);
    let e2 = rng.gen_range(-opts.e_range..=opts.e_range);
    let m1 = rng.gen_range(0..=opts.max_m);
    let m2 = rng.gen_range(0..=m1);
    let k = rng.gen_range(0..=m2) as i64;
    let h = opts.height;
    let shape = rng.gen_range(0..6);
    let diag = poly(rng, bound(k), h);
    let upper = poly(rng, bound(e1 - e2 + k), h);
    let lower = poly(rng, bound(e2 - e1 + k), h);
    let psi: PolyMatrix = match shape {
        0 => [[Poly::zero(), upper], [Poly::zero(), Poly::zero()]],
        1 => [[Poly::zero(), Poly::zero()], [lower, Poly::zero()]],
        2 => [[diag.clone(), Poly::zero()], [Poly::zero(), -&diag]],
        5 => [[Poly::zero(), Poly::zero()], [Poly::zero(), Poly::zero()]],
        _ => [[diag.clone(), upper], [lower, -&diag]],
    };
    let s1 = poly(rng, Some(m1 - k as u32), h);
    let s2 = poly(rng, Some(m2 - k as u32), h);
    let (mut phi1, mut phi2) = (scale_matrix(&s1, &psi), scale_matrix(&s2, &psi));
    if opts.with_trace {
        phi1 = add_scalar(&phi1, &poly(rng, Some(m1), h));
        phi2 = add_scalar(&phi2, &poly(rng, Some(m2), h));
    }
    let twist = TwistBundle::new(m1, m2).expect("m1 >= m2");
    HiggsPair::from_polys(e1, e2, twist, phi1, phi2).expect("entries fit their bounds")
}

/// Pairs of the form `φ₁ = φ₂ = [[0, 1], [f, 0]]`-like with an irreducible datum when
/// `f` is not a square, on `E = O ⊕ O`, `V = O(m) ⊕ O(m)`.
pub fn companion_pair<R: Rng>(rng: &mut R, m: u32, height: i64) -> HiggsPair {
    let f = loop {
        let f = poly(rng, Some(m), height);
        if !f.is_zero() {
            break f;
        }
    };
    let psi: PolyMatrix = [[Poly::zero(), Poly::one()], [f, Poly::zero()]];
    let s2 = Poly::constant(rat(rng.gen_range(1..=3)));
    let phi2 = scale_matrix(&s2, &psi);
    HiggsPair::from_polys(0, 0, TwistBundle::new(m, m).unwrap(), psi, phi2).unwrap()
}

/// Nonzero `b = c·s·(t², u², tu)` with `s ∈ O(2r)`, `t ∈ O(m₁−r)`, `u ∈ O(m₂−r)`.
pub fn cone_datum<R: Rng>(rng: &mut R, max_m: u32, height: i64) -> SpectralDatum {
    loop {
        let m1 = rng.gen_range(0..=max_m);
        let m2 = rng.gen_range(0..=m1);
        let r = rng.gen_range(0..=m2);
        let c = rat(rng.gen_range(1..=height)) * if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
        let s = poly(rng, Some(2 * r), height).scale(&c);
        let t = poly(rng, Some(m1 - r), height);
        let u = poly(rng, Some(m2 - r), height);
        let b = SpectralDatum::from_polys(&s * &(&t * &t), &s * &(&u * &u), &s * &(&t * &u), m1, m2).unwrap();
        if !b.is_zero() {
            return b;
        }
    }
}

/// Data with a zero of prescribed multiplicities at `z = 0`: `b = s·(t², u², tu)` with
/// `s = z^a·σ`, `t = z^p·τ`, `u = z^q·υ` and units `σ, τ, υ`.
pub fn cone_datum_with_zero<R: Rng>(rng: &mut R, height: i64) -> SpectralDatum {
    let part = |rng: &mut R, room: u32| {
        let k = rng.gen_range(0..=room);
        let mut unit = poly(rng, Some(room - k), height);
        if unit.coeff(0).is_zero() {
            unit = &unit + &Poly::one();
        }
        &Poly::monomial(rat(1), k as usize) * &unit
    };
    let r = rng.gen_range(1..=2);
    let (dt, du) = (rng.gen_range(0..=2), rng.gen_range(0..=1));
    let (dt, du) = (dt.max(du), dt.min(du));
    let s = part(rng, 2 * r);
    let t = part(rng, dt);
    let u = part(rng, du);
    SpectralDatum::from_polys(&s * &(&t * &t), &s * &(&u * &u), &s * &(&t * &u), r + dt, r + du).unwrap()
}

fn rational_invertible<R: Rng>(rng: &mut R, h: i64) -> Mat2<GaussianRational> {
    loop {
        let mut e = || gauss(rng.gen_range(-h..=h), if rng.gen_bool(0.3) { rng.gen_range(-h..=h) } else { 0 });
        let g = Mat2::new(e(), e(), e(), e());
        if !g.det().is_zero() {
            return g;
        }
    }
}

pub fn inverse(g: &Mat2<GaussianRational>) -> Mat2<GaussianRational> {
    let d = g.det();
    let [[a, b], [c, e]] = &g.0;
    Mat2::new(e / &d, -b / &d, -c / &d, a / &d)
}

pub fn conjugate(g: &Mat2<GaussianRational>, p: &PointPair<GaussianRational>) -> PointPair<GaussianRational> {
    let gi = inverse(g);
    PointPair::new(g.mul(&p.phi1).mul(&gi), g.mul(&p.phi2).mul(&gi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Polystable,
    Nilpotent,
    Zero,
}

/// A random conjugate of a diagonal pair, of a nilpotent pair, or the zero pair.
pub fn point_pair<R: Rng>(rng: &mut R, kind: PointKind) -> PointPair<GaussianRational> {
    let g = rational_invertible(rng, 3);
    let nz = |rng: &mut R| loop {
        let v = rng.gen_range(-4..=4);
        if v != 0 {
            return v;
        }
    };
    let base = match kind {
        PointKind::Zero => return PointPair::new(Mat2::zero(), Mat2::zero()),
        PointKind::Polystable => {
            let (l1, l2) = loop {
                let l = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
                if l != (0, 0) {
                    break l;
                }
            };
            let d = |l: i64| Mat2::new(gauss(l, 0), gauss(0, 0), gauss(0, 0), gauss(-l, 0));
            PointPair::new(d(l1), d(l2))
        }
        PointKind::Nilpotent => {
            let n = |a: i64| Mat2::new(gauss(0, 0), gauss(a, 0), gauss(0, 0), gauss(0, 0));
            let a = nz(rng);
            let b = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(-4..=4) };
            if rng.gen_bool(0.5) {
                PointPair::new(n(a), n(b))
            } else {
                PointPair::new(n(b), n(a))
            }
        }
    };
    conjugate(&g, &base)
}

/// A rational point `s·(t², u², tu)` of the cone, nonzero.
pub fn cone_point<R: Rng>(rng: &mut R) -> ConePoint<GaussianRational> {
    loop {
        let s = rat(rng.gen_range(-5..=5)) / rat(rng.gen_range(1..=3));
        let t = rat(rng.gen_range(-5..=5));
        let u = rat(rng.gen_range(-5..=5));
        let c = ConePoint {
            x: Complex::new(&s * &t * &t, rat(0)),
            y: Complex::new(&s * &u * &u, rat(0)),
            z: Complex::new(&s * &t * &u, rat(0)),
        };
        if !c.is_origin() {
            return c;
        }
    }
}

pub fn section(p: Poly, bound: u32) -> Section {
    Section::new(p, bound).expect("degree within bound")
}
