//! `V`-twisted Higgs pairs `φ = φ₁⊗v₁ + φ₂⊗v₂` on ℙ¹ with `E = O(e₁) ⊕ O(e₂)` and
//! `V = O(m₁) ⊕ O(m₂)`.

use std::fmt;

use num_traits::One;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, rank, ExtSection, Poly, QuadPoly, Rational, Section};
use crate::error::{Error, Result};
use crate::hitchin::datum_of;
use crate::spectral::{is_reducible, Reducibility};

/// A 2×2 matrix of chart-0 polynomials.
pub type PolyMatrix = [[Poly; 2]; 2];

pub(crate) mod mat {
    use super::{Poly, PolyMatrix};

    pub fn zero() -> PolyMatrix {
        [[Poly::zero(), Poly::zero()], [Poly::zero(), Poly::zero()]]
    }

    pub fn scalar(s: Poly) -> PolyMatrix {
        [[s.clone(), Poly::zero()], [Poly::zero(), s]]
    }

    pub fn mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    pub fn sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let e = |i: usize, j: usize| &a[i][j] - &b[i][j];
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    pub fn commutator(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        sub(&mul(a, b), &mul(b, a))
    }

    pub fn trace(a: &PolyMatrix) -> Poly {
        &a[0][0] + &a[1][1]
    }

    pub fn det(a: &PolyMatrix) -> Poly {
        &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
    }

    pub fn is_zero(a: &PolyMatrix) -> bool {
        a.iter().flatten().all(Poly::is_zero)
    }
}

/// `V = O(m₁) ⊕ O(m₂)`, normalised so that `m₁ ≥ m₂ ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTwist")]
pub struct TwistBundle {
    pub m1: u32,
    pub m2: u32,
}

#[derive(Deserialize)]
struct RawTwist {
    m1: u32,
    m2: u32,
}

impl TryFrom<RawTwist> for TwistBundle {
    type Error = Error;
    fn try_from(r: RawTwist) -> Result<Self> {
        TwistBundle::new(r.m1, r.m2)
    }
}

impl TwistBundle {
    pub fn new(m1: u32, m2: u32) -> Result<Self> {
        if m1 < m2 {
            return Err(Error::InvalidPair(format!("V must satisfy m1 >= m2, got ({m1}, {m2})")));
        }
        Ok(TwistBundle { m1, m2 })
    }

    pub fn degree(&self, k: usize) -> u32 {
        [self.m1, self.m2][k]
    }
}

/// A pair of 2×2 matrices of sections. Entry `(i, j)` of `φ_k` is a section of
/// `O(e_i − e_j + m_k)`; bounds are carried explicitly and checked by [`HiggsPair::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HiggsPair {
    e: [i64; 2],
    twist: TwistBundle,
    phi: [[[Section; 2]; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Declared bound differs from `e_i − e_j + m_k`.
    BoundMismatch { phi: usize, row: usize, col: usize, expected: i64, declared: u32 },
    /// Nonzero entry where the bundle `O(e_i − e_j + m_k)` has no sections.
    NonzeroNegativeDegree { phi: usize, row: usize, col: usize, expected: i64 },
    NotCommuting { commutator: [[Poly; 2]; 2] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundMismatch { phi, row, col, expected, declared } => write!(
                f,
                "phi{phi}[{row}][{col}] declared bound {declared}, expected {expected}"
            ),
            Violation::NonzeroNegativeDegree { phi, row, col, expected } => {
                write!(f, "phi{phi}[{row}][{col}] must vanish (bound {expected} < 0)")
            }
            Violation::NotCommuting { commutator } => {
                let c: Vec<String> = commutator.iter().flatten().map(|p| p.to_string()).collect();
                write!(f, "[phi1, phi2] = [[{}, {}], [{}, {}]] != 0", c[0], c[1], c[2], c[3])
            }
        }
    }
}

impl HiggsPair {
    /// Assembles a pair without checking it.
    pub fn new(e1: i64, e2: i64, twist: TwistBundle, phi1: [[Section; 2]; 2], phi2: [[Section; 2]; 2]) -> Self {
        HiggsPair { e: [e1, e2], twist, phi: [phi1, phi2] }
    }

    /// Attaches the expected bounds (clamped at 0) to chart-0 polynomials.
    pub fn from_polys(e1: i64, e2: i64, twist: TwistBundle, phi1: PolyMatrix, phi2: PolyMatrix) -> Result<Self> {
        let e = [e1, e2];
        let attach = |k: usize, m: PolyMatrix| -> Result<[[Section; 2]; 2]> {
            let [[a, b], [c, d]] = m;
            let s = |p: Poly, i: usize, j: usize| {
                let bound = (e[i] - e[j] + twist.degree(k) as i64).max(0) as u32;
                Section::new(p, bound)
            };
            Ok([[s(a, 0, 0)?, s(b, 0, 1)?], [s(c, 1, 0)?, s(d, 1, 1)?]])
        };
        Ok(HiggsPair::new(e1, e2, twist, attach(0, phi1)?, attach(1, phi2)?))
    }

    pub fn e1(&self) -> i64 {
        self.e[0]
    }

    pub fn e2(&self) -> i64 {
        self.e[1]
    }

    pub fn twist(&self) -> TwistBundle {
        self.twist
    }

    /// Entry `(i, j)` of `φ_{k+1}` (0-based `k`).
    pub fn entry(&self, k: usize, i: usize, j: usize) -> &Section {
        &self.phi[k][i][j]
    }

    pub fn expected_bound(&self, k: usize, i: usize, j: usize) -> i64 {
        self.e[i] - self.e[j] + self.twist.degree(k) as i64
    }

    pub fn phi_polys(&self, k: usize) -> PolyMatrix {
        let p = |i: usize, j: usize| self.phi[k][i][j].poly().clone();
        [[p(0, 0), p(0, 1)], [p(1, 0), p(1, 1)]]
    }

    /// Every violated condition; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let expected = self.expected_bound(k, i, j);
                    let s = &self.phi[k][i][j];
                    let (phi, row, col) = (k + 1, i, j);
                    if expected < 0 {
                        if !s.is_zero() {
                            out.push(Violation::NonzeroNegativeDegree { phi, row, col, expected });
                        }
                    } else if s.bound() as i64 != expected {
                        out.push(Violation::BoundMismatch { phi, row, col, expected, declared: s.bound() });
                    }
                }
            }
        }
        let c = mat::commutator(&self.phi_polys(0), &self.phi_polys(1));
        if !mat::is_zero(&c) {
            out.push(Violation::NotCommuting { commutator: c });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            return Ok(());
        }
        let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Err(Error::InvalidPair(msg.join("; ")))
    }

    /// `(tr φ₁, tr φ₂)` as sections of `O(m₁)`, `O(m₂)`.
    pub fn trace(&self) -> (Section, Section) {
        let t = |k: usize| {
            let p = mat::trace(&self.phi_polys(k));
            Section::new(p, self.twist.degree(k)).expect("diagonal entries have bound m_k")
        };
        (t(0), t(1))
    }

    pub fn is_traceless(&self) -> bool {
        (0..2).all(|k| mat::trace(&self.phi_polys(k)).is_zero())
    }

    /// `det E` trivial and both traces zero.
    pub fn is_sl2(&self) -> bool {
        self.e[0] + self.e[1] == 0 && self.is_traceless()
    }

    /// `E ⊗ O(k)` with the same `φ`.
    pub fn twisted_by(&self, k: i64) -> HiggsPair {
        HiggsPair { e: [self.e[0] + k, self.e[1] + k], ..self.clone() }
    }

    /// `φ_k − ½ tr(φ_k)·id`.
    fn traceless_part(&self, k: usize) -> PolyMatrix {
        let m = self.phi_polys(k);
        let half = mat::trace(&m).scale(&Rational::new(1.into(), 2.into()));
        mat::sub(&m, &mat::scalar(half))
    }
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    #[serde(rename = "E")]
    e: RawE,
    #[serde(rename = "V")]
    v: TwistBundle,
    phi1: [[Section; 2]; 2],
    phi2: [[Section; 2]; 2],
}

#[derive(Serialize, Deserialize)]
struct RawE {
    e1: i64,
    e2: i64,
}

impl Serialize for HiggsPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPair {
            e: RawE { e1: self.e[0], e2: self.e[1] },
            v: self.twist,
            phi1: self.phi[0].clone(),
            phi2: self.phi[1].clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HiggsPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawPair::deserialize(d)?;
        Ok(HiggsPair::new(r.e.e1, r.e.e2, r.v, r.phi1, r.phi2))
    }
}

/// One saturated invariant line subbundle `L ≅ O(degree)` with generator `(v₁, v₂)`,
/// `v_i ∈ H⁰(O(e_i − degree))`, and the eigen-sections `φ_k·v = a_k·v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantLine {
    pub degree: i64,
    pub generator: [ExtSection; 2],
    pub eigenvalues: [ExtSection; 2],
    /// `c` when the coefficients live in ℚ(√c) rather than ℚ.
    #[serde(serialize_with = "ser_radicand", skip_serializing_if = "Option::is_none")]
    pub radicand: Option<Rational>,
}

fn ser_radicand<S: Serializer>(c: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.serialize_str(&format_rational(c)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineSubbundleReport {
    /// Both `φ_k` are scalar: every line subbundle is invariant.
    All,
    Lines(Vec<InvariantLine>),
}

impl Serialize for LineSubbundleReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LineSubbundleReport::All => s.serialize_str("all"),
            LineSubbundleReport::Lines(l) => l.serialize(s),
        }
    }
}

type QuadMatrix = [[QuadPoly; 2]; 2];

fn quad_apply(m: &QuadMatrix, v: &[QuadPoly; 2], c: &Rational) -> [QuadPoly; 2] {
    let row = |i: usize| m[i][0].mul(&v[0], c).add(&m[i][1].mul(&v[1], c));
    [row(0), row(1)]
}

/// Saturated kernel generator of a nonzero rank-one matrix, normalised so that its
/// first nonzero component is monic.
fn saturated_kernel(m: &QuadMatrix, c: &Rational) -> [QuadPoly; 2] {
    let (x, y) = if !m[0][0].is_zero() || !m[0][1].is_zero() {
        (m[0][1].clone(), m[0][0].neg())
    } else {
        (m[1][1].clone(), m[1][0].neg())
    };
    let g = x.gcd(&y, c);
    let (x, y) = (x.exact_div(&g, c).expect("gcd divides"), y.exact_div(&g, c).expect("gcd divides"));
    let lead = if x.is_zero() { &y } else { &x };
    let inv = lead.leading_coeff().expect("nonzero kernel vector").inv(c);
    [x.scale(&inv, c), y.scale(&inv, c)]
}

/// Saturated line subbundles invariant under both `φ₁` and `φ₂`.
///
/// Candidates are the eigenlines of `φ_k⁰ ∓ a_k`, where `φ⁰` is the traceless part and
/// `a` the square root of its spectral datum; an irreducible datum has none.
pub fn invariant_line_subbundles(pair: &HiggsPair) -> Result<LineSubbundleReport> {
    pair.ensure_valid()?;
    let psi = [pair.traceless_part(0), pair.traceless_part(1)];
    if psi.iter().all(mat::is_zero) {
        return Ok(LineSubbundleReport::All);
    }
    let tw = pair.twist();
    let b = datum_of(&psi[0], &psi[1], tw.m1, tw.m2)?;
    let (a, radicand) = match is_reducible(&b) {
        Reducibility::No => return Ok(LineSubbundleReport::Lines(Vec::new())),
        Reducibility::Yes { a, radicand } => (a, radicand),
    };
    let c = radicand.clone().unwrap_or_else(Rational::one);
    let a = [a[0].value(), a[1].value()];
    let signs: &[bool] = if a.iter().all(QuadPoly::is_zero) { &[false] } else { &[false, true] };
    let half = Rational::new(1.into(), 2.into());

    let mut lines: Vec<InvariantLine> = Vec::new();
    for &negate in signs {
        let lambda: [QuadPoly; 2] = [0, 1].map(|k| if negate { a[k].neg() } else { a[k].clone() });
        let shifted: [QuadMatrix; 2] = [0, 1].map(|k| {
            let q = |i: usize, j: usize| {
                let p = QuadPoly::from(psi[k][i][j].clone());
                if i == j { p.sub(&lambda[k]) } else { p }
            };
            [[q(0, 0), q(0, 1)], [q(1, 0), q(1, 1)]]
        });
        let k0 = (0..2).find(|&k| !mat::is_zero(&psi[k])).expect("some φ_k is not scalar");
        let v = saturated_kernel(&shifted[k0], &c);
        if !shifted.iter().all(|m| quad_apply(m, &v, &c).iter().all(QuadPoly::is_zero)) {
            continue;
        }
        let degree = (0..2)
            .filter(|&i| !v[i].is_zero())
            .map(|i| pair.e[i] - v[i].degree().unwrap() as i64)
            .min()
            .expect("nonzero generator");
        let generator = [0, 1].map(|i| ExtSection::new(v[i].clone(), pair.e[i] - degree));
        let eigenvalues = [0, 1].map(|k| {
            let tr_half = mat::trace(&pair.phi_polys(k)).scale(&half);
            let value = lambda[k].add(&QuadPoly::from(tr_half));
            ExtSection::new(value, tw.degree(k) as i64)
        });
        let line = InvariantLine { degree, generator, eigenvalues, radicand: radicand.clone() };
        if !lines.iter().any(|l| l.generator == line.generator) {
            lines.push(line);
        }
    }
    Ok(LineSubbundleReport::Lines(lines))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::StrictlySemistable => "strictly_semistable",
            Stability::Unstable => "unstable",
        }
    }
}

/// Compares `2·deg L` with `e₁ + e₂` for the most destabilising invariant `L`.
pub fn stability_verdict(pair: &HiggsPair) -> Result<Stability> {
    let max = match invariant_line_subbundles(pair)? {
        LineSubbundleReport::All => Some(pair.e[0].max(pair.e[1])),
        LineSubbundleReport::Lines(l) => l.iter().map(|l| l.degree).max(),
    };
    let total = pair.e[0] + pair.e[1];
    Ok(match max {
        None => Stability::Stable,
        Some(d) if 2 * d < total => Stability::Stable,
        Some(d) if 2 * d == total => Stability::StrictlySemistable,
        Some(_) => Stability::Unstable,
    })
}

/// `dim_ℚ {ξ ∈ H⁰(End E) : [φ₁, ξ] = [φ₂, ξ] = 0}`.
pub fn endomorphism_algebra_dim(pair: &HiggsPair) -> Result<usize> {
    pair.ensure_valid()?;
    let phis = [pair.phi_polys(0), pair.phi_polys(1)];
    let width = ((pair.e[0] - pair.e[1]).unsigned_abs() as usize) + pair.twist.m1 as usize + 1;
    let mut rows = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let bound = pair.e[i] - pair.e[j];
            for t in 0..=bound.max(-1) {
                let mut xi = mat::zero();
                xi[i][j] = Poly::monomial(Rational::one(), t as usize);
                let mut row = Vec::with_capacity(8 * width);
                for phi in &phis {
                    for p in mat::commutator(phi, &xi).iter().flatten() {
                        row.extend((0..width).map(|d| p.coeff(d)));
                    }
                }
                rows.push(row);
            }
        }
    }
    let unknowns = rows.len();
    Ok(unknowns - rank(rows))
}

/// Riemann–Roch Euler characteristics of `End E ⊗ V`, `End E`, `End E ⊗ ∧²V` on a curve
/// of genus `g` (split bundles), and the defect `χ₁ − χ₂ − χ₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub chi_end_v: i64,
    pub chi_end: i64,
    pub chi_end_det_v: i64,
    pub defect: i64,
}

pub fn euler_identity_check(e1: i64, e2: i64, m1: i64, m2: i64, g: i64) -> EulerCheck {
    let chi = |d: i64| d + 1 - g;
    let e = [e1, e2];
    let ends = || (0..2).flat_map(move |i| (0..2).map(move |j| e[i] - e[j]));
    let chi_end_v = ends().flat_map(|d| [m1, m2].map(|m| chi(d + m))).sum();
    let chi_end = ends().map(chi).sum();
    let chi_end_det_v = ends().map(|d| chi(d + m1 + m2)).sum();
    EulerCheck { chi_end_v, chi_end, chi_end_det_v, defect: chi_end_v - chi_end - chi_end_det_v }
}
