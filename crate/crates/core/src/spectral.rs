//! The spectral curve `Y_b ⊂ Tot(V)` cut out by `X² = b₁`, `Y² = b₂`, `XY = b₃`, and its
//! local structure at the zeros of `b`.
//!
//! Zeros are irreducible factors over ℚ. Chart 0 (coordinate `z`) lists every finite
//! zero; chart 1 (coordinate `w = 1/z`) lists only `w`, the point at infinity, so that
//! no point is counted twice. Local computations accept any common factor on either chart.

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::Serialize;

use crate::algebra::{
    exact_sqrt, format_rational, rank_over_residue_field, snf_over_dvr, squarefree_decomposition, ExtSection, Poly,
    QuadPoly, Rational, Valuation,
};
use crate::error::{Error, Result};
use crate::hitchin::{base_membership, SpectralDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    /// Coordinate `z`.
    Finite,
    /// Coordinate `w = 1/z`.
    Infinity,
}

impl Chart {
    pub fn var(self) -> &'static str {
        match self {
            Chart::Finite => "z",
            Chart::Infinity => "w",
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Chart::Finite => 0,
            Chart::Infinity => 1,
        }
    }
}

impl Serialize for Chart {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

/// The chart-local polynomials `(b₁, b₂, b₃)`.
fn chart_polys(b: &SpectralDatum, chart: Chart) -> [Poly; 3] {
    let b = match chart {
        Chart::Finite => b.clone(),
        Chart::Infinity => b.chart_swap(),
    };
    [b.b1.poly().clone(), b.b2.poly().clone(), b.b3.poly().clone()]
}

/// A common zero of `b`: a monic irreducible factor on one chart with the vanishing
/// orders `(n₁, n₂, n₃)` of `b₁, b₂, b₃` along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPoint {
    pub chart: Chart,
    pub factor: Poly,
    pub orders: [Valuation; 3],
}

impl Serialize for ZeroPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ZeroOut { chart: self.chart, factor: self.label(), orders: self.orders }.serialize(s)
    }
}

impl ZeroPoint {
    pub fn label(&self) -> String {
        self.factor.display_in(self.chart.var())
    }

    /// `min(n₁, n₂, n₃)`; always finite because `b ≠ 0`.
    pub fn min_order(&self) -> u32 {
        self.orders.iter().filter_map(|v| v.finite()).min().expect("b is not identically zero")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZeroLocus {
    pub chart0: Vec<ZeroPoint>,
    pub chart1: Vec<ZeroPoint>,
}

impl ZeroLocus {
    pub fn is_empty(&self) -> bool {
        self.chart0.is_empty() && self.chart1.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ZeroPoint> {
        self.chart0.iter().chain(&self.chart1)
    }
}

impl Serialize for ZeroLocus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.chart0.len() + self.chart1.len()))?;
        for z in self.iter() {
            seq.serialize_element(z)?;
        }
        seq.end()
    }
}

#[derive(Serialize)]
struct ZeroOut {
    chart: Chart,
    factor: String,
    orders: [Valuation; 3],
}

fn ensure_nonzero(b: &SpectralDatum) -> Result<()> {
    if b.is_zero() {
        Err(Error::ZeroDatum)
    } else {
        Ok(())
    }
}

fn ensure_on_cone(b: &SpectralDatum) -> Result<()> {
    if base_membership(b) {
        Ok(())
    } else {
        Err(Error::ConeViolated)
    }
}

fn orders_along(polys: &[Poly; 3], factor: &Poly) -> [Valuation; 3] {
    [0, 1, 2].map(|i| Valuation::of(&polys[i], factor))
}

fn check_cone_orders(o: &[Valuation; 3]) {
    let twice = |v: Valuation| v.finite().map(|n| 2 * n as u64);
    let sum = match (o[0].finite(), o[1].finite()) {
        (Some(a), Some(b)) => Some(a as u64 + b as u64),
        _ => None,
    };
    assert_eq!(twice(o[2]), sum, "cone relation forces 2·n3 = n1 + n2");
}

/// Common zeros of `b₁, b₂, b₃` with their orders.
pub fn zero_locus(b: &SpectralDatum) -> Result<ZeroLocus> {
    ensure_nonzero(b)?;
    ensure_on_cone(b)?;
    let polys = chart_polys(b, Chart::Finite);
    let g = polys[0].gcd(&polys[1]).gcd(&polys[2]);
    let mut out = ZeroLocus::default();
    for (factor, _) in squarefree_decomposition(&g)?.factors {
        let orders = orders_along(&polys, &factor);
        check_cone_orders(&orders);
        out.chart0.push(ZeroPoint { chart: Chart::Finite, factor, orders });
    }
    let at_inf = [&b.b1, &b.b2, &b.b3].map(|s| s.order_at_infinity().map_or(Valuation::Infinite, Valuation::Finite));
    if at_inf.iter().all(|v| *v >= Valuation::Finite(1)) {
        check_cone_orders(&at_inf);
        out.chart1.push(ZeroPoint { chart: Chart::Infinity, factor: Poly::z(), orders: at_inf });
    }
    Ok(out)
}

/// `b = a²` for `a = (a₁, a₂) ∈ H⁰(V)` with coefficients in ℚ or in ℚ(√c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reducibility {
    Yes { a: [ExtSection; 2], radicand: Option<Rational> },
    No,
}

impl Reducibility {
    pub fn is_reducible(&self) -> bool {
        matches!(self, Reducibility::Yes { .. })
    }
}

impl Serialize for Reducibility {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            Reducibility::No => m.serialize_entry("verdict", "no")?,
            Reducibility::Yes { a, radicand } => {
                m.serialize_entry("verdict", "yes")?;
                m.serialize_entry("a", a)?;
                if let Some(c) = radicand {
                    m.serialize_entry("radicand", &format_rational(c))?;
                }
            }
        }
        m.end()
    }
}

/// Square root of one nonzero component: `(a, radicand)` with `a² = p`.
fn component_root(p: &Poly) -> Option<(QuadPoly, Option<Rational>)> {
    let r = exact_sqrt(p)?;
    Some(match r.rational_root() {
        Some(a) => (QuadPoly::rational(a), None),
        None => (QuadPoly::new(Poly::zero(), r.root), Some(r.constant)),
    })
}

/// `q` with `a·q = p`, where `a = re + √c·im` is purely rational or purely irrational.
fn divide_by(p: &Poly, a: &QuadPoly, c: &Rational) -> Option<QuadPoly> {
    if a.is_rational() {
        return p.exact_div(&a.re).map(QuadPoly::rational);
    }
    debug_assert!(a.re.is_zero());
    // p / (√c·r) = √c · p / (c·r)
    let q = p.exact_div(&a.im)?.scale(&c.recip());
    Some(QuadPoly::new(Poly::zero(), q))
}

/// Decides whether `b = a²`. The sign is fixed by making the leading coefficient of the
/// first nonzero component positive (or a positive multiple of `√c`).
pub fn is_reducible(b: &SpectralDatum) -> Reducibility {
    let (m1, m2) = b.twist_degrees();
    let [b1, b2, b3] = [b.b1.poly(), b.b2.poly(), b.b3.poly()];
    let (a1, a2, radicand) = if !b1.is_zero() {
        let Some((a1, c)) = component_root(b1) else { return Reducibility::No };
        let cc = c.clone().unwrap_or_else(Rational::one);
        let Some(a2) = divide_by(b3, &a1, &cc) else { return Reducibility::No };
        (a1, a2, c)
    } else if !b2.is_zero() {
        let Some((a2, c)) = component_root(b2) else { return Reducibility::No };
        (QuadPoly::zero(), a2, c)
    } else {
        (QuadPoly::zero(), QuadPoly::zero(), None)
    };
    let c = radicand.clone().unwrap_or_else(Rational::one);
    let ok = a1.mul(&a1, &c) == QuadPoly::rational(b1.clone())
        && a2.mul(&a2, &c) == QuadPoly::rational(b2.clone())
        && a1.mul(&a2, &c) == QuadPoly::rational(b3.clone());
    if !ok {
        return Reducibility::No;
    }
    Reducibility::Yes {
        a: [ExtSection::new(a1, m1 as i64), ExtSection::new(a2, m2 as i64)],
        radicand,
    }
}

/// Some common zero with `min(n₁, n₂, n₃) ≥ 2`.
pub fn has_multiple_zero(b: &SpectralDatum) -> Result<bool> {
    Ok(zero_locus(b)?.iter().any(|z| z.min_order() >= 2))
}

/// `b` vanishes nowhere on ℙ¹.
pub fn is_etale(b: &SpectralDatum) -> Result<bool> {
    Ok(zero_locus(b)?.is_empty())
}

/// Genus of a connected étale double cover of a genus-`g` curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaleGenus {
    Genus(u64),
    /// `g = 0`: Riemann–Hurwitz would give `−1`, and ℙ¹ has no connected étale double cover.
    NoConnectedCover,
}

pub fn etale_genus(g: u64) -> EtaleGenus {
    if g == 0 {
        EtaleGenus::NoConnectedCover
    } else {
        EtaleGenus::Genus(2 * g - 1)
    }
}

fn local_setup(b: &SpectralDatum, chart: Chart, factor: &Poly) -> Result<[Poly; 3]> {
    ensure_nonzero(b)?;
    ensure_on_cone(b)?;
    if !factor.is_monic() || !crate::algebra::is_irreducible(factor) {
        return Err(Error::NotIrreducible(factor.display_in(chart.var())));
    }
    let polys = chart_polys(b, chart);
    if !polys.iter().all(|p| factor.divides(p)) {
        return Err(Error::NotInZeroLocus(factor.display_in(chart.var())));
    }
    Ok(polys)
}

/// Presentation of `O[X,Y]/(X² − b₁, Y² − b₂, XY − b₃)` on the generators `1, X, Y`:
/// the relations `b₃X − b₁Y` and `b₂X − b₃Y`, one per column.
pub fn presentation(polys: &[Poly; 3]) -> Vec<Vec<Poly>> {
    let [b1, b2, b3] = polys;
    vec![
        vec![Poly::zero(), Poly::zero()],
        vec![b3.clone(), b2.clone()],
        vec![-b1, -b3],
    ]
}

/// Length of the torsion submodule of the local algebra `𝓕_x` at `factor`, from the
/// Smith normal form of its presentation over the local ring.
pub fn local_torsion_length(b: &SpectralDatum, chart: Chart, factor: &Poly) -> Result<u32> {
    let polys = local_setup(b, chart, factor)?;
    let invariants = snf_over_dvr(&presentation(&polys), factor)?;
    Ok(invariants.iter().filter_map(|v| v.finite()).sum())
}

/// `cx·X² + cy·Y² + cxy·XY + x·X + y·Y + c` with coefficients in ℚ[z].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LocalGenerator {
    pub xx: Poly,
    pub yy: Poly,
    pub xy: Poly,
    pub x: Poly,
    pub y: Poly,
    pub constant: Poly,
}

impl LocalGenerator {
    pub fn display_in(&self, var: &str) -> String {
        let terms = [
            (&self.xx, "X^2"),
            (&self.yy, "Y^2"),
            (&self.xy, "XY"),
            (&self.x, "X"),
            (&self.y, "Y"),
            (&self.constant, ""),
        ];
        let mut out = String::new();
        for (coeff, mono) in terms {
            if coeff.is_zero() {
                continue;
            }
            let (neg, c) = match coeff.leading_coeff() {
                Some(l) if *l < Rational::zero() && coeff.coeffs().iter().filter(|x| !x.is_zero()).count() == 1 => {
                    (true, -coeff)
                }
                _ => (false, coeff.clone()),
            };
            let body = match (c.is_one(), mono.is_empty()) {
                (true, false) => mono.to_string(),
                (_, true) => {
                    let s = c.display_in(var);
                    if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 && !out.is_empty() {
                        format!("({s})")
                    } else {
                        s
                    }
                }
                (false, false) => {
                    let s = c.display_in(var);
                    if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                        format!("({s}){mono}")
                    } else {
                        format!("{s}{mono}")
                    }
                }
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push_str(&format!("-{body}")),
                (true, false) => out.push_str(&body),
                (false, true) => out.push_str(&format!(" - {body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Gradient in `(X, Y, z)` at `X = Y = 0`.
    fn gradient_at_origin(&self) -> Vec<Poly> {
        vec![self.x.clone(), self.y.clone(), self.constant.derivative()]
    }
}

/// The four local generators of the flat spectral curve near a zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEquations {
    pub chart: Chart,
    pub factor: Poly,
    /// Whether `b₁ ↔ b₂` (and `X ↔ Y`) was needed to get `n₁ ≥ n₂`.
    pub swapped: bool,
    /// `n = ord b₁`, `m = ord b₃` after the swap.
    pub n: Valuation,
    pub m: Valuation,
    /// `g₁ = b₁/π^n`, `g₃ = b₃/π^m` reduced mod `π^K`.
    pub g1: Poly,
    pub g3: Poly,
    pub truncation: u32,
    pub generators: [LocalGenerator; 4],
}

impl LocalEquations {
    pub fn display(&self) -> [String; 4] {
        let v = self.chart.var();
        [0, 1, 2, 3].map(|i| self.generators[i].display_in(v))
    }
}

/// `X² − b₁`, `Y² − b₂`, `XY − b₃` and `g₃X − π^{n−m}g₁Y` (in the original coordinates).
/// `truncation` is the power `K` of the factor used to reduce `g₁, g₃`; `None` means `n + 1`.
pub fn local_equations(b: &SpectralDatum, chart: Chart, factor: &Poly, truncation: Option<u32>) -> Result<LocalEquations> {
    let polys = local_setup(b, chart, factor)?;
    let orders = orders_along(&polys, factor);
    let swapped = orders[0] < orders[1];
    let (n, m) = (orders[if swapped { 1 } else { 0 }], orders[2]);
    let first = &polys[if swapped { 1 } else { 0 }];

    let quad = |xx: bool, yy: bool, xy: bool, c: &Poly| LocalGenerator {
        xx: if xx { Poly::one() } else { Poly::zero() },
        yy: if yy { Poly::one() } else { Poly::zero() },
        xy: if xy { Poly::one() } else { Poly::zero() },
        constant: -c,
        ..Default::default()
    };
    let g0 = quad(true, false, false, &polys[0]);
    let g1_ = quad(false, true, false, &polys[1]);
    let g2 = quad(false, false, true, &polys[2]);

    let (g1, g3, k, coeff_first, coeff_second) = match (n.finite(), m.finite()) {
        (Some(n), Some(m)) => {
            let k = truncation.unwrap_or(n + 1).max(1);
            let modulus = factor.pow(k);
            let unit = |p: &Poly, e: u32| p.exact_div(&factor.pow(e)).expect("order divides").rem(&modulus);
            let (g1, g3) = (unit(first, n), unit(&polys[2], m));
            let second = -&(&factor.pow(n - m) * &g1);
            (g1, g3.clone(), k, g3, second)
        }
        // b₁ = b₃ = 0 after the swap: the extra generator is the swapped-in X.
        _ => {
            let k = truncation.unwrap_or(1).max(1);
            (Poly::zero(), Poly::zero(), k, Poly::one(), Poly::zero())
        }
    };
    let fourth = if swapped {
        LocalGenerator { x: coeff_second, y: coeff_first, ..Default::default() }
    } else {
        LocalGenerator { x: coeff_first, y: coeff_second, ..Default::default() }
    };
    Ok(LocalEquations {
        chart,
        factor: factor.clone(),
        swapped,
        n,
        m,
        g1,
        g3,
        truncation: k,
        generators: [g0, g1_, g2, fourth],
    })
}

/// Rank over `ℚ[z]/(π)` of the Jacobian of the local generators with respect to
/// `(X, Y, z)` at the point `X = Y = 0` above the zero.
pub fn jacobian_rank(b: &SpectralDatum, chart: Chart, factor: &Poly) -> Result<usize> {
    let eq = local_equations(b, chart, factor, None)?;
    let rows: Vec<Vec<Poly>> = eq.generators.iter().map(LocalGenerator::gradient_at_origin).collect();
    Ok(rank_over_residue_field(&rows, factor))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Singular,
    /// Only decided for irreducible curves.
    NotApplicable,
}

impl Serialize for Smoothness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Smoothness::Smooth => "true",
            Smoothness::Singular => "false",
            Smoothness::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionEntry {
    pub zero: ZeroPoint,
    pub length: u32,
}

impl Serialize for TorsionEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.zero.label(), self.length).serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralCurveReport {
    pub zeros: ZeroLocus,
    pub reducible: Reducibility,
    pub etale: bool,
    pub multiple_zero: bool,
    pub smooth: Smoothness,
    pub torsion: Vec<TorsionEntry>,
    /// Genus of the cover in the étale irreducible case over a base of genus ≥ 1.
    pub genus: Option<u64>,
}

/// Every verdict for `b` on a base curve of genus `g` (the geometry is that of ℙ¹; `g`
/// only feeds the étale genus formula).
pub fn spectral_report(b: &SpectralDatum, g: u64) -> Result<SpectralCurveReport> {
    let zeros = zero_locus(b)?;
    let reducible = is_reducible(b);
    let etale = zeros.is_empty();
    let multiple_zero = zeros.iter().any(|z| z.min_order() >= 2);
    let smooth = match (reducible.is_reducible(), multiple_zero) {
        (true, _) => Smoothness::NotApplicable,
        (false, false) => Smoothness::Smooth,
        (false, true) => Smoothness::Singular,
    };
    let torsion = zeros
        .iter()
        .map(|z| Ok(TorsionEntry { zero: z.clone(), length: local_torsion_length(b, z.chart, &z.factor)? }))
        .collect::<Result<Vec<_>>>()?;
    let genus = match (etale && !reducible.is_reducible(), etale_genus(g)) {
        (true, EtaleGenus::Genus(h)) => Some(h),
        _ => None,
    };
    Ok(SpectralCurveReport { zeros, reducible, etale, multiple_zero, smooth, torsion, genus })
}

impl fmt::Display for ZeroPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn datum(b1: &[i64], b2: &[i64], b3: &[i64], m1: u32, m2: u32) -> SpectralDatum {
        SpectralDatum::from_polys(p(b1), p(b2), p(b3), m1, m2).unwrap()
    }

    fn zzz() -> SpectralDatum {
        datum(&[0, 1], &[0, 1], &[0, 1], 1, 1)
    }

    #[test]
    fn zero_locus_examples() {
        let zl = zero_locus(&zzz()).unwrap();
        assert_eq!(zl.chart0.len(), 1);
        assert_eq!(zl.chart0[0].factor, Poly::z());
        assert_eq!(zl.chart0[0].orders, [Valuation::Finite(1); 3]);
        assert_eq!(zl.chart1.len(), 1);
        assert_eq!(zl.chart1[0].orders, [Valuation::Finite(1); 3]);
        assert!(zero_locus(&datum(&[1], &[1], &[1], 0, 0)).unwrap().is_empty());
        assert!(zero_locus(&datum(&[0, 0, 1], &[1], &[0, 1], 1, 1)).unwrap().is_empty());
        assert_eq!(zero_locus(&datum(&[], &[], &[], 1, 1)), Err(Error::ZeroDatum));
        assert_eq!(zero_locus(&datum(&[1], &[1], &[], 1, 1)), Err(Error::ConeViolated));
    }

    #[test]
    fn reducibility_examples() {
        match is_reducible(&datum(&[0, 0, 1], &[1], &[0, 1], 1, 1)) {
            Reducibility::Yes { a, radicand: None } => {
                assert_eq!(a[0].re, p(&[0, 1]));
                assert_eq!(a[1].re, p(&[1]));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(is_reducible(&zzz()), Reducibility::No);
        assert!(is_reducible(&datum(&[], &[], &[], 1, 1)).is_reducible());
        // b = 2·(z², 1, z): a = √2·(z, 1).
        match is_reducible(&datum(&[0, 0, 2], &[2], &[0, 2], 1, 1)) {
            Reducibility::Yes { a, radicand: Some(c) } => {
                assert_eq!(c, Rational::from_integer(2.into()));
                assert_eq!(a[0].im, p(&[0, 1]));
                assert_eq!(a[1].im, p(&[1]));
            }
            other => panic!("{other:?}"),
        }
        // b3 of the wrong sign relative to a is still a square: a = (z, -1).
        match is_reducible(&datum(&[0, 0, 1], &[1], &[0, -1], 1, 1)) {
            Reducibility::Yes { a, .. } => assert_eq!(a[1].re, p(&[-1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn multiple_zero_and_etale() {
        assert!(has_multiple_zero(&datum(&[0, 0, 1], &[0, 0, 1], &[0, 0, 1], 1, 1)).unwrap());
        assert!(!has_multiple_zero(&zzz()).unwrap());
        assert!(!has_multiple_zero(&datum(&[1], &[1], &[1], 0, 0)).unwrap());
        assert!(is_etale(&datum(&[1], &[1], &[1], 0, 0)).unwrap());
        assert!(!is_etale(&zzz()).unwrap());
        assert!(is_etale(&datum(&[0, 0, 1], &[1], &[0, 1], 1, 1)).unwrap());
    }

    #[test]
    fn etale_genus_examples() {
        assert_eq!(etale_genus(1), EtaleGenus::Genus(1));
        assert_eq!(etale_genus(2), EtaleGenus::Genus(3));
        assert_eq!(etale_genus(0), EtaleGenus::NoConnectedCover);
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(local_torsion_length(&zzz(), Chart::Finite, &Poly::z()), Ok(1));
        assert_eq!(local_torsion_length(&zzz(), Chart::Infinity, &Poly::z()), Ok(1));
        let b = datum(&[0, 0, 0, 1], &[0, 1], &[0, 0, 1], 2, 1);
        assert_eq!(local_torsion_length(&b, Chart::Finite, &Poly::z()), Ok(1));
        let nowhere = datum(&[1], &[1], &[1], 0, 0);
        assert!(matches!(
            local_torsion_length(&nowhere, Chart::Finite, &Poly::z()),
            Err(Error::NotInZeroLocus(_))
        ));
    }

    #[test]
    fn local_equation_examples() {
        let eq = local_equations(&zzz(), Chart::Finite, &Poly::z(), None).unwrap();
        assert_eq!(eq.display(), ["X^2 - z", "Y^2 - z", "XY - z", "X - Y"].map(String::from));
        let b = datum(&[0, 0, 0, 1], &[0, 1], &[0, 0, 1], 2, 1);
        let eq = local_equations(&b, Chart::Finite, &Poly::z(), None).unwrap();
        assert_eq!(eq.display(), ["X^2 - z^3", "Y^2 - z", "XY - z^2", "X - zY"].map(String::from));
        assert_eq!((eq.n, eq.m, eq.truncation), (Valuation::Finite(3), Valuation::Finite(2), 4));
        // Swapped: n₁ < n₂.
        let b = datum(&[0, 1], &[0, 0, 0, 1], &[0, 0, 1], 2, 2);
        let eq = local_equations(&b, Chart::Finite, &Poly::z(), None).unwrap();
        assert!(eq.swapped);
        assert_eq!(eq.display()[3], "-zX + Y");
        assert!(local_equations(&datum(&[1], &[1], &[1], 0, 0), Chart::Finite, &Poly::z(), None).is_err());
    }

    #[test]
    fn jacobian_matches_multiple_zero() {
        assert_eq!(jacobian_rank(&zzz(), Chart::Finite, &Poly::z()), Ok(2));
        let b = datum(&[0, 0, 0, 1], &[0, 1], &[0, 0, 1], 2, 1);
        assert_eq!(jacobian_rank(&b, Chart::Finite, &Poly::z()), Ok(2));
        let sq = datum(&[0, 0, 1], &[0, 0, 1], &[0, 0, 1], 1, 1);
        assert_eq!(jacobian_rank(&sq, Chart::Finite, &Poly::z()), Ok(1));
    }

    #[test]
    fn report_examples() {
        let r = spectral_report(&zzz(), 0).unwrap();
        assert!(!r.reducible.is_reducible());
        assert!(!r.etale && !r.multiple_zero);
        assert_eq!(r.smooth, Smoothness::Smooth);
        let t: Vec<_> = r.torsion.iter().map(|t| (t.zero.label(), t.length)).collect();
        assert_eq!(t, vec![("z".to_string(), 1), ("w".to_string(), 1)]);

        let r = spectral_report(&datum(&[1], &[1], &[1], 0, 0), 0).unwrap();
        assert!(r.reducible.is_reducible() && r.etale);
        assert_eq!(r.smooth, Smoothness::NotApplicable);

        let r = spectral_report(&datum(&[0, 0, 1], &[0, 0, 1], &[0, 0, 1], 1, 1), 0).unwrap();
        assert!(r.reducible.is_reducible() && r.multiple_zero);
        assert_eq!(r.smooth, Smoothness::NotApplicable);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["smooth"], "n/a");
        assert_eq!(json["reducible"]["verdict"], "yes");
    }
}
