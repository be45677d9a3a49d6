//! The fibrewise Hitchin equation `[φ₁, φ₁†] + [φ₂, φ₂†] = 0` on commuting pairs in
//! `sl(2,ℂ)`, solved numerically by descent along the complexified gauge orbit.
//!
//! A metric is written `H = g*g`. In the frame `ψ = gφg⁻¹` the moment map is the plain
//! `μ(ψ) = Σ [ψ_k, ψ_k*]`, and `moment(φ, H) = g⁻¹ μ(ψ) g`. The descent step
//! `g ← exp(−step · μ(ψ)/‖ψ‖²) · g` follows the gradient of `log ‖gφg⁻¹‖²`; the
//! normalisation makes the step scale invariant so a fixed step works for all pairs.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hitchin::{classify_point_pair, GaussianRational, Mat2, PointClass, PointPair};

pub type CMat = Mat2<Complex64>;

pub fn conj_transpose(a: &CMat) -> CMat {
    let [[p, q], [r, s]] = &a.0;
    Mat2::new(p.conj(), r.conj(), q.conj(), s.conj())
}

pub fn frobenius(a: &CMat) -> f64 {
    a.0.iter().flatten().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// Inverse of an invertible 2×2 matrix.
pub fn inverse(a: &CMat) -> CMat {
    let d = a.det();
    let [[p, q], [r, s]] = &a.0;
    Mat2::new(s / d, -q / d, -r / d, p / d)
}

/// `σ_max/σ_min`.
pub fn condition_number(a: &CMat) -> f64 {
    let f2 = frobenius(a).powi(2);
    let d = a.det().norm();
    if d == 0.0 {
        return f64::INFINITY;
    }
    // σ₁² + σ₂² = ‖a‖², σ₁σ₂ = |det a|.
    let disc = (f2 * f2 - 4.0 * d * d).max(0.0).sqrt();
    let smax2 = (f2 + disc) / 2.0;
    let smin2 = d * d / smax2;
    (smax2 / smin2).sqrt()
}

/// `exp(A)` for traceless `A`, using `A² = −det(A)·I`.
fn exp_traceless(a: &CMat) -> CMat {
    let s = (-a.det()).sqrt();
    let (c, sh) = if s.norm() < 1e-8 {
        let s2 = s * s;
        (Complex64::new(1.0, 0.0) + s2 / 2.0, Complex64::new(1.0, 0.0) + s2 / 6.0)
    } else {
        (s.cosh(), s.sinh() / s)
    };
    Mat2::scalar(c).add(&a.scale(&sh))
}

/// A Hermitian positive definite 2×2 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMetric(CMat);

impl HermitianMetric {
    pub fn new(h: CMat) -> Result<Self> {
        let scale = 1.0 + frobenius(&h);
        let herm = frobenius(&h.sub(&conj_transpose(&h))) <= 1e-12 * scale;
        let pd = h.0[0][0].re > 0.0 && h.det().re > 0.0;
        if herm && pd {
            Ok(HermitianMetric(h))
        } else {
            Err(Error::BadMetric)
        }
    }

    pub fn identity() -> Self {
        HermitianMetric(Mat2::identity())
    }

    /// `g*g` for invertible `g`.
    pub fn from_gauge(g: &CMat) -> Self {
        HermitianMetric(conj_transpose(g).mul(g))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }
}

/// `H⁻¹ φ* H`, the adjoint for `⟨v, w⟩_H = w* H v`.
pub fn adjoint_wrt(phi: &CMat, h: &HermitianMetric) -> CMat {
    inverse(&h.0).mul(&conj_transpose(phi)).mul(&h.0)
}

/// `[φ₁, φ₁†] + [φ₂, φ₂†]` with adjoints taken in `H`.
pub fn moment(pair: &PointPair<Complex64>, h: &HermitianMetric) -> CMat {
    let term = |phi: &CMat| phi.commutator(&adjoint_wrt(phi, h));
    term(&pair.phi1).add(&term(&pair.phi2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowConfig {
    pub step: f64,
    pub tol: f64,
    pub max_iters: usize,
    pub divergence_cond: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { step: 0.05, tol: 1e-10, max_iters: 10_000, divergence_cond: 1e8 }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x.is_finite() && x > 0.0;
        if !pos(self.step) || !pos(self.tol) || !pos(self.divergence_cond) || self.max_iters == 0 {
            return Err(Error::BadConfig("step, tol, max_iters and divergence_cond must be positive".into()));
        }
        if self.divergence_cond <= 1.0 {
            return Err(Error::BadConfig("divergence_cond must exceed 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowStatus {
    Converged,
    /// `cond(g)` reached `divergence_cond`: the orbit infimum is not attained.
    Diverged,
    /// Neither threshold met within `max_iters`; no verdict.
    MaxIters,
}

impl FlowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FlowStatus::Converged => "converged",
            FlowStatus::Diverged => "diverged",
            FlowStatus::MaxIters => "max_iters",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowResult {
    pub status: FlowStatus,
    /// The last metric `H = g*g`.
    pub h: HermitianMetric,
    /// `‖moment(φ, H)‖_F` at the last metric.
    pub residual: f64,
    pub iters: usize,
    /// `cond(g)` at the last metric.
    pub cond: f64,
}

/// A complex number as `{"re": f64, "im": f64}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<&Complex64> for ComplexJson {
    fn from(c: &Complex64) -> Self {
        ComplexJson { re: c.re, im: c.im }
    }
}

pub fn matrix_json(a: &CMat) -> [[ComplexJson; 2]; 2] {
    let [[p, q], [r, s]] = &a.0;
    [[p.into(), q.into()], [r.into(), s.into()]]
}

impl Serialize for FlowResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FlowResult", 5)?;
        st.serialize_field("status", self.status.as_str())?;
        st.serialize_field("H", &matrix_json(&self.h.0))?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field("iters", &self.iters)?;
        st.serialize_field("cond", &self.cond)?;
        st.end()
    }
}

fn check_pair(pair: &PointPair<Complex64>) -> Result<()> {
    let scale = frobenius(&pair.phi1).powi(2) + frobenius(&pair.phi2).powi(2);
    let eps = 1e-12 * scale.sqrt().max(f64::MIN_POSITIVE);
    if pair.phi1.trace().norm() > eps || pair.phi2.trace().norm() > eps {
        return Err(Error::NotTraceless);
    }
    if frobenius(&pair.phi1.commutator(&pair.phi2)) > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotCommuting);
    }
    Ok(())
}

/// Runs the descent, calling `observe(‖μ(ψ)‖_F)` once per visited metric.
pub fn solve_metric_observed(
    pair: &PointPair<Complex64>,
    cfg: &FlowConfig,
    mut observe: impl FnMut(f64),
) -> Result<FlowResult> {
    cfg.validate()?;
    check_pair(pair)?;
    let mut g: CMat = Mat2::identity();
    let mut iters = 0;
    loop {
        let g_inv = inverse(&g);
        let psi = [g.mul(&pair.phi1).mul(&g_inv), g.mul(&pair.phi2).mul(&g_inv)];
        let norm2: f64 = psi.iter().map(|p| frobenius(p).powi(2)).sum();
        let mu = psi.iter().fold(CMat::zero(), |acc, p| acc.add(&p.commutator(&conj_transpose(p))));
        let gauge_residual = frobenius(&mu);
        let residual = frobenius(&g_inv.mul(&mu).mul(&g));
        let cond = condition_number(&g);
        observe(gauge_residual);
        let result = |status| FlowResult { status, h: HermitianMetric::from_gauge(&g), residual, iters, cond };
        if norm2 == 0.0 || gauge_residual.max(residual) <= cfg.tol * norm2.min(1.0) {
            return Ok(result(FlowStatus::Converged));
        }
        if cond >= cfg.divergence_cond {
            return Ok(result(FlowStatus::Diverged));
        }
        if iters >= cfg.max_iters {
            return Ok(result(FlowStatus::MaxIters));
        }
        let half_tr = mu.trace() / 2.0;
        let a = mu.sub(&Mat2::scalar(half_tr)).scale(&Complex64::new(-cfg.step / norm2, 0.0));
        g = exp_traceless(&a).mul(&g);
        iters += 1;
    }
}

/// Searches for `H` with `moment(φ, H) = 0`.
pub fn solve_metric(pair: &PointPair<Complex64>, cfg: &FlowConfig) -> Result<FlowResult> {
    solve_metric_observed(pair, cfg, |_| {})
}

pub fn to_complex64(q: &GaussianRational) -> Complex64 {
    Complex64::new(q.re.to_f64().unwrap_or(f64::NAN), q.im.to_f64().unwrap_or(f64::NAN))
}

pub fn to_numeric(pair: &PointPair<GaussianRational>) -> PointPair<Complex64> {
    PointPair::new(pair.phi1.map(to_complex64), pair.phi2.map(to_complex64))
}

/// Whether the flow verdict agrees with the exact classification: polystable classes
/// converge, nonzero nilpotent pairs do not.
pub fn hk_cross_check(pair: &PointPair<GaussianRational>, cfg: &FlowConfig) -> Result<bool> {
    let class = classify_point_pair(pair)?;
    let flow = solve_metric(&to_numeric(pair), cfg)?;
    let converged = flow.status == FlowStatus::Converged;
    Ok(match class {
        PointClass::Zero | PointClass::PolystableDiagonalizable => converged,
        PointClass::NilpotentNonzero => !converged,
    })
}
