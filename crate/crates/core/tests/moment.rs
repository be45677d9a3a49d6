use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vhiggs::hitchin::{Mat2, PointPair};
use vhiggs::moment::{
    adjoint_wrt, conj_transpose, frobenius, hk_cross_check, inverse, moment, solve_metric, solve_metric_observed,
    to_numeric, CMat, FlowConfig, FlowStatus, HermitianMetric,
};
use vhiggs_testkit::{point_pair, PointKind};

fn cm<R: Rng>(rng: &mut R) -> CMat {
    let mut c = || Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    Mat2::new(c(), c(), c(), c())
}

fn invertible<R: Rng>(rng: &mut R) -> CMat {
    loop {
        let g = cm(rng);
        if g.det().norm() > 0.5 {
            return g;
        }
    }
}

fn unitary<R: Rng>(rng: &mut R) -> CMat {
    let mut angle = || rng.gen_range(0.0..std::f64::consts::TAU);
    let (a, b, t, p): (f64, f64, f64, f64) = (angle(), angle(), angle(), angle());
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let (c, s) = (Complex64::new(t.cos(), 0.0), Complex64::new(t.sin(), 0.0));
    Mat2::new(e(a) * c, -e(-b) * s, e(b) * s, e(-a) * c).scale(&e(p))
}

fn dist(a: &CMat, b: &CMat) -> f64 {
    frobenius(&a.sub(b))
}

fn conj(g: &CMat, p: &PointPair<Complex64>) -> PointPair<Complex64> {
    let gi = inverse(g);
    PointPair::new(g.mul(&p.phi1).mul(&gi), g.mul(&p.phi2).mul(&gi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moment_is_self_adjoint_and_traceless(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = PointPair::new(cm(&mut rng), cm(&mut rng));
        let g = invertible(&mut rng);
        let h = HermitianMetric::from_gauge(&g);
        let mu = moment(&pair, &h);
        let scale = 1.0 + frobenius(&mu);
        prop_assert!(mu.trace().norm() <= 1e-9 * scale);
        prop_assert!(dist(&adjoint_wrt(&mu, &h), &mu) <= 1e-9 * scale);
    }

    #[test]
    fn moment_is_gauge_equivariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = PointPair::new(cm(&mut rng), cm(&mut rng));
        let u = unitary(&mut rng);
        let id = HermitianMetric::identity();
        let lhs = moment(&conj(&u, &pair), &id);
        let rhs = u.mul(&moment(&pair, &id)).mul(&conj_transpose(&u));
        prop_assert!(dist(&lhs, &rhs) <= 1e-12 * (1.0 + frobenius(&rhs)));

        // Changing the metric is the same as moving the pair: H = g*g.
        let g = invertible(&mut rng);
        let h = HermitianMetric::from_gauge(&g);
        let lhs = moment(&pair, &h);
        let rhs = inverse(&g).mul(&moment(&conj(&g, &pair), &id)).mul(&g);
        prop_assert!(dist(&lhs, &rhs) <= 1e-9 * (1.0 + frobenius(&rhs)));
    }

    #[test]
    fn descent_decreases_the_moment(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = to_numeric(&point_pair(&mut rng, PointKind::Polystable));
        let mut seen = Vec::new();
        let res = solve_metric_observed(&pair, &FlowConfig::default(), |r| seen.push(r)).unwrap();
        prop_assert_eq!(res.status, FlowStatus::Converged);
        prop_assert!(res.residual <= 1e-10);
        prop_assert!(seen.windows(2).all(|w| w[1] < w[0]), "not monotone: {:?}", seen);
    }

    #[test]
    fn flow_agrees_with_exact_classification(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = [PointKind::Polystable, PointKind::Nilpotent, PointKind::Zero][(seed % 3) as usize];
        let pair = point_pair(&mut rng, kind);
        prop_assert!(hk_cross_check(&pair, &FlowConfig::default()).unwrap());
    }

    #[test]
    fn verdict_is_scale_invariant(seed in any::<u64>(), c in 0.2f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = if seed % 2 == 0 { PointKind::Polystable } else { PointKind::Nilpotent };
        let pair = to_numeric(&point_pair(&mut rng, kind));
        let c = Complex64::new(c, 0.0);
        let scaled = PointPair::new(pair.phi1.scale(&c), pair.phi2.scale(&c));
        let cfg = FlowConfig::default();
        let a = solve_metric(&pair, &cfg).unwrap();
        let b = solve_metric(&scaled, &cfg).unwrap();
        prop_assert_eq!(a.status, b.status);
        if a.status == FlowStatus::Converged {
            // The normalised step is scale free, so both runs follow the same path.
            let n = |h: &HermitianMetric| {
                let m = h.matrix();
                m.scale(&Complex64::new(1.0 / frobenius(m), 0.0))
            };
            prop_assert!(dist(&n(&a.h), &n(&b.h)) <= 1e-4);
        }
    }
}

#[test]
fn zero_pair_converges_at_once() {
    let z = PointPair::new(CMat::zero(), CMat::zero());
    let r = solve_metric(&z, &FlowConfig::default()).unwrap();
    assert_eq!((r.status, r.iters), (FlowStatus::Converged, 0));
}

#[test]
fn nilpotent_pair_runs_away() {
    let one = Complex64::new(1.0, 0.0);
    let n = Mat2::new(Complex64::default(), one, Complex64::default(), Complex64::default());
    let r = solve_metric(&PointPair::new(n.clone(), n.scale(&Complex64::new(2.0, 0.0))), &FlowConfig::default()).unwrap();
    assert_eq!(r.status, FlowStatus::Diverged);
    assert!(r.cond >= 1e8);
}
