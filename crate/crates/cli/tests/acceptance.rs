//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Corpora are generated from fixed seeds, so every run checks the same inputs.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vhiggs::algebra::{Poly, Rational};
use vhiggs::higgs::{
    endomorphism_algebra_dim, euler_identity_check, stability_verdict, HiggsPair, PolyMatrix, Stability, TwistBundle,
};
use vhiggs::hitchin::{
    base_membership, cayley_hamilton_check, hitchin_map, point_spectral_data, universal_fiber_dim, ConePoint,
    GaussianRational, SpectralDatum,
};
use vhiggs::moment::{hk_cross_check, solve_metric, to_numeric, FlowConfig, FlowStatus};
use vhiggs::spectral::{etale_genus, is_reducible, jacobian_rank, local_torsion_length, zero_locus, Chart, EtaleGenus};
use vhiggs_testkit::{commuting_pair, companion_pair, cone_point, gauss, point_pair, rat, PairOptions, PointKind};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

/// Traceless commuting pairs with entry degrees ≤ 3 and coefficient height ≤ 10.
fn pair_corpus(n: usize) -> Vec<HiggsPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let opts = PairOptions { with_trace: false, e_range: 1, max_m: 2, height: 3 };
    let (lo, hi) = (rat(-10), rat(10));
    let small = |p: &Poly| p.degree().is_none_or(|d| d <= 3) && p.coeffs().iter().all(|c| *c >= lo && *c <= hi);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let pair = commuting_pair(&mut rng, opts);
        if (0..2).all(|k| pair.phi_polys(k).iter().flatten().all(small)) {
            out.push(pair);
        }
    }
    out
}

fn criterion_1(corpus: &[HiggsPair]) -> Verdict {
    let failures = corpus
        .iter()
        .filter(|p| !p.is_valid() || !p.is_traceless() || !hitchin_map(p).is_ok_and(|b| base_membership(&b)))
        .count();
    verdict(failures == 0, format!("{} pairs, {failures} off the cone", corpus.len()))
}

fn criterion_2(corpus: &[HiggsPair]) -> Verdict {
    let failures = corpus
        .iter()
        .filter(|p| !hitchin_map(p).is_ok_and(|b| cayley_hamilton_check(p, &b)))
        .count();
    verdict(failures == 0, format!("{} pairs, {failures} failures", corpus.len()))
}

fn oracle_fiber_dim(c: &ConePoint<GaussianRational>) -> usize {
    vhiggs_oracle::fiber_dim(&c.x.re, &c.y.re, &c.z.re, 4)
}

fn criterion_3() -> Verdict {
    let origin = ConePoint { x: gauss(0, 0), y: gauss(0, 0), z: gauss(0, 0) };
    let at_origin = (universal_fiber_dim(&origin).ok(), oracle_fiber_dim(&origin));
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1be);
    let mut bad = 0;
    for i in 0..50 {
        // Half from random cone points, half as images of polystable point pairs.
        let c = if i % 2 == 0 {
            cone_point(&mut rng)
        } else {
            point_spectral_data(&point_pair(&mut rng, PointKind::Polystable))
        };
        let ok = c.x.im == rat(0) && c.y.im == rat(0) && c.z.im == rat(0);
        if !ok || universal_fiber_dim(&c).ok() != Some(2) || oracle_fiber_dim(&c) != 2 {
            bad += 1;
        }
    }
    let pass = at_origin == (Some(3), 3) && bad == 0;
    verdict(pass, format!("origin {:?}/oracle {}, 50 nonzero points, {bad} mismatches", at_origin.0, at_origin.1))
}

/// `b = s·(t², u², tu)` with `s = π^a·σ`, `t = π^p·τ`, `u = π^q·υ` for units σ, τ, υ at π,
/// over every `(a, p, q)` with orders at most 4 and a common zero.
fn torsion_corpus() -> Vec<SpectralDatum> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7045);
    let mut shapes = Vec::new();
    for a in 0..=4u32 {
        for p in 0..=2u32 {
            for q in 0..=p {
                if a + 2 * p <= 4 && a + 2 * q >= 1 {
                    shapes.push((a, p, q));
                }
            }
        }
    }
    let primes = [Poly::from_i64s(&[0, 1]), Poly::from_i64s(&[-2, 1]), Poly::from_i64s(&[1, 0, 1])];
    let mut out = vec![SpectralDatum::from_polys(Poly::z(), Poly::z(), Poly::z(), 1, 1).unwrap()];
    for (k, pi) in primes.iter().enumerate() {
        for &(a, p, q) in &shapes {
            if k == 2 && a + 2 * p > 2 {
                continue;
            }
            let unit = |rng: &mut ChaCha8Rng| {
                if k == 0 {
                    return Poly::one();
                }
                loop {
                    let u = Poly::from_i64s(&[rng.gen_range(-4..=4), rng.gen_range(-2..=2)]);
                    if !u.is_zero() && u.valuation(pi) == Some(0) {
                        return u;
                    }
                }
            };
            let s = &pi.pow(a) * &unit(&mut rng);
            let t = &pi.pow(p) * &unit(&mut rng);
            let u = &pi.pow(q) * &unit(&mut rng);
            let b = [&s * &(&t * &t), &s * &(&u * &u), &s * &(&t * &u)];
            let half = |p: &Poly| p.degree().map_or(0, |d| d.div_ceil(2)) as u32;
            let m = half(&b[0]).max(half(&b[1])).max(1);
            let [b1, b2, b3] = b;
            out.push(SpectralDatum::from_polys(b1, b2, b3, m, m).unwrap());
        }
    }
    out
}

fn chart_coeffs(b: &SpectralDatum, chart: Chart) -> [Vec<Rational>; 3] {
    let b = if chart == Chart::Finite { b.clone() } else { b.chart_swap() };
    [b.b1.poly().coeffs().to_vec(), b.b2.poly().coeffs().to_vec(), b.b3.poly().coeffs().to_vec()]
}

fn criterion_4(corpus: &[SpectralDatum]) -> (Verdict, String) {
    let (mut zeros, mut mismatches, mut conj_holds) = (0, 0, 0);
    let mut zzz = None;
    for (i, b) in corpus.iter().enumerate() {
        for z in zero_locus(b).unwrap().iter() {
            zeros += 1;
            let ours = local_torsion_length(b, z.chart, &z.factor).unwrap();
            let [c1, c2, c3] = chart_coeffs(b, z.chart);
            let n = z.min_order() as usize + 2;
            let theirs = vhiggs_oracle::spectral_torsion_length([&c1, &c2, &c3], z.factor.coeffs(), n, 4);
            if ours != theirs {
                mismatches += 1;
            }
            if z.orders[2].finite() == Some(ours) {
                conj_holds += 1;
            }
            if i == 0 && z.chart == Chart::Finite {
                zzz = Some(ours);
            }
        }
    }
    let pass = corpus.len() >= 20 && mismatches == 0 && zzz == Some(1);
    let v = verdict(
        pass,
        format!("{} data, {zeros} zeros, {mismatches} mismatches, (z,z,z) -> {zzz:?}", corpus.len()),
    );
    let note = format!("length = ord(b3) holds at {conj_holds}/{zeros} zeros; the exact length is min(n1, n2, n3)");
    (v, note)
}

fn criterion_5(corpus: &[SpectralDatum]) -> Verdict {
    let (mut zeros, mut disagree) = (0, 0);
    for b in corpus {
        for z in zero_locus(b).unwrap().iter() {
            zeros += 1;
            let rank = jacobian_rank(b, z.chart, &z.factor).unwrap();
            if (rank >= 2) == (z.min_order() >= 2) {
                disagree += 1;
            }
        }
    }
    verdict(disagree == 0, format!("{zeros} zeros, {disagree} disagreements"))
}

fn criterion_6(corpus: &[HiggsPair]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57ab);
    let mut irreducible: Vec<HiggsPair> = corpus
        .iter()
        .filter(|p| hitchin_map(p).is_ok_and(|b| !b.is_zero() && !is_reducible(&b).is_reducible()))
        .cloned()
        .collect();
    for i in 0..40 {
        let pair = companion_pair(&mut rng, 1 + i % 3, 5);
        if !is_reducible(&hitchin_map(&pair).unwrap()).is_reducible() {
            irreducible.push(pair);
        }
    }
    let bad_irr = irreducible
        .iter()
        .filter(|p| stability_verdict(p).ok() != Some(Stability::Stable) || endomorphism_algebra_dim(p).ok() != Some(1))
        .count();
    let mut zero_pairs = 0;
    let mut bad_zero = 0;
    for e in -3..=3 {
        for (m1, m2) in [(0, 0), (1, 0), (1, 1), (2, 1), (3, 3)] {
            let z: PolyMatrix = [[Poly::zero(), Poly::zero()], [Poly::zero(), Poly::zero()]];
            let pair = HiggsPair::from_polys(e, e, TwistBundle::new(m1, m2).unwrap(), z.clone(), z).unwrap();
            zero_pairs += 1;
            let ok = stability_verdict(&pair).ok() == Some(Stability::StrictlySemistable)
                && endomorphism_algebra_dim(&pair).ok() == Some(4);
            if !ok {
                bad_zero += 1;
            }
        }
    }
    let pass = !irreducible.is_empty() && bad_irr == 0 && bad_zero == 0;
    verdict(
        pass,
        format!(
            "{} irreducible pairs ({bad_irr} failures), {zero_pairs} zero pairs with e1 = e2 ({bad_zero} failures)",
            irreducible.len()
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe7e7);
    let bad = (0..100)
        .filter(|_| {
            let (e1, e2) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            let m1 = rng.gen_range(-10..=10);
            let m2 = rng.gen_range(-10..=m1);
            let g = rng.gen_range(0..=12);
            euler_identity_check(e1, e2, m1, m2, g).defect != 0
        })
        .count();
    verdict(bad == 0, format!("100 tuples, {bad} nonzero defects"))
}

fn criterion_8() -> Verdict {
    let cfg = FlowConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b);
    let mut bad_poly = 0;
    let mut worst = 0.0f64;
    let mut max_iters = 0;
    for _ in 0..100 {
        let pair = point_pair(&mut rng, PointKind::Polystable);
        let flow = solve_metric(&to_numeric(&pair), &cfg).unwrap();
        worst = worst.max(flow.residual);
        max_iters = max_iters.max(flow.iters);
        let ok = flow.status == FlowStatus::Converged
            && flow.residual <= 1e-10
            && flow.iters <= 10_000
            && hk_cross_check(&pair, &cfg).unwrap();
        if !ok {
            bad_poly += 1;
        }
    }
    let mut bad_nil = 0;
    for _ in 0..50 {
        let pair = point_pair(&mut rng, PointKind::Nilpotent);
        let flow = solve_metric(&to_numeric(&pair), &cfg).unwrap();
        if flow.status == FlowStatus::Converged || !hk_cross_check(&pair, &cfg).unwrap() {
            bad_nil += 1;
        }
    }
    verdict(
        bad_poly == 0 && bad_nil == 0,
        format!(
            "100 polystable ({bad_poly} failures, max residual {worst:.1e}, max {max_iters} iterations), 50 nilpotent ({bad_nil} converged)"
        ),
    )
}

fn criterion_9() -> Verdict {
    let formula = (1..=10u64).all(|g| etale_genus(g) == EtaleGenus::Genus(2 * g - 1));
    let flagged = etale_genus(0) == EtaleGenus::NoConnectedCover;
    verdict(formula && flagged, format!("g = 1..10 give 2g - 1: {formula}; g = 0 flagged: {flagged}"))
}

fn criterion_10() -> Verdict {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let cases = [
        ("stability", "stable_pair"),
        ("spectral", "reducible_datum"),
        ("solve-metric", "nilpotent_point"),
    ];
    let mut bad = Vec::new();
    for (command, input) in cases {
        let path = root.join("fixtures").join(format!("{input}.json"));
        let run = || Command::new(env!("CARGO_BIN_EXE_vhiggs")).arg(command).arg(&path).output().unwrap();
        let (a, b) = (run(), run());
        let golden = std::fs::read(root.join("golden").join(format!("{input}.{command}.json"))).unwrap_or_default();
        if a.stdout != b.stdout || a.stdout != golden || a.status.code() != Some(0) {
            bad.push(format!("{command} {input}"));
        }
    }
    verdict(bad.is_empty(), format!("3 worked examples, mismatches: {bad:?}"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let pass = v.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(", budget {}s", l.as_secs()));
        println!(
            "{} {id:>2} {name}: {} [{:.2}s{budget}]",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            took.as_secs_f64()
        );
    };

    let pairs = pair_corpus(200);
    let data = torsion_corpus();
    let mut note = String::new();
    report(1, "cone containment", Some(Duration::from_secs(10)), &mut || criterion_1(&pairs));
    report(2, "Cayley-Hamilton", None, &mut || criterion_2(&pairs));
    report(3, "fibre dimensions", None, &mut criterion_3);
    report(4, "torsion length vs oracle", Some(Duration::from_secs(30)), &mut || {
        let (v, n) = criterion_4(&data);
        note = n;
        v
    });
    println!("     note: {note}");
    report(5, "multiple zero vs Jacobian rank", None, &mut || criterion_5(&data));
    report(6, "irreducible implies stable and simple", None, &mut || criterion_6(&pairs));
    report(7, "Euler characteristic identity", None, &mut criterion_7);
    report(8, "Hitchin-Kobayashi point model", Some(Duration::from_secs(60)), &mut criterion_8);
    report(9, "etale genus", None, &mut criterion_9);
    report(10, "CLI determinism", None, &mut criterion_10);

    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
