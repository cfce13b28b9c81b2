//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use osculant::algebra::{q, FieldElement, MPoly, Tower, Var};
use osculant::cayley::{hessian, second_hessian, sextactic_count, ConicCoeffs, PlaneCurve};
use osculant::hesse::{
    all_osculating_conics, build_curve, group_generators, orbit, projectively_equal, sextactic_points,
    transformation_pipeline, verify_paper_identities, ConicMethod, HessePencilCurve,
};
use osculant::intersect::{conic_param_multiplicity, fulton_at_point, sextactic_type_in};
use osculant::syzygy::{
    dim_s, find_triple_partition, Classification, ComputeMode, ConicProducts, ExponentReport, Modulus,
};
use osculant_cli::expr::parse_parameter;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODULAR: ComputeMode = ComputeMode::Modular(Modulus::Auto);

/// Exactly certified free products gathered for the resolution check.
static CERTIFIED_FREE: Mutex<Vec<(String, ExponentReport)>> = Mutex::new(Vec::new());

fn curve(expr: &str) -> HessePencilCurve {
    build_curve(&parse_parameter(expr).unwrap()).unwrap()
}

const IDENTITY_SET: [&str; 6] = ["1", "6", "-5", "6*eps^2", "6*eps^4", "-3*(1-sqrt3)"];

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let used = start.elapsed();
    ensure(used <= budget, || format!("{what} took {used:.1?}, over the {budget:?} budget"))
}

fn hessian_reduction() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tw = Tower::rationals();
    let mut done = 0;
    while done < 20 {
        let t = q(rng.gen_range(-60..=60), rng.gen_range(1..=7));
        let t3 = &t * &t * &t;
        if t3 == q(-27, 1) {
            continue;
        }
        let c = build_curve(&FieldElement::from_rational(&tw, t.clone())).unwrap();
        let reduced = hessian(c.curve()).unwrap().reduce_mod(c.poly()).unwrap();
        let scale = FieldElement::from_rational(c.tower(), (t3 + q(27, 1)) * q(8, 1));
        let expected = MPoly::monomial(&scale, [1, 1, 1]);
        ensure(reduced == expected, || format!("t = {t}: H mod F = {reduced}"))?;
        done += 1;
    }
    within(start, Duration::from_secs(1), "criterion 1")?;
    Ok(format!("20 random rational t in {:.2?}", start.elapsed()))
}

fn identity_suite() -> Result<String, String> {
    let start = Instant::now();
    for t in IDENTITY_SET {
        let r = verify_paper_identities(&curve(t)).unwrap();
        for name in ["minors-product", "omega-jacobians", "psi-forms", "psi-mod-f", "jacobian-psi"] {
            let check = r.get(name).ok_or_else(|| format!("missing check {name}"))?;
            ensure(check.passed, || format!("t = {t}: {name} fails"))?;
        }
    }
    within(start, Duration::from_secs(30), "criterion 2")?;
    Ok(format!("6 parameters in {:.2?}", start.elapsed()))
}

fn second_hessian_suite() -> Result<String, String> {
    let start = Instant::now();
    for t in IDENTITY_SET {
        let r = verify_paper_identities(&curve(t)).unwrap();
        let check = r.get("second-hessian").ok_or("missing second-hessian check")?;
        ensure(check.passed, || format!("t = {t}: H2 mod F is not a multiple of the cube differences"))?;
    }
    within(start, Duration::from_secs(30), "criterion 3")?;
    Ok(format!("6 parameters in {:.2?}", start.elapsed()))
}

fn points_suite() -> Result<String, String> {
    let start = Instant::now();
    ensure(sextactic_count(3).unwrap() == 27, || "sextactic_count(3) != 27".into())?;
    for t in ["1", "6", "6*eps^2"] {
        let c = curve(t);
        let pts = sextactic_points(&c).unwrap();
        ensure(pts.len() == 27, || format!("t = {t}: {} points", pts.len()))?;
        let h = hessian(c.curve()).unwrap();
        let h2 = second_hessian(c.curve()).unwrap();
        for (i, p) in pts.iter().enumerate() {
            let x = &p.coords;
            ensure(c.poly().eval(x).unwrap().is_zero(), || format!("t = {t}: P{} off the curve", p.label))?;
            ensure(x.iter().all(|v| !v.is_zero()), || format!("t = {t}: P{} on xyz = 0", p.label))?;
            ensure(!h.eval(x).unwrap().is_zero(), || format!("t = {t}: P{} on the Hessian", p.label))?;
            ensure(h2.eval(x).unwrap().is_zero(), || format!("t = {t}: H2(P{}) != 0", p.label))?;
            for other in &pts[i + 1..] {
                ensure(!projectively_equal(x, &other.coords), || format!("t = {t}: P{} = P{}", p.label, other.label))?;
            }
        }
        let tower = pts[0].coords[0].tower().clone();
        let gens = group_generators(&tower);
        for g in &gens {
            for p in &pts {
                let image = g.act_on_point(&p.coords).unwrap();
                ensure(pts.iter().any(|r| projectively_equal(&image, &r.coords)), || {
                    format!("t = {t}: image of P{} is not sextactic", p.label)
                })?;
            }
        }
        let seeds: Vec<[FieldElement; 3]> =
            [1, 4, 7].iter().map(|&l| pts.iter().find(|p| p.label == l).unwrap().coords.clone()).collect();
        let orb = orbit(&gens, &seeds).unwrap();
        ensure(orb.len() == 27, || format!("t = {t}: orbit has {} points", orb.len()))?;
        ensure(orb.iter().all(|e| pts.iter().any(|p| projectively_equal(&e.point, &p.coords))), || {
            format!("t = {t}: orbit leaves the point set")
        })?;
    }
    within(start, Duration::from_secs(60), "criterion 4")?;
    Ok(format!("t = 1, 6, 6eps^2 in {:.2?}", start.elapsed()))
}

fn conic_agreement() -> Result<String, String> {
    let start = Instant::now();
    for t in ["1", "6"] {
        let c = curve(t);
        let atlases: Vec<_> = ConicMethod::ALL.iter().map(|&m| all_osculating_conics(&c, m).unwrap()).collect();
        for label in 1..=27 {
            let conics: Vec<&ConicCoeffs> = atlases.iter().map(|a| &a.entry(label).unwrap().conic).collect();
            for i in 0..3 {
                for j in i + 1..3 {
                    ensure(conics[i].proportional(conics[j]), || {
                        format!("t = {t}, P{label}: {} and {} conics differ", ConicMethod::ALL[i].name(), ConicMethod::ALL[j].name())
                    })?;
                }
            }
        }
        for seed in [1, 4, 7] {
            let p = &atlases[0].entry(seed).unwrap().point;
            let z = &p.coords[2];
            let record = transformation_pipeline(&c, z).unwrap();
            let height = z.tower().height();
            ensure(record.pulled_back.0.iter().all(|x| x.support_height() <= height), || {
                format!("t = {t}, P{seed}: pulled-back conic involves the square root")
            })?;
        }
        if t == "1" {
            let anchor = ConicCoeffs::from_ints(&Tower::rationals(), [15, 15, -17, -19, -3, -3]);
            let c1 = &atlases[1].entry(1).unwrap().conic;
            ensure(c1.proportional(&anchor.embed(&c1.tower()).unwrap()), || format!("t = 1, P1 conic is {}", c1.to_mpoly()))?;
        }
    }
    within(start, Duration::from_secs(300), "criterion 5")?;
    Ok(format!("three constructions agree at t = 1 and 6 in {:.2?}", start.elapsed()))
}

fn linear(a: [i64; 3]) -> MPoly {
    MPoly::from_int_terms(&Tower::rationals(), &[([1, 0, 0], a[0]), ([0, 1, 0], a[1]), ([0, 0, 1], a[2])])
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// A nondegenerate conic through `p` and a cubic `Q·ℓ + T`, where `T` is a
/// product of lines through `p`, some of them tangent to the conic.
fn random_instance(rng: &mut ChaCha8Rng) -> (PlaneCurve, ConicCoeffs, [FieldElement; 3]) {
    let tw = Tower::rationals();
    let int = |n: i64| FieldElement::from_int(&tw, n);
    loop {
        let p: [i64; 3] = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(1..=3)];
        let pt = p.map(int);
        let q0 = ConicCoeffs::from_ints(&tw, std::array::from_fn(|_| rng.gen_range(-4..=4)));
        let l: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let lp = l[0] * p[0] + l[1] * p[1] + l[2] * p[2];
        if lp == 0 {
            continue;
        }
        let lf = linear(l);
        let corr = lf.mul(&lf).scale(&q0.eval(&pt).unwrap().checked_div(&int(lp * lp)).unwrap());
        let Ok(conic) = ConicCoeffs::from_mpoly(&q0.to_mpoly().sub(&corr)) else { continue };
        if !conic.is_nondegenerate() {
            continue;
        }
        let qm = conic.to_mpoly();
        let grad: Vec<FieldElement> = Var::ALL.iter().map(|&v| qm.partial(v).eval(&pt).unwrap()).collect();
        let tangent =
            MPoly::from_terms(&tw, [([1, 0, 0], grad[0].clone()), ([0, 1, 0], grad[1].clone()), ([0, 0, 1], grad[2].clone())])
                .unwrap();
        let mut lines = MPoly::constant(&int(1));
        for _ in 0..3 {
            let d: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-3..=3));
            let n = cross(p, d);
            lines = if rng.gen_bool(0.35) || n == [0, 0, 0] { lines.mul(&tangent) } else { lines.mul(&linear(n)) };
        }
        let f = qm.mul(&linear(std::array::from_fn(|_| rng.gen_range(-2..=2)))).add(&lines);
        if f.is_zero() || !f.is_homogeneous() {
            continue;
        }
        return (PlaneCurve::new(f).unwrap(), conic, pt);
    }
}

fn multiplicity_suite() -> Result<String, String> {
    let start = Instant::now();
    let atlas = all_osculating_conics(&curve("1"), ConicMethod::ClosedForm).unwrap();
    for label in 1..=27 {
        let s = sextactic_type_in(&atlas, label).map_err(|e| format!("P{label}: {e}"))?;
        ensure(s.multiplicity >= 6, || format!("P{label}: multiplicity {}", s.multiplicity))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let (f, conic, p) = random_instance(&mut rng);
        let a = conic_param_multiplicity(&f, &conic, &p).unwrap();
        let b = fulton_at_point(&f, &conic, &p).unwrap();
        ensure(a == b, || format!("instance {i}: parametrization {a}, Fulton {b}"))?;
    }
    within(start, Duration::from_secs(300), "criterion 6")?;
    Ok(format!("27 labels at t = 1 and 100 random instances in {:.2?}", start.elapsed()))
}

fn expect(r: &ExponentReport, exps: &[u32], class: Classification, what: &str) -> Result<(), String> {
    ensure(r.exponents == exps && r.classification == class, || {
        format!("{what}: exponents {:?} {}, expected {exps:?} {class}", r.exponents, r.classification)
    })
}

fn record_free(what: String, r: &ExponentReport) {
    if r.certified && r.classification == Classification::Free {
        CERTIFIED_FREE.lock().unwrap().push((what, r.clone()));
    }
}

fn equianharmonic_suite() -> Result<String, String> {
    let start = Instant::now();
    let mut modular_time = Duration::ZERO;
    for t in ["0", "6"] {
        let c = curve(t);
        let cp = ConicProducts::new(&c).unwrap();
        let m0 = Instant::now();
        for l in 1..=27 {
            let r = cp.exponents(&[l], MODULAR, None).map_err(|e| e.to_string())?;
            expect(&r, &[2, 3, 3], Classification::NearlyFree, &format!("t = {t}, F*C{l} (modular)"))?;
        }
        modular_time += m0.elapsed();
        for l in [1, 14, 27] {
            let r = cp.exponents(&[l], ComputeMode::Exact, None).map_err(|e| e.to_string())?;
            ensure(r.certified, || format!("t = {t}: F*C{l} not certified"))?;
            expect(&r, &[2, 3, 3], Classification::NearlyFree, &format!("t = {t}, F*C{l} (exact)"))?;
        }
        let part = find_triple_partition(&c).map_err(|e| format!("t = {t}: {e}"))?;
        ensure(part.triples.len() == 9 && part.all_certified(), || format!("t = {t}: partition not certified"))?;
        let mut covered: Vec<usize> = part.triples.iter().flat_map(|x| x.triple).collect();
        covered.sort_unstable();
        ensure(covered == (1..=27).collect::<Vec<_>>(), || format!("t = {t}: triples do not cover 1..27"))?;
        for x in &part.triples {
            record_free(format!("t = {t}, F*C{}*C{}", x.pair[0], x.pair[1]), &x.report);
        }
        let g = part.triples[0].triple;
        let triple = cp.exponents(&g, ComputeMode::Exact, None).map_err(|e| e.to_string())?;
        ensure(triple.certified, || format!("t = {t}: triple {g:?} not certified"))?;
        expect(&triple, &[3, 5], Classification::Free, &format!("t = {t}, triple {g:?}"))?;
        record_free(format!("t = {t}, F*C{}*C{}*C{}", g[0], g[1], g[2]), &triple);
        let x = &part.cross_pair;
        ensure(x.report.certified, || format!("t = {t}: cross pair not certified"))?;
        expect(&x.report, &[3, 4, 4], Classification::NearlyFree, &format!("t = {t}, cross pair {:?}", x.pair))?;
    }
    ensure(modular_time <= Duration::from_secs(120), || format!("modular phase took {modular_time:.1?}"))?;
    within(start, Duration::from_secs(32 * 60), "criterion 7")?;
    Ok(format!("t = 0 and 6 in {:.2?} (modular screen {:.2?})", start.elapsed(), modular_time))
}

fn general_member_suite() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cp = ConicProducts::new(&curve("-5")).unwrap();
    for l in 1..=27 {
        let r = cp.exponents(&[l], MODULAR, None).map_err(|e| e.to_string())?;
        expect(&r, &[2, 3, 3], Classification::NearlyFree, &format!("t = -5, F*C{l}"))?;
    }
    let mut pairs = Vec::new();
    for _ in 0..10 {
        let s = sample(&mut rng, 27, 2);
        let pair = [s.index(0) + 1, s.index(1) + 1];
        let r = cp.exponents(&pair, MODULAR, None).map_err(|e| e.to_string())?;
        expect(&r, &[3, 4, 4], Classification::NearlyFree, &format!("t = -5, pair {pair:?}"))?;
        pairs.push(pair);
    }
    let mut triples = Vec::new();
    for _ in 0..5 {
        let s = sample(&mut rng, 27, 3);
        let triple = [s.index(0) + 1, s.index(1) + 1, s.index(2) + 1];
        let r = cp.exponents(&triple, MODULAR, None).map_err(|e| e.to_string())?;
        expect(&r, &[5, 5, 5], Classification::Other, &format!("t = -5, triple {triple:?}"))?;
        triples.push(triple);
    }
    let exact: [(&[usize], &[u32], Classification); 3] = [
        (&[1], &[2, 3, 3], Classification::NearlyFree),
        (&pairs[0], &[3, 4, 4], Classification::NearlyFree),
        (&triples[0], &[5, 5, 5], Classification::Other),
    ];
    for (labels, exps, class) in exact {
        let r = cp.exponents(labels, ComputeMode::Exact, None).map_err(|e| e.to_string())?;
        ensure(r.certified, || format!("t = -5, {labels:?} not certified"))?;
        expect(&r, exps, class, &format!("t = -5, {labels:?} (exact)"))?;
    }
    let harmonic = ConicProducts::new(&curve("-3*(1-sqrt3)")).unwrap();
    let spot: [(&[usize], &[u32], Classification); 3] = [
        (&[2], &[2, 3, 3], Classification::NearlyFree),
        (&[3, 17], &[3, 4, 4], Classification::NearlyFree),
        (&[1, 12, 23], &[5, 5, 5], Classification::Other),
    ];
    for (labels, exps, class) in spot {
        let r = harmonic.exponents(labels, MODULAR, None).map_err(|e| e.to_string())?;
        expect(&r, exps, class, &format!("t = -3(1-sqrt3), {labels:?}"))?;
    }
    within(start, Duration::from_secs(32 * 60), "criterion 8")?;
    Ok(format!("t = -5 plus harmonic spot check in {:.2?}", start.elapsed()))
}

fn resolution_identity() -> Result<String, String> {
    let start = Instant::now();
    let certified = CERTIFIED_FREE.lock().unwrap().clone();
    ensure(!certified.is_empty(), || "no certified free products were recorded".into())?;
    for (what, r) in &certified {
        let (d1, d2) = (i64::from(r.exponents[0]), i64::from(r.exponents[1]));
        for (k, &dim) in r.dims.dims.iter().enumerate() {
            let k = k as i64;
            ensure(dim == dim_s(k - d1) + dim_s(k - d2), || format!("{what}: dim AR_{k} = {dim}"))?;
        }
    }
    within(start, Duration::from_secs(60), "criterion 9")?;
    Ok(format!("{} certified free products", certified.len()))
}

fn determinism() -> Result<String, String> {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_osculant");
    let jobs: [&[&str]; 7] = [
        &["identities", "--t", "6*eps^2"],
        &["points", "--t", "6"],
        &["conics", "--t", "1", "--form", "pipeline", "--check-multiplicity"],
        &["multiplicity", "--t", "1"],
        &["exponents", "--t", "-5", "--conics", "1,2", "--conics", "3,9,20", "--conics", "4", "--modulus", "auto"],
        &["partition", "--t", "0"],
        &["report", "--t", "1", "--modulus", "auto"],
    ];
    let run = |args: &[&str], threads: &str| {
        let out = Command::new(bin)
            .args(args)
            .args(["--format", "json", "--threads", threads])
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    for args in jobs {
        let reference = run(args, "1");
        ensure(reference.0 == Some(0), || format!("{args:?} exited with {:?}", reference.0))?;
        for threads in ["1", "4"] {
            ensure(run(args, threads) == reference, || format!("{args:?} differs at {threads} threads"))?;
        }
    }
    Ok(format!("7 subcommands at 1 and 4 threads in {:.2?}", start.elapsed()))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("Hessian reduction", hessian_reduction),
        ("identity suite", identity_suite),
        ("second Hessian", second_hessian_suite),
        ("sextactic points", points_suite),
        ("conic triple agreement", conic_agreement),
        ("intersection multiplicity", multiplicity_suite),
        ("equianharmonic products and partition", equianharmonic_suite),
        ("general and harmonic products", general_member_suite),
        ("free resolution dimensions", resolution_identity),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| (*s).to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
