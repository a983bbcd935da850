//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons throughout.
//!
//! Runs without the libtest harness so the summary is always printed; the process
//! exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torickps::exactlin::vecops::primitive_direction;
use torickps::exactlin::{det, nullspace, to_field, FinAbGroup, Matrix};
use torickps::kstability::{construct_standard_boundary, is_k_polystable};
use torickps::logcox::{log_class_group, rank1_report, universal_cover};
use torickps::polytope::ApexChoice;
use torickps::toricdiv::{canonical_divisor, find_ample, is_ample, StandardBoundary, ToricDivisor};
use torickps::{Fan, IntMat, Rat, RatMat, VPolytope};
use torickps_cli::schema;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn corpus() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect()
}

fn load(path: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    schema::parse_document(&text, &path.display().to_string()).unwrap()
}

fn corpus_fan(name: &str) -> Fan {
    schema::fan(&load(&corpus().join("fans").join(format!("{name}.json")))).unwrap()
}

fn rank_one(rays: &[&[i64]]) -> Fan {
    Fan::from_rank_one_rays(rays.iter().map(|r| ints(r)).collect()).unwrap()
}

fn bnd(m: &[u64]) -> StandardBoundary {
    StandardBoundary::from_u64(m).unwrap()
}

fn zero(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

fn criterion1() -> Check {
    let mut names: Vec<String> = std::fs::read_dir(corpus().join("fans"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let mut runs = 0;
    for name in &names {
        let fan = corpus_fan(name);
        let mut divisors = Vec::new();
        let minus_k = corpus().join("divisors").join(format!("{name}_minus_k.json"));
        if minus_k.exists() {
            let d = schema::divisor(&load(&minus_k)).unwrap();
            if is_ample(&fan, &d) {
                divisors.push(d);
            }
        }
        divisors.push(find_ample(&fan).map_err(|e| format!("{name}: find_ample: {e}"))?);
        for l in divisors {
            let c = construct_standard_boundary(&fan, &l).map_err(|e| format!("{name}: {e}"))?;
            ensure(c.boundary.m().iter().all(|m| m >= &BigInt::one()), || format!("{name}: m < 1"))?;
            let r = is_k_polystable(&fan, &c.boundary).map_err(|e| e.to_string())?;
            ensure(r.is_k_polystable && r.barycenter == Some(zero(fan.dim())), || format!("{name}: {r:?}"))?;
            runs += 1;
        }
    }

    let f1 = corpus_fan("f1");
    let c = construct_standard_boundary(&f1, &canonical_divisor(&f1).negate()).map_err(|e| e.to_string())?;
    ensure(c.boundary.m() == ints(&[420, 390, 420, 546]).as_slice() && c.l == BigInt::from(455), || {
        format!("F1: m = {:?}, l = {}", c.boundary.m(), c.l)
    })?;
    let p1 = corpus_fan("p1");
    let c = construct_standard_boundary(&p1, &ToricDivisor::from_i64(&[1, 2])).map_err(|e| e.to_string())?;
    ensure(c.boundary.m() == ints(&[2, 2]).as_slice(), || format!("P1 football: m = {:?}", c.boundary.m()))?;
    Ok(format!("{runs} constructions on {} corpus fans; F1 m=(420,390,420,546) l=455; P1 m=(2,2)", names.len()))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    q(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rat>> {
    loop {
        let pts: Vec<Vec<Rat>> = (0..=n).map(|_| (0..n).map(|_| random_rational(rng)).collect()).collect();
        let edges = RatMat::from_rows(
            pts[1..].iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect(),
            n,
        )
        .unwrap();
        if !det(&edges).unwrap().is_zero() {
            return pts;
        }
    }
}

fn criterion2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for n in 1..=4 {
        for _ in 0..200 {
            let s = VPolytope::from_points(n, random_simplex(&mut rng, n)).map_err(|e| e.to_string())?;
            let centered = s.translate(&s.barycenter().unwrap().iter().map(|x| -x).collect::<Vec<_>>());
            let dual = centered.polar_dual().map_err(|e| e.to_string())?;
            ensure(dual.barycenter().unwrap() == zero(n), || format!("dim {n}: dual of centered simplex off-center"))?;
            checked += 1;
        }
        let mut made = 0;
        while made < 200 {
            // Put 0 at a random interior point with non-uniform barycentric weights.
            let pts = random_simplex(&mut rng, n);
            let w: Vec<Rat> = (0..=n).map(|_| q(rng.gen_range(1..=20), 1)).collect();
            if w.iter().all(|x| x == &w[0]) {
                continue;
            }
            let total: Rat = w.iter().sum();
            let p: Vec<Rat> =
                (0..n).map(|j| pts.iter().zip(&w).map(|(v, wi)| &v[j] * wi).sum::<Rat>() / &total).collect();
            let s = VPolytope::from_points(n, pts)
                .map_err(|e| e.to_string())?
                .translate(&p.iter().map(|x| -x).collect::<Vec<_>>());
            ensure(s.has_origin_in_interior(), || "origin not interior".into())?;
            ensure(s.barycenter().unwrap() != zero(n), || "weights non-uniform but barycenter zero".into())?;
            let dual = s.polar_dual().map_err(|e| e.to_string())?;
            ensure(dual.barycenter().unwrap() != zero(n), || format!("dim {n}: off-center simplex has centered dual"))?;
            made += 1;
            checked += 1;
        }
    }
    Ok(format!("{checked} random simplices in dimensions 1-4"))
}

fn relation_vector(fan: &Fan) -> Vec<BigInt> {
    let cols = IntMat::from_cols(fan.rays(), fan.dim()).unwrap();
    let ker = nullspace(&to_field::<Rat>(&cols));
    let (mut c, _) = primitive_direction(&ker[0]);
    if c[0].is_negative() {
        c.iter_mut().for_each(|x| *x = -x.clone());
    }
    c
}

fn random_rank_one(rng: &mut ChaCha8Rng, n: usize) -> Fan {
    loop {
        let basis: Vec<Vec<BigInt>> =
            (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect()).collect();
        let m = IntMat::from_rows(basis.clone(), n).unwrap();
        if det(&to_field::<Rat>(&m)).unwrap().is_zero() {
            continue;
        }
        let prim: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|v| primitive_direction(&v.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<_>>()).0)
            .collect();
        let mut last = vec![BigInt::zero(); n];
        for v in &prim {
            let lambda = BigInt::from(rng.gen_range(1..=4));
            for (a, x) in last.iter_mut().zip(v) {
                *a -= &lambda * x;
            }
        }
        let (last, _) = primitive_direction(&last.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<_>>());
        let mut rays = vec![last];
        rays.extend(prim);
        let fan = Fan::from_rank_one_rays(rays).unwrap();
        if fan.validate().picard_rank_one {
            return fan;
        }
    }
}

fn criterion3() -> Check {
    let mut cases: Vec<(Fan, StandardBoundary)> = vec![
        (Fan::projective_space(1), StandardBoundary::trivial(2)),
        (Fan::projective_space(2), StandardBoundary::trivial(3)),
        (Fan::projective_space(3), StandardBoundary::trivial(4)),
        (Fan::projective_space(4), StandardBoundary::trivial(5)),
        (Fan::projective_space(2), bnd(&[2, 2, 2])),
        (Fan::projective_space(2), bnd(&[1, 2, 3])),
    ];
    let p112 = rank_one(&[&[-1, -2], &[1, 0], &[0, 1]]);
    let p123 = rank_one(&[&[-2, -3], &[1, 0], &[0, 1]]);
    let p235 = rank_one(&[&[-4, 5], &[1, 0], &[1, -2]]);
    for m in [[1, 1, 1], [1, 1, 2]] {
        cases.push((p112.clone(), bnd(&m)));
    }
    for m in [[1, 1, 1], [1, 2, 3]] {
        cases.push((p123.clone(), bnd(&m)));
    }
    cases.push((p235.clone(), bnd(&[2, 3, 5])));
    cases.push((p235, bnd(&[1, 1, 1])));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..40 {
        let n = 1 + i % 3;
        let fan = random_rank_one(&mut rng, n);
        let m: Vec<BigInt> = if i % 2 == 0 {
            let k = BigInt::from(rng.gen_range(1..=3));
            relation_vector(&fan).into_iter().map(|c| c * &k).collect()
        } else {
            (0..=n).map(|_| BigInt::from(rng.gen_range(1..=5))).collect()
        };
        cases.push((fan, StandardBoundary::new(m).unwrap()));
    }

    let (mut yes, mut no) = (0, 0);
    for (fan, b) in &cases {
        let r = rank1_report(fan, b).map_err(|e| format!("{:?} m={:?}: {e}", fan.rays(), b.m()))?;
        ensure(r.c2 == r.c3 && r.c3 == r.c4, || format!("{:?}: disagreement", fan.rays()))?;
        if r.c2 {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, || "degenerate sample".into())?;
    Ok(format!("{} rank-one instances agree ({yes} all true, {no} all false)", cases.len()))
}

fn criterion4() -> Check {
    let p112 = rank_one(&[&[-1, -2], &[1, 0], &[0, 1]]);
    let p123 = rank_one(&[&[-2, -3], &[1, 0], &[0, 1]]);
    let c = universal_cover(&p112, &bnd(&[1, 1, 2])).map_err(|e| e.to_string())?;
    ensure(c.pi1_orb == FinAbGroup { rank: 0, torsion: ints(&[2]) }, || format!("P(1,1,2) pi1 = {}", c.pi1_orb))?;
    ensure(c.matrix == IntMat::diagonal(&ints(&[1, 2])), || format!("P(1,1,2) B = {:?}", c.matrix))?;
    let c = universal_cover(&p123, &bnd(&[1, 2, 3])).map_err(|e| e.to_string())?;
    ensure(c.pi1_orb == FinAbGroup { rank: 0, torsion: ints(&[6]) }, || format!("P(1,2,3) pi1 = {}", c.pi1_orb))?;
    ensure(c.matrix == IntMat::diagonal(&ints(&[2, 3])), || format!("P(1,2,3) B = {:?}", c.matrix))?;
    let cl = log_class_group(&p112, &bnd(&[1, 1, 2])).map_err(|e| e.to_string())?;
    ensure(cl.group == FinAbGroup { rank: 1, torsion: ints(&[2]) }, || format!("Cl = {}", cl.group))?;
    let free: Vec<Vec<BigInt>> = cl.degrees.iter().map(|d| d.free.clone()).collect();
    ensure(free == vec![ints(&[1]); 3], || format!("free parts {free:?}"))?;
    Ok("pi1 Z/2 with diag(1,2); Z/6 with diag(2,3); Cl = Z + Z/2 with free degrees (1,1,1)".into())
}

fn random_full_polytope(rng: &mut ChaCha8Rng, n: usize) -> VPolytope {
    loop {
        let k = rng.gen_range(n + 1..=n + 6);
        let pts: Vec<Vec<Rat>> = (0..k).map(|_| (0..n).map(|_| q(rng.gen_range(-6..=6), 1)).collect()).collect();
        if let Ok(p) = VPolytope::from_points(n, pts) {
            if p.is_full_dimensional() {
                let c: Vec<Rat> = p.vertex_average().iter().map(|x| -x).collect();
                return p.translate(&c);
            }
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMat {
    let mut m = IntMat::identity(n);
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let k = BigInt::from(rng.gen_range(-2..=2));
            let src = m.row(j).to_vec();
            for (a, b) in m.row_mut(i).iter_mut().zip(src) {
                *a += &k * b;
            }
        }
    }
    m
}

fn monte_carlo(p: &VPolytope, rng: &mut ChaCha8Rng, samples: usize) -> Result<(), String> {
    let n = p.dim();
    let facets: Vec<(Vec<f64>, f64)> = p
        .facets()
        .map_err(|e| e.to_string())?
        .inequalities()
        .iter()
        .map(|h| (h.normal.iter().map(|x| x.to_f64().unwrap()).collect(), h.rhs.to_f64().unwrap()))
        .collect();
    let lo: Vec<f64> =
        (0..n).map(|j| p.vertices().iter().map(|v| v[j].to_f64().unwrap()).fold(f64::MAX, f64::min)).collect();
    let hi: Vec<f64> =
        (0..n).map(|j| p.vertices().iter().map(|v| v[j].to_f64().unwrap()).fold(f64::MIN, f64::max)).collect();
    let box_vol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let mut hits = 0usize;
    let mut sum = vec![0.0; n];
    let mut sum_sq = vec![0.0; n];
    for _ in 0..samples {
        let x: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| rng.gen_range(*a..*b)).collect();
        if facets.iter().all(|(a, b)| a.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>() >= *b) {
            hits += 1;
            for j in 0..n {
                sum[j] += x[j];
                sum_sq[j] += x[j] * x[j];
            }
        }
    }
    let frac = hits as f64 / samples as f64;
    let vol_sigma = box_vol * (frac * (1.0 - frac) / samples as f64).sqrt();
    let vol = p.volume().unwrap().to_f64().unwrap();
    ensure((box_vol * frac - vol).abs() <= 3.0 * vol_sigma, || format!("volume {vol} vs estimate {}", box_vol * frac))?;
    let bary = p.barycenter().unwrap();
    for j in 0..n {
        let mean = sum[j] / hits as f64;
        let sigma = ((sum_sq[j] / hits as f64 - mean * mean) / hits as f64).sqrt();
        let exact = bary[j].to_f64().unwrap();
        ensure((mean - exact).abs() <= 3.0 * sigma, || format!("barycenter[{j}] {exact} vs estimate {mean}"))?;
    }
    Ok(())
}

fn criterion5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let p = random_full_polytope(&mut rng, 2 + i % 2);
        let back = p.polar_dual().and_then(|d| d.polar_dual()).map_err(|e| e.to_string())?;
        ensure(back == p, || format!("double dual differs for {:?}", p.vertices()))?;
    }
    for i in 0..30 {
        let n = 2 + i % 2;
        let p = random_full_polytope(&mut rng, n);
        let b = p.barycenter_with(ApexChoice::LexMin).unwrap();
        ensure(b == p.barycenter_with(ApexChoice::LexMax).unwrap(), || "barycenter depends on triangulation".into())?;
        let a = random_unimodular(&mut rng, n);
        let af: Matrix<Rat> = to_field(&a);
        let image = p.transform(&af).map_err(|e| e.to_string())?;
        let mapped: Vec<Rat> = (0..n).map(|r| (0..n).map(|c| &af[(r, c)] * &b[c]).sum()).collect();
        ensure(image.barycenter().unwrap() == mapped, || "barycenter not equivariant".into())?;
        ensure(image.volume().unwrap() == p.volume().unwrap(), || "volume not unimodular-invariant".into())?;
    }
    for i in 0..10 {
        let p = random_full_polytope(&mut rng, 2 + i % 2);
        monte_carlo(&p, &mut rng, 20_000)?;
    }
    Ok("100 double duals exact; 30 triangulation/unimodular checks exact; 10 Monte-Carlo runs within 3 sigma".into())
}

fn criterion6() -> Check {
    let mut got = Vec::new();
    for (name, expected) in [("p2", true), ("p1xp1", true), ("f1", true), ("f2", false)] {
        let fan = corpus_fan(name);
        let ample = is_ample(&fan, &canonical_divisor(&fan).negate());
        ensure(ample == expected, || format!("{name}: is_ample(-K) = {ample}"))?;
        got.push(format!("{name}={ample}"));
    }
    Ok(format!("is_ample(-K): {}", got.join(", ")))
}

fn criterion7() -> Check {
    let f1 = corpus_fan("f1");
    let r = is_k_polystable(&f1, &StandardBoundary::trivial(4)).map_err(|e| e.to_string())?;
    ensure(!r.is_k_polystable && r.barycenter == Some(vec![q(1, 12), q(1, 6)]), || format!("F1: {r:?}"))?;
    let p112 = corpus_fan("p112");
    let r = rank1_report(&p112, &StandardBoundary::trivial(3)).map_err(|e| e.to_string())?;
    ensure(!r.c1 && !r.c2 && !r.c3 && !r.c4, || "P(1,1,2) satisfies a rank-one condition".into())?;
    Ok("F1 barycenter (1/12, 1/6); P(1,1,2) with empty boundary fails c1-c4".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("standard boundary construction on the corpus", criterion1),
        ("simplex duality preserves a centered barycenter", criterion2),
        ("rank-one conditions agree", criterion3),
        ("cover matrices, fundamental groups, class group", criterion4),
        ("polytope kernel properties", criterion5),
        ("ampleness discrimination", criterion6),
        ("negative controls", criterion7),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS criterion {}: {title} ({detail}) [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", criteria.len() - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
