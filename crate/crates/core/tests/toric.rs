mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;
use torickps::kstability::{condition2_rank1, construct_standard_boundary, is_k_polystable};
use torickps::toricdiv::{
    canonical_divisor, divisor_of_character, dual_vertices, dual_vertices_checked, find_ample, is_ample, polytope_of,
    StandardBoundary, ToricDivisor,
};
use torickps::{check_fan_map, Fan, IntMat, Rat};

fn random_character(r: &mut impl Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| q(r.gen_range(-5..=5), r.gen_range(1..=3))).collect()
}

/// An ample divisor built from `find_ample` by scaling, a principal shift and a small perturbation.
fn random_ample(r: &mut impl Rng, fan: &Fan) -> ToricDivisor {
    let base = find_ample(fan).unwrap();
    loop {
        let scaled = base.scale(&q(r.gen_range(1..=4), r.gen_range(1..=3)));
        let shifted = scaled.add(&divisor_of_character(fan, &random_character(r, fan.dim())).unwrap()).unwrap();
        let noise =
            ToricDivisor::new((0..fan.num_rays()).map(|_| q(r.gen_range(-1..=1), r.gen_range(5..=9))).collect());
        let l = shifted.add(&noise).unwrap();
        if is_ample(fan, &l) {
            return l;
        }
    }
}

#[test]
fn named_fans_are_complete_and_simplicial() {
    for (name, fan) in named_fans() {
        let rep = fan.validate();
        assert!(rep.is_valid && rep.is_complete && rep.is_simplicial, "{name}: {:?}", rep.issues);
        let rank_one = fan.num_rays() == fan.dim() + 1;
        assert_eq!(rep.picard_rank_one, rank_one, "{name}");
        assert!(check_fan_map(&IntMat::identity(fan.dim()), &fan, &fan).unwrap(), "{name}");
    }
}

#[test]
fn find_ample_output_is_ample() {
    for (name, fan) in named_fans() {
        assert!(is_ample(&fan, &find_ample(&fan).unwrap()), "{name}");
    }
    let mut r = rng(1);
    for n in 2..=3 {
        for _ in 0..8 {
            let fan = random_face_fan(&mut r, n);
            let l = find_ample(&fan).unwrap();
            assert!(is_ample(&fan, &l), "{:?}", fan.rays());
        }
    }
}

#[test]
fn anticanonical_dual_vertices_match_polar_dual() {
    let cases: Vec<(Fan, StandardBoundary)> = vec![
        (Fan::projective_space(2), StandardBoundary::trivial(3)),
        (Fan::projective_space(3), StandardBoundary::from_u64(&[2, 1, 3, 1]).unwrap()),
        (p1xp1(), StandardBoundary::from_u64(&[2, 2, 1, 1]).unwrap()),
        (f1(), StandardBoundary::trivial(4)),
        (dp6(), StandardBoundary::trivial(6)),
        (p1xp2(), StandardBoundary::trivial(5)),
        (p112(), StandardBoundary::from_u64(&[1, 1, 2]).unwrap()),
        (p235(), StandardBoundary::from_u64(&[2, 3, 5]).unwrap()),
    ];
    for (fan, b) in cases {
        assert!(is_ample(&fan, &b.anti_log_canonical()));
        let direct = dual_vertices(&fan, &b).unwrap();
        let via_polar = polytope_of(&fan, &b.anti_log_canonical()).unwrap().vertices().unwrap().polar_dual().unwrap();
        assert_eq!(direct, via_polar);
        assert_eq!(dual_vertices_checked(&fan, &b).unwrap(), direct);
    }
}

#[test]
fn construction_on_named_fans() {
    for (name, fan) in named_fans() {
        let c = construct_standard_boundary(&fan, &find_ample(&fan).unwrap()).unwrap();
        assert!(c.boundary.m().iter().all(|m| m >= &BigInt::one()), "{name}");
        assert!(is_ample(&fan, &c.boundary.anti_log_canonical()), "{name}");
        let r = is_k_polystable(&fan, &c.boundary).unwrap();
        assert_eq!(r.barycenter, Some(zero(fan.dim())), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_fan_is_complete_and_invariant(seed in any::<u64>(), n in 1usize..=3, num in 1i64..=5, den in 1i64..=4) {
        let mut r = rng(seed);
        let p = random_polytope(&mut r, n);
        let nf = Fan::normal_fan(&p).unwrap();
        let rep = nf.validate();
        prop_assert!(rep.is_valid && rep.is_complete);
        let t = random_character(&mut r, n);
        prop_assert!(Fan::normal_fan(&p.translate(&t)).unwrap().fans_equal(&nf));
        prop_assert!(Fan::normal_fan(&p.scale(&q(num, den)).unwrap()).unwrap().fans_equal(&nf));
    }

    #[test]
    fn principal_divisors_translate_polytopes(seed in any::<u64>(), which in 0usize..11) {
        let mut r = rng(seed);
        let fan = named_fans()[which].1.clone();
        let d = random_ample(&mut r, &fan);
        let m = random_character(&mut r, fan.dim());
        let shifted = d.add(&divisor_of_character(&fan, &m).unwrap()).unwrap();
        let p = polytope_of(&fan, &d).unwrap().vertices().unwrap();
        prop_assert_eq!(polytope_of(&fan, &shifted).unwrap().vertices().unwrap(), p.translate(&m));
        prop_assert!(is_ample(&fan, &shifted));
        let not_ample = canonical_divisor(&fan);
        prop_assert_eq!(is_ample(&fan, &not_ample.add(&divisor_of_character(&fan, &m).unwrap()).unwrap()), false);
    }

    #[test]
    fn construction_on_random_ample_divisors(seed in any::<u64>(), which in 0usize..11) {
        let mut r = rng(seed);
        let fan = named_fans()[which].1.clone();
        let l = random_ample(&mut r, &fan);
        let c = construct_standard_boundary(&fan, &l).unwrap();
        prop_assert!(c.b.iter().all(|b| b > &Rat::zero()));
        prop_assert!(c.boundary.m().iter().all(|m| m >= &BigInt::one()));
        // standard coefficients 1 - 1/m
        for (coef, m) in c.boundary.coefficients().iter().zip(c.boundary.m()) {
            prop_assert_eq!(coef.clone(), Rat::one() - Rat::new(BigInt::one(), m.clone()));
        }
        prop_assert!(is_ample(&fan, &c.boundary.anti_log_canonical()));
        prop_assert_eq!(c.report.barycenter.clone(), Some(zero(fan.dim())));

        // Rescaling L rescales every b_rho, so the m-vector stays on the same ray;
        // the integral representative picked by l may change.
        let lambda = q(r.gen_range(1..=9), r.gen_range(1..=9));
        let scaled = construct_standard_boundary(&fan, &l.scale(&lambda)).unwrap();
        prop_assert_eq!(primitive(scaled.boundary.m()), primitive(c.boundary.m()));
        let expect: Vec<Rat> = c.b.iter().map(|b| b * &lambda).collect();
        prop_assert_eq!(&scaled.b, &expect);

        let m = random_character(&mut r, fan.dim());
        let shifted = construct_standard_boundary(&fan, &l.add(&divisor_of_character(&fan, &m).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(shifted.boundary.m(), c.boundary.m());
    }

    #[test]
    fn construction_on_random_face_fans(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let fan = random_face_fan(&mut r, n);
        let l = random_ample(&mut r, &fan);
        let c = construct_standard_boundary(&fan, &l).unwrap();
        prop_assert_eq!(is_k_polystable(&fan, &c.boundary).unwrap().barycenter, Some(zero(n)));
    }

    #[test]
    fn barycenter_and_vertex_sum_agree_on_rank_one(seed in any::<u64>(), n in 1usize..=3, matched in any::<bool>()) {
        let mut r = rng(seed);
        let fan = random_rank_one(&mut r, n);
        prop_assert_eq!(fan.num_rays(), n + 1);
        let m: Vec<BigInt> = if matched {
            let k = BigInt::from(r.gen_range(1..=3));
            relation_vector(&fan).into_iter().map(|c| c * &k).collect()
        } else {
            (0..=n).map(|_| BigInt::from(r.gen_range(1..=4))).collect()
        };
        let b = StandardBoundary::new(m).unwrap();
        let kps = is_k_polystable(&fan, &b).unwrap();
        prop_assert!(kps.is_log_fano);
        prop_assert_eq!(kps.is_k_polystable, condition2_rank1(&fan, &b).unwrap());
        if matched {
            prop_assert!(kps.is_k_polystable);
        }
    }
}
