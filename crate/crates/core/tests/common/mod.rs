#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torickps::exactlin::vecops::primitive_direction;
use torickps::exactlin::{det, nullspace, to_field};
use torickps::{Fan, IntMat, Rat, VPolytope};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn zero(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn neg(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x).collect()
}

fn lift(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    primitive_direction(&lift(v)).0
}

pub fn rank_one(rays: &[&[i64]]) -> Fan {
    Fan::from_rank_one_rays(rays.iter().map(|r| ints(r)).collect()).unwrap()
}

pub fn cyclic(rays: &[&[i64]]) -> Fan {
    let k = rays.len();
    let cones: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    let cones: Vec<&[usize]> = cones.iter().map(|c| c.as_slice()).collect();
    Fan::from_i64(2, rays, &cones).unwrap()
}

pub fn p1xp1() -> Fan {
    cyclic(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])
}

pub fn f1() -> Fan {
    cyclic(&[&[1, 0], &[0, 1], &[-1, 1], &[0, -1]])
}

pub fn f2() -> Fan {
    cyclic(&[&[1, 0], &[0, 1], &[-1, 2], &[0, -1]])
}

pub fn dp6() -> Fan {
    cyclic(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]])
}

pub fn p1xp2() -> Fan {
    Fan::from_i64(
        3,
        &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, -1, -1]],
        &[&[0, 2, 3], &[0, 2, 4], &[0, 3, 4], &[1, 2, 3], &[1, 2, 4], &[1, 3, 4]],
    )
    .unwrap()
}

pub fn p112() -> Fan {
    rank_one(&[&[-1, -2], &[1, 0], &[0, 1]])
}

pub fn p123() -> Fan {
    rank_one(&[&[-2, -3], &[1, 0], &[0, 1]])
}

pub fn p235() -> Fan {
    rank_one(&[&[-4, 5], &[1, 0], &[1, -2]])
}

/// Complete simplicial fans used across the suites.
pub fn named_fans() -> Vec<(&'static str, Fan)> {
    vec![
        ("p1", Fan::projective_space(1)),
        ("p2", Fan::projective_space(2)),
        ("p3", Fan::projective_space(3)),
        ("p1xp1", p1xp1()),
        ("f1", f1()),
        ("f2", f2()),
        ("dp6", dp6()),
        ("p1xp2", p1xp2()),
        ("p112", p112()),
        ("p123", p123()),
        ("p235", p235()),
    ]
}

/// Random full-dimensional polytope with the vertex average moved to the origin.
pub fn random_polytope(rng: &mut ChaCha8Rng, n: usize) -> VPolytope {
    loop {
        let k = rng.gen_range(n + 1..=n + 5);
        let pts: Vec<Vec<Rat>> =
            (0..k).map(|_| (0..n).map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=2))).collect()).collect();
        if let Ok(p) = VPolytope::from_points(n, pts) {
            if p.is_full_dimensional() {
                return p.translate(&neg(&p.vertex_average()));
            }
        }
    }
}

pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> VPolytope {
    loop {
        let pts: Vec<Vec<Rat>> =
            (0..=n).map(|_| (0..n).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()).collect();
        let p = VPolytope::from_points(n, pts).unwrap();
        if p.is_simplex() {
            return p;
        }
    }
}

pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMat {
    let mut m = IntMat::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            if rng.gen_bool(0.3) {
                m.row_mut(i).iter_mut().for_each(|x| *x = -x.clone());
            }
            continue;
        }
        let k = BigInt::from(rng.gen_range(-2..=2));
        let src = m.row(j).to_vec();
        for (a, b) in m.row_mut(i).iter_mut().zip(src) {
            *a += &k * b;
        }
    }
    m
}

/// Face fan of a random integral simplicial polytope with the origin inside: complete,
/// simplicial and projective.
pub fn random_face_fan(rng: &mut ChaCha8Rng, n: usize) -> Fan {
    loop {
        let k = rng.gen_range(n + 1..=n + 4);
        let pts: Vec<Vec<Rat>> = (0..k).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3), 1)).collect()).collect();
        let Ok(p) = VPolytope::from_points(n, pts) else { continue };
        if !p.is_full_dimensional() || !p.has_origin_in_interior() {
            continue;
        }
        let fi = p.facet_incidence().unwrap();
        if fi.incidence.iter().any(|s| s.len() != n) {
            continue;
        }
        let rays: Vec<Vec<BigInt>> = p.vertices().iter().map(|v| primitive_direction(v).0).collect();
        if let Ok(fan) = Fan::new(n, rays, fi.incidence.clone()) {
            if fan.validate().is_valid {
                return fan;
            }
        }
    }
}

/// Random Picard-rank-one fan in dimension `n`.
pub fn random_rank_one(rng: &mut ChaCha8Rng, n: usize) -> Fan {
    loop {
        let basis: Vec<Vec<BigInt>> =
            (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect()).collect();
        if det(&to_field::<Rat>(&IntMat::from_rows(basis.clone(), n).unwrap())).unwrap().is_zero() {
            continue;
        }
        let prim: Vec<Vec<BigInt>> = basis.iter().map(|v| primitive(v)).collect();
        let mut last = vec![BigInt::zero(); n];
        for v in &prim {
            let lambda = BigInt::from(rng.gen_range(1..=4));
            for (a, x) in last.iter_mut().zip(v) {
                *a -= &lambda * x;
            }
        }
        let mut rays = vec![primitive(&last)];
        rays.extend(prim);
        let fan = Fan::from_rank_one_rays(rays).unwrap();
        if fan.validate().picard_rank_one {
            return fan;
        }
    }
}

/// Positive primitive `c` with `sum c_rho u_rho = 0` on a rank-one fan.
pub fn relation_vector(fan: &Fan) -> Vec<BigInt> {
    let cols = IntMat::from_cols(fan.rays(), fan.dim()).unwrap();
    let ker = nullspace(&to_field::<Rat>(&cols));
    assert_eq!(ker.len(), 1);
    let (mut c, _) = primitive_direction(&ker[0]);
    if c[0].is_negative() {
        c.iter_mut().for_each(|x| *x = -x.clone());
    }
    c
}
