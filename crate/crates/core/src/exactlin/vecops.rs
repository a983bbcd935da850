use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;

pub fn fdot<F: Field>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn scale<F: Field>(a: &[F], s: &F) -> Vec<F> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn is_zero_vec<F: Field>(a: &[F]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn lift<F: Field>(v: &[BigInt]) -> Vec<F> {
    v.iter().map(F::from_bigint).collect()
}

/// Positive multiple of a nonzero rational vector that is a primitive integer
/// vector, together with the multiplier.
pub fn primitive_direction<F: Field>(v: &[F]) -> (Vec<BigInt>, F) {
    let parts: Vec<(BigInt, BigInt)> = v.iter().map(|x| x.to_ratio()).collect();
    let l = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let ints: Vec<BigInt> = parts.iter().map(|(n, d)| n * (&l / d)).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (ints, F::one());
    }
    let prim = ints.iter().map(|x| x / &g).collect();
    (prim, F::from_ratio(&l, &g))
}

/// gcd of the entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
