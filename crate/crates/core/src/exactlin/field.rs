use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field.
///
/// All polytope and linear-algebra routines are written against this trait.
/// Implementations must be exact: equality tests on results are meaningful.
pub trait Field: Num + Signed + Clone + Ord + Debug + Display + Send + Sync + 'static {
    fn from_bigint(n: &BigInt) -> Self;

    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Self {
        Self::from_bigint(numer) / Self::from_bigint(denom)
    }

    /// Numerator and positive denominator in lowest terms.
    fn to_ratio(&self) -> (BigInt, BigInt);

    fn approx_f64(&self) -> f64 {
        let (n, d) = self.to_ratio();
        ToPrimitive::to_f64(&BigRational::new(n, d)).unwrap_or(f64::NAN)
    }
}

impl Field for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_ratio(numer: &BigInt, denom: &BigInt) -> Self {
        BigRational::new(numer.clone(), denom.clone())
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
}

// Fixed-width rationals panic on overflow rather than silently wrapping.
impl Field for Ratio<i64> {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.to_i64().expect("integer does not fit in i64"))
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Field for Ratio<i128> {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.to_i128().expect("integer does not fit in i128"))
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational<F: Field>(x: &F) -> String {
    let (n, d) = x.to_ratio();
    if d == BigInt::from(1) {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}
