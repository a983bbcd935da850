//! K-polystability of toric pairs and standard-coefficient boundaries.
//!
//! A toric log Fano pair `(X, Delta)` is K-polystable exactly when the polytope
//! of `-(K + Delta)` has its barycenter at the origin. Starting from any ample
//! divisor `L`, translating `P_L` so that its barycenter is the origin and then
//! shrinking it so every facet sits at distance `1/m_rho` (with integral `m_rho`)
//! produces a boundary with standard coefficients for which the pair is
//! K-polystable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::vecops::fdot;
use crate::fan::Fan;
use crate::toricdiv::{is_ample, polytope_of, StandardBoundary, ToricDivisor};
use crate::{IntVec, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KpsReport {
    pub is_log_fano: bool,
    /// Barycenter of `P_{-(K+Delta)}`; `None` when that polytope is unbounded or degenerate.
    pub barycenter: Option<RatVec>,
    pub is_k_polystable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryConstruction {
    /// Barycenter of `P_L`.
    pub u_b: RatVec,
    /// Coefficients of the translated divisor, all positive.
    pub b: Vec<Rat>,
    /// lcm of the numerators of the `b_rho`.
    pub l: BigInt,
    pub boundary: StandardBoundary,
    /// Recheck of the resulting pair (always K-polystable).
    pub report: KpsReport,
}

pub(crate) fn require_valid(fan: &Fan) -> Result<crate::fan::FanReport> {
    let report = fan.validate();
    if !report.is_valid {
        return Err(Error::InvalidFan(report.issues.join("; ")));
    }
    Ok(report)
}

/// Decides K-polystability of `(X_fan, Delta)` by the barycenter criterion.
pub fn is_k_polystable(fan: &Fan, boundary: &StandardBoundary) -> Result<KpsReport> {
    require_valid(fan)?;
    boundary.check_len(fan)?;
    Ok(kps_report_unchecked(fan, boundary))
}

fn kps_report_unchecked(fan: &Fan, boundary: &StandardBoundary) -> KpsReport {
    let d = boundary.anti_log_canonical();
    let is_log_fano = is_ample(fan, &d);
    let barycenter = polytope_of(fan, &d).and_then(|h| h.vertices()).and_then(|p| p.barycenter()).ok();
    let at_origin = barycenter.as_ref().is_some_and(|b| b.iter().all(Zero::is_zero));
    KpsReport { is_log_fano, barycenter, is_k_polystable: is_log_fano && at_origin }
}

/// Builds a standard-coefficient boundary making the pair K-polystable, from an ample `L`.
pub fn construct_standard_boundary(fan: &Fan, ample: &ToricDivisor) -> Result<BoundaryConstruction> {
    require_valid(fan)?;
    if ample.len() != fan.num_rays() || !is_ample(fan, ample) {
        return Err(Error::NotAmple);
    }
    let p = polytope_of(fan, ample)?.vertices()?;
    let u_b = p.barycenter()?;

    // P_L - u_b = {u : <u, u_rho> >= -(a_rho + <u_b, u_rho>)}
    let b: Vec<Rat> = ample.coeffs().iter().enumerate().map(|(i, a)| a + fdot(&u_b, &fan.ray_rat(i))).collect();
    if let Some(bad) = b.iter().position(|x| !x.is_positive()) {
        return Err(Error::InternalVerificationFailed(format!(
            "translated coefficient b[{bad}] = {} is not positive",
            b[bad]
        )));
    }
    let l = b.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.numer()));
    let m: Vec<BigInt> = b.iter().map(|x| &l * x.denom() / x.numer()).collect();
    let boundary = StandardBoundary::new(m)?;

    let report = kps_report_unchecked(fan, &boundary);
    if !report.is_k_polystable {
        return Err(Error::InternalVerificationFailed(format!("constructed boundary is not K-polystable: {report:?}")));
    }
    Ok(BoundaryConstruction { u_b, b, l, boundary, report })
}

/// `sum m_rho u_rho`, the scaled ray sum.
pub fn scaled_ray_sum(fan: &Fan, boundary: &StandardBoundary) -> IntVec {
    let mut acc = vec![BigInt::zero(); fan.dim()];
    for v in boundary.scaled_rays(fan) {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
    }
    acc
}

pub(crate) fn require_rank_one(fan: &Fan, boundary: &StandardBoundary) -> Result<()> {
    if !require_valid(fan)?.picard_rank_one {
        return Err(Error::NotRankOne);
    }
    boundary.check_len(fan)
}

/// On a Picard-rank-one fan: whether `conv(m_rho u_rho)` has barycenter zero.
///
/// That polytope is a simplex, so this is the vanishing of `sum m_rho u_rho`.
pub fn condition2_rank1(fan: &Fan, boundary: &StandardBoundary) -> Result<bool> {
    require_rank_one(fan, boundary)?;
    Ok(scaled_ray_sum(fan, boundary).iter().all(Zero::is_zero))
}
