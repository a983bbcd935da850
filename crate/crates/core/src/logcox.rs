//! Log class groups, log Cox gradings, orbifold charts and covers of weighted projective pairs.
//!
//! For a fan with scaled rays `m_rho u_rho`, the log class group is the cokernel of
//! `M -> Z^{Sigma(1)}, u -> (<u, m_rho u_rho>)_rho` and the orbifold fundamental group
//! of the regular locus is `N / <m_rho u_rho>`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{cokernel, hermite, int_rank, mat_vec, quotient_group, FinAbGroup};
use crate::fan::{check_fan_map, Fan};
use crate::kstability::{is_k_polystable, require_rank_one, require_valid, scaled_ray_sum, KpsReport};
use crate::toricdiv::StandardBoundary;
use crate::{IntMat, IntVec};

/// An element of the log class group in cokernel coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree {
    pub free: IntVec,
    /// Residues modulo the torsion invariant factors, in the same order.
    pub torsion: IntVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogClassGroup {
    pub group: FinAbGroup,
    /// `deg(x_rho)` for each ray, in ray order.
    pub degrees: Vec<Degree>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    /// Maximal cone whose scaled rays form the columns of `matrix`: every ray except
    /// the one with the lexicographically smallest generator.
    pub cone: Vec<usize>,
    pub matrix: IntMat,
    pub is_cover_of_projective_space: bool,
    pub pi1_orb: FinAbGroup,
    /// `(ray, m_rho)` for every ray.
    pub ramification: Vec<(usize, BigInt)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalChart {
    pub cone: Vec<usize>,
    /// `N / <m_rho u_rho : rho in cone>`.
    pub group: FinAbGroup,
    pub orders: Vec<BigInt>,
}

/// The equivalent rank-one conditions together with their witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Report {
    /// Barycenter test on `P_{-(K+Delta)}`.
    pub c1: bool,
    /// Vertex sum of `conv(m_rho u_rho)` vanishes.
    pub c2: bool,
    /// A toric cover by projective space ramified exactly along the boundary.
    pub c3: bool,
    /// Some homomorphism `Cl(X, Delta) -> Z` sends every `deg(x_rho)` to 1.
    pub c4: bool,
    pub kps: KpsReport,
    pub class_group: LogClassGroup,
    pub cover: CoverData,
}

/// Rows `j`: `(m_rho u_rho[j])_rho`. Its row space is the image of `M`.
pub fn relation_matrix(fan: &Fan, boundary: &StandardBoundary) -> Result<IntMat> {
    boundary.check_len(fan)?;
    let scaled = boundary.scaled_rays(fan);
    let rows = (0..fan.dim()).map(|j| scaled.iter().map(|v| v[j].clone()).collect()).collect();
    IntMat::from_rows(rows, fan.num_rays())
}

fn scaled_ray_matrix(fan: &Fan, boundary: &StandardBoundary) -> IntMat {
    IntMat::from_rows(boundary.scaled_rays(fan), fan.dim()).expect("rays have the fan dimension")
}

pub fn log_class_group(fan: &Fan, boundary: &StandardBoundary) -> Result<LogClassGroup> {
    let rel = relation_matrix(fan, boundary)?;
    if int_rank(&rel) < fan.dim() {
        return Err(Error::RaysDoNotSpan);
    }
    let coker = cokernel(&rel);
    let degrees = (0..fan.num_rays())
        .map(|i| {
            let (free, torsion) = coker.image(i);
            Degree { free, torsion }
        })
        .collect();
    Ok(LogClassGroup { group: coker.group, degrees })
}

fn condition4_of(cl: &LogClassGroup) -> bool {
    if cl.group.rank != 1 {
        return false;
    }
    let first = &cl.degrees[0].free[0];
    first.abs().is_one() && cl.degrees.iter().all(|d| &d.free[0] == first)
}

/// Whether the log Cox grading admits a one-parameter subgroup acting with weights `(1, ..., 1)`.
pub fn condition4(fan: &Fan, boundary: &StandardBoundary) -> Result<bool> {
    require_rank_one(fan, boundary)?;
    Ok(condition4_of(&log_class_group(fan, boundary)?))
}

/// `N / <m_rho u_rho>` over all rays.
pub fn orbifold_fundamental_group(fan: &Fan, boundary: &StandardBoundary) -> Result<FinAbGroup> {
    boundary.check_len(fan)?;
    Ok(quotient_group(&hermite(&scaled_ray_matrix(fan, boundary))))
}

pub fn universal_cover(fan: &Fan, boundary: &StandardBoundary) -> Result<CoverData> {
    require_rank_one(fan, boundary)?;
    let n = fan.dim();
    // Omit the ray with the lexicographically smallest generator; the cone is the
    // remaining rays in index order.
    let omitted = (0..fan.num_rays()).min_by(|&a, &b| fan.ray(a).cmp(fan.ray(b))).expect("n + 1 rays");
    let cone: Vec<usize> = (0..fan.num_rays()).filter(|&i| i != omitted).collect();
    let scaled = boundary.scaled_rays(fan);
    let cols: Vec<IntVec> = cone.iter().map(|&i| scaled[i].clone()).collect();
    let matrix = IntMat::from_cols(&cols, n)?;

    // The cone map alone only fixes the omitted ray up to a positive multiple.
    let minus_ones = vec![-BigInt::one(); n];
    let lands_exactly = mat_vec(&matrix, &minus_ones) == scaled[omitted];
    let is_cover = lands_exactly && check_fan_map(&matrix, &Fan::projective_space(n), fan)?;

    Ok(CoverData {
        cone,
        matrix,
        is_cover_of_projective_space: is_cover,
        pi1_orb: orbifold_fundamental_group(fan, boundary)?,
        ramification: boundary.m().iter().cloned().enumerate().collect(),
    })
}

/// The chart `C^n / G -> U_sigma` induced by `e_i -> m_i u_i`.
pub fn local_chart(fan: &Fan, boundary: &StandardBoundary, cone: &[usize]) -> Result<LocalChart> {
    require_valid(fan)?;
    boundary.check_len(fan)?;
    let mut sorted = cone.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cone.len() || sorted.iter().any(|&i| i >= fan.num_rays()) {
        return Err(Error::ConeNotInFan(cone.to_vec()));
    }
    let is_face = fan.max_cones().iter().any(|c| sorted.iter().all(|i| c.contains(i)));
    if !is_face {
        return Err(Error::ConeNotInFan(cone.to_vec()));
    }
    let scaled = boundary.scaled_rays(fan);
    let gens = IntMat::from_rows(sorted.iter().map(|&i| scaled[i].clone()).collect(), fan.dim())?;
    if sorted.len() != fan.dim() || int_rank(&gens) != fan.dim() {
        return Err(Error::NotSimplicialCone);
    }
    Ok(LocalChart {
        group: quotient_group(&gens),
        orders: sorted.iter().map(|&i| boundary.m()[i].clone()).collect(),
        cone: sorted,
    })
}

pub fn rank1_report(fan: &Fan, boundary: &StandardBoundary) -> Result<Rank1Report> {
    require_rank_one(fan, boundary)?;
    let kps = is_k_polystable(fan, boundary)?;
    let c2 = scaled_ray_sum(fan, boundary).iter().all(Zero::is_zero);
    let cover = universal_cover(fan, boundary)?;
    let class_group = log_class_group(fan, boundary)?;
    let c4 = condition4_of(&class_group);
    let report = Rank1Report {
        c1: kps.is_k_polystable,
        c2,
        c3: cover.is_cover_of_projective_space,
        c4,
        kps,
        class_group,
        cover,
    };
    let flags = [report.c1, report.c2, report.c3, report.c4];
    if flags.iter().any(|&f| f != flags[0]) {
        return Err(Error::EquivalenceViolation(format!(
            "c1={} c2={} c3={} c4={}",
            report.c1, report.c2, report.c3, report.c4
        )));
    }
    Ok(report)
}

/// `[N : <m_rho u_rho>]` read off the Hermite form (product of pivots); `None` if infinite.
pub fn lattice_index(fan: &Fan, boundary: &StandardBoundary) -> Result<Option<BigInt>> {
    boundary.check_len(fan)?;
    let h = hermite(&scaled_ray_matrix(fan, boundary));
    if h.nrows() < fan.dim() {
        return Ok(None);
    }
    let mut idx = BigInt::one();
    for row in h.rows_iter() {
        let pivot = row.iter().find(|x| !x.is_zero()).expect("hermite drops zero rows");
        idx *= pivot.abs();
    }
    Ok(Some(idx))
}
