//! Torus-invariant divisors and their polytopes.
//!
//! A divisor is a coefficient vector aligned with the fan's ray order. Its
//! polytope is `{u : <u, u_rho> >= -a_rho}` in `M_Q`, and ampleness is decided by
//! comparing the normal fan of that polytope with the fan itself.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::lp::{LinearProgram, LpOutcome, Relation};
use crate::exactlin::vecops::{fdot, lift, scale};
use crate::exactlin::{solve, Matrix};
use crate::fan::Fan;
use crate::polytope::Halfspace;
use crate::{HPolytope, IntVec, Rat, RatVec, VPolytope};

/// `sum a_rho D_rho` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToricDivisor {
    coeffs: Vec<Rat>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![Rat::zero(); len])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &ToricDivisor) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, lambda: &Rat) -> Self {
        Self::new(scale(&self.coeffs, lambda))
    }

    pub fn negate(&self) -> Self {
        self.scale(&-Rat::one())
    }

    fn check_len(&self, fan: &Fan) -> Result<()> {
        if self.len() != fan.num_rays() {
            return Err(Error::InvalidDivisor(format!("{} coefficients for {} rays", self.len(), fan.num_rays())));
        }
        Ok(())
    }
}

/// Boundary `sum (1 - 1/m_rho) D_rho` stored by its ramification indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardBoundary {
    m: Vec<BigInt>,
}

impl StandardBoundary {
    pub fn new(m: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = m.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidBoundary(format!("ramification index {bad} is not positive")));
        }
        Ok(Self { m })
    }

    pub fn from_u64(m: &[u64]) -> Result<Self> {
        Self::new(m.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The empty boundary (`m_rho = 1` everywhere).
    pub fn trivial(len: usize) -> Self {
        Self { m: vec![BigInt::one(); len] }
    }

    pub fn m(&self) -> &[BigInt] {
        &self.m
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.m.iter().all(One::is_one)
    }

    /// Boundary coefficients `1 - 1/m_rho`, each in `[0, 1)`.
    pub fn coefficients(&self) -> Vec<Rat> {
        self.m.iter().map(|m| Rat::one() - Rat::new(BigInt::one(), m.clone())).collect()
    }

    /// `-(K + Delta) = sum (1/m_rho) D_rho`.
    pub fn anti_log_canonical(&self) -> ToricDivisor {
        ToricDivisor::new(self.m.iter().map(|m| Rat::new(BigInt::one(), m.clone())).collect())
    }

    pub(crate) fn check_len(&self, fan: &Fan) -> Result<()> {
        if self.len() != fan.num_rays() {
            return Err(Error::InvalidBoundary(format!(
                "{} ramification indices for {} rays",
                self.len(),
                fan.num_rays()
            )));
        }
        Ok(())
    }

    /// The scaled rays `m_rho u_rho`.
    pub fn scaled_rays(&self, fan: &Fan) -> Vec<IntVec> {
        fan.rays().iter().zip(&self.m).map(|(u, m)| u.iter().map(|x| x * m).collect()).collect()
    }
}

/// `K = -sum D_rho`.
pub fn canonical_divisor(fan: &Fan) -> ToricDivisor {
    ToricDivisor::new(vec![-Rat::one(); fan.num_rays()])
}

/// Divisor of the character `m`: coefficients `-<m, u_rho>`.
pub fn divisor_of_character(fan: &Fan, m: &[Rat]) -> Result<ToricDivisor> {
    if m.len() != fan.dim() {
        return Err(Error::DimensionMismatch { expected: fan.dim(), found: m.len() });
    }
    Ok(ToricDivisor::new((0..fan.num_rays()).map(|i| -fdot(m, &fan.ray_rat(i))).collect()))
}

/// `P_D = {u : <u, u_rho> >= -a_rho}`.
pub fn polytope_of(fan: &Fan, d: &ToricDivisor) -> Result<HPolytope> {
    d.check_len(fan)?;
    let ineqs = (0..fan.num_rays()).map(|i| Halfspace::new(fan.ray_rat(i), -d.coeffs[i].clone())).collect();
    HPolytope::new(fan.dim(), ineqs)
}

/// `conv(m_rho u_rho)` in `N_Q`.
pub fn dual_vertices(fan: &Fan, boundary: &StandardBoundary) -> Result<VPolytope> {
    boundary.check_len(fan)?;
    let pts = boundary.scaled_rays(fan).iter().map(|v| lift(v)).collect();
    VPolytope::from_points(fan.dim(), pts)
}

/// [`dual_vertices`], cross-checked against the polar dual of `P_{-(K+Delta)}`.
pub fn dual_vertices_checked(fan: &Fan, boundary: &StandardBoundary) -> Result<VPolytope> {
    let direct = dual_vertices(fan, boundary)?;
    let p = polytope_of(fan, &boundary.anti_log_canonical())?.vertices()?;
    let dual = p.polar_dual()?;
    if dual != direct {
        return Err(Error::InternalVerificationFailed("conv(m u) differs from the polar dual of P_-(K+D)".into()));
    }
    Ok(direct)
}

/// `P_D` bounded, full-dimensional, and with normal fan equal to `fan`.
pub fn is_ample(fan: &Fan, d: &ToricDivisor) -> bool {
    let Ok(h) = polytope_of(fan, d) else { return false };
    let Ok(p) = h.vertices() else { return false };
    if !p.is_full_dimensional() {
        return false;
    }
    match Fan::normal_fan(&p) {
        Ok(nf) => nf.fans_equal(fan),
        Err(_) => false,
    }
}

/// An ample divisor on a complete simplicial fan, by exact LP.
///
/// Unknowns are the coefficients `a_rho >= 0`. For each maximal cone `sigma` the
/// local linear function `m_sigma` solves `<m_sigma, u_rho> = -a_rho` on the rays of
/// `sigma`; strict convexity is imposed as `<m_sigma, u_rho> + a_rho >= 1` for every
/// other ray. Among feasible points the one minimizing `sum a_rho` is returned.
pub fn find_ample(fan: &Fan) -> Result<ToricDivisor> {
    let report = fan.validate();
    if !report.is_valid {
        return Err(Error::InvalidFan(report.issues.join("; ")));
    }
    if !report.is_complete {
        return Err(Error::NotComplete);
    }
    if !report.is_simplicial {
        return Err(Error::NotSimplicial);
    }
    let n = fan.dim();
    let k = fan.num_rays();
    let mut lp = LinearProgram::new(k).minimize(vec![Rat::one(); k]);
    for cone in fan.max_cones() {
        let rows: Vec<RatVec> = cone.iter().map(|&i| fan.ray_rat(i)).collect();
        let u_sigma = Matrix::from_rows(rows, n)?;
        // m_sigma = sum_j a_{cone[j]} * w_j with w_j = -U^{-1} e_j
        let w: Vec<RatVec> = (0..n)
            .map(|j| {
                let e: RatVec = (0..n).map(|t| if t == j { -Rat::one() } else { Rat::zero() }).collect();
                solve(&u_sigma, &e)
            })
            .collect::<Result<_>>()?;
        for rho in (0..k).filter(|r| !cone.contains(r)) {
            let u = fan.ray_rat(rho);
            let mut coeffs = vec![Rat::zero(); k];
            for (j, &c) in cone.iter().enumerate() {
                coeffs[c] = fdot(&w[j], &u);
            }
            coeffs[rho] += Rat::one();
            lp.constraint(coeffs, Relation::Ge, Rat::one());
        }
    }
    let x = match lp.solve() {
        LpOutcome::Optimal { x, .. } => x,
        LpOutcome::Infeasible => return Err(Error::NoAmpleDivisor),
        LpOutcome::Unbounded => return Err(Error::InternalVerificationFailed("ample-divisor LP unbounded".into())),
    };
    let d = ToricDivisor::new(x);
    if !is_ample(fan, &d) {
        return Err(Error::InternalVerificationFailed("LP solution is not ample".into()));
    }
    Ok(d)
}
