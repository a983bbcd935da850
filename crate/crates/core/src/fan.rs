//! Complete and incomplete polyhedral fans in `N = Z^n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::lp::{self, LinearProgram, Relation};
use crate::exactlin::vecops::{combinations, content, fdot, lift};
use crate::exactlin::{mat_vec, nullspace, rank_of, Field, IntMat, Matrix};
use crate::polytope::VPolytope;
use crate::{IntVec, Rat};

/// Rays are primitive integer vectors; maximal cones are sorted ray-index sets.
///
/// Ray order is part of the data: divisors and boundaries are aligned with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVec>,
    max_cones: Vec<Vec<usize>>,
}

/// Outcome of [`Fan::validate`]. Never an error: problems are listed in `issues`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FanReport {
    pub is_valid: bool,
    pub is_complete: bool,
    pub is_simplicial: bool,
    pub picard_rank_one: bool,
    pub issues: Vec<String>,
}

impl Fan {
    /// Checks shapes and index ranges only; geometric checks live in [`Fan::validate`].
    pub fn new(dim: usize, rays: Vec<IntVec>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidFan("dimension must be positive".into()));
        }
        for r in &rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for c in max_cones {
            if c.is_empty() {
                return Err(Error::InvalidFan("empty maximal cone".into()));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("ray index {bad} out of range")));
            }
            let set: BTreeSet<usize> = c.into_iter().collect();
            cones.push(set.into_iter().collect());
        }
        Ok(Self { dim, rays, max_cones: cones })
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Self> {
        Self::new(
            dim,
            rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// Fan of `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`, all `n`-subsets as cones.
    pub fn projective_space(n: usize) -> Self {
        let mut rays: Vec<IntVec> =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        rays.push(vec![-BigInt::one(); n]);
        Self { dim: n, rays, max_cones: combinations(n + 1, n) }
    }

    /// Complete simplicial fan whose cones are all `n`-subsets of `n + 1` rays.
    pub fn from_rank_one_rays(rays: Vec<IntVec>) -> Result<Self> {
        let n = rays.len().checked_sub(1).filter(|&n| n > 0).ok_or(Error::NotRankOne)?;
        Self::new(n, rays, combinations(n + 1, n))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, i: usize) -> &IntVec {
        &self.rays[i]
    }

    pub fn ray_rat(&self, i: usize) -> Vec<Rat> {
        lift(&self.rays[i])
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    fn cone_generators(&self, cone: &[usize]) -> Vec<Vec<Rat>> {
        cone.iter().map(|&i| self.ray_rat(i)).collect()
    }

    fn cone_rank(&self, cone: &[usize]) -> usize {
        rank_of(&self.cone_generators(cone), self.dim)
    }

    /// Position of a maximal cone given as an index set in any order.
    pub fn find_max_cone(&self, cone: &[usize]) -> Option<usize> {
        let set: BTreeSet<usize> = cone.iter().copied().collect();
        let key: Vec<usize> = set.into_iter().collect();
        self.max_cones.iter().position(|c| *c == key)
    }

    /// Facets of a full-dimensional cone, each as the sorted set of its rays.
    pub fn cone_facets(&self, cone: &[usize]) -> Vec<Vec<usize>> {
        let n = self.dim;
        let gens = self.cone_generators(cone);
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for subset in combinations(cone.len(), n - 1) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| gens[i].clone()).collect();
            let m = Matrix::from_rows(rows, n).expect("consistent widths");
            let ker = nullspace(&m);
            if ker.len() != 1 {
                continue;
            }
            let vals: Vec<Rat> = gens.iter().map(|g| fdot(g, &ker[0])).collect();
            let one_sided = vals.iter().all(|v| !v.is_negative()) || vals.iter().all(|v| !v.is_positive());
            if one_sided {
                out.insert(cone.iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(&i, _)| i).collect());
            }
        }
        out.into_iter().collect()
    }

    /// Whether `sigma ∩ tau` is the cone on their shared rays and a face of both.
    fn meet_in_common_face(&self, sigma: &[usize], tau: &[usize]) -> bool {
        let n = self.dim;
        let shared: Vec<usize> = sigma.iter().copied().filter(|i| tau.contains(i)).collect();
        // separating functional m = p - q
        let mut prog = LinearProgram::<Rat>::new(2 * n);
        let split = |u: &[Rat]| -> Vec<Rat> {
            let mut row = u.to_vec();
            row.extend(u.iter().map(|x| -x.clone()));
            row
        };
        for &i in sigma.iter().chain(tau) {
            let u = self.ray_rat(i);
            if shared.contains(&i) {
                prog.constraint(split(&u), Relation::Eq, Rat::zero());
            } else if sigma.contains(&i) {
                prog.constraint(split(&u), Relation::Ge, Rat::one());
            } else {
                prog.constraint(split(&u), Relation::Le, -Rat::one());
            }
        }
        prog.solve().is_feasible()
    }

    pub fn validate(&self) -> FanReport {
        let n = self.dim;
        let mut issues = Vec::new();

        for (i, r) in self.rays.iter().enumerate() {
            let c = content(r);
            if c.is_zero() {
                issues.push(format!("ray {i} is zero"));
            } else if !c.is_one() {
                issues.push(format!("ray {i} is not primitive"));
            }
        }
        let mut seen: BTreeMap<&IntVec, usize> = BTreeMap::new();
        for (i, r) in self.rays.iter().enumerate() {
            if let Some(j) = seen.insert(r, i) {
                issues.push(format!("rays {j} and {i} coincide"));
            }
        }
        for i in 0..self.rays.len() {
            if !self.max_cones.iter().any(|c| c.contains(&i)) {
                issues.push(format!("ray {i} lies in no maximal cone"));
            }
        }
        if !issues.is_empty() {
            return FanReport { issues, ..FanReport::default() };
        }

        for (k, c) in self.max_cones.iter().enumerate() {
            let gens = self.cone_generators(c);
            if lp::hull_contains(&gens, &vec![Rat::zero(); n]) {
                issues.push(format!("cone {k} is not strongly convex"));
                continue;
            }
            for (pos, &i) in c.iter().enumerate() {
                let others: Vec<Vec<Rat>> =
                    gens.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, g)| g.clone()).collect();
                if lp::cone_contains(&others, &gens[pos]) {
                    issues.push(format!("ray {i} is not extremal in cone {k}"));
                }
            }
        }
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let (s, t) = (&self.max_cones[a], &self.max_cones[b]);
                if s.iter().all(|i| t.contains(i)) || t.iter().all(|i| s.contains(i)) {
                    issues.push(format!("cones {a} and {b} are nested"));
                } else if !self.meet_in_common_face(s, t) {
                    issues.push(format!("cones {a} and {b} do not meet in a common face"));
                }
            }
        }
        if !issues.is_empty() {
            return FanReport { issues, ..FanReport::default() };
        }

        let full_dim = self.max_cones.iter().all(|c| self.cone_rank(c) == n);
        let is_simplicial = full_dim && self.max_cones.iter().all(|c| c.len() == n);
        let is_complete = full_dim && {
            let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for c in &self.max_cones {
                for f in self.cone_facets(c) {
                    *count.entry(f).or_default() += 1;
                }
            }
            count.values().all(|&v| v == 2)
        };
        if !full_dim {
            issues.push("some maximal cone is not full-dimensional".into());
        }
        FanReport {
            is_valid: true,
            is_complete,
            is_simplicial,
            picard_rank_one: is_complete && is_simplicial && self.rays.len() == n + 1,
            issues,
        }
    }

    /// Normal fan of a full-dimensional polytope in `M_Q`; rays are primitive inner facet normals.
    pub fn normal_fan(p: &VPolytope<Rat>) -> Result<Self> {
        let fi = p.facet_incidence()?;
        let rays = fi.facets.iter().map(|h| h.normal.iter().map(|x| x.to_ratio().0).collect()).collect();
        let cones = (0..p.num_vertices())
            .map(|v| (0..fi.facets.len()).filter(|&j| fi.incidence[j].contains(&v)).collect())
            .collect();
        Self::new(p.dim(), rays, cones)
    }

    /// Equal rays (as vectors) and equal cones after matching rays.
    pub fn fans_equal(&self, other: &Fan) -> bool {
        fn key(f: &Fan) -> (BTreeSet<&IntVec>, BTreeSet<Vec<&IntVec>>) {
            let rays = f.rays.iter().collect();
            let cones = f
                .max_cones
                .iter()
                .map(|c| {
                    let mut v: Vec<&IntVec> = c.iter().map(|&i| &f.rays[i]).collect();
                    v.sort();
                    v
                })
                .collect();
            (rays, cones)
        }
        self.dim == other.dim && key(self) == key(other)
    }

    /// Permutes rays so that `new[i] = old[perm[i]]`, rewriting cones accordingly.
    pub fn permute_rays(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rays.len() || perm.iter().collect::<BTreeSet<_>>().len() != perm.len() {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let rays = perm.iter().map(|&o| self.rays[o].clone()).collect();
        let cones = self.max_cones.iter().map(|c| c.iter().map(|&o| inverse[o]).collect()).collect();
        Self::new(self.dim, rays, cones)
    }

    /// Image of the fan under an integer linear map (rays are re-made primitive).
    pub fn transform(&self, a: &IntMat) -> Result<Self> {
        if a.nrows() != self.dim || a.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.nrows() });
        }
        let rays = self
            .rays
            .iter()
            .map(|r| {
                let img = mat_vec(a, r);
                let g = content(&img);
                if g.is_zero() {
                    img
                } else {
                    img.into_iter().map(|x| x / &g).collect()
                }
            })
            .collect();
        Self::new(self.dim, rays, self.max_cones.clone())
    }
}

/// Whether the linear map `b` sends every maximal cone of `source` onto a maximal cone of `target`.
pub fn check_fan_map(b: &IntMat, source: &Fan, target: &Fan) -> Result<bool> {
    let n = source.dim();
    if target.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: target.dim() });
    }
    if b.nrows() != n || b.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if b.nrows() != n { b.nrows() } else { b.ncols() },
        });
    }
    for cone in source.max_cones() {
        let images: Vec<Vec<Rat>> = cone.iter().map(|&i| lift(&mat_vec(b, source.ray(i)))).collect();
        if images.iter().any(|v| v.iter().all(Zero::is_zero)) {
            return Ok(false);
        }
        let hit = target.max_cones().iter().any(|t| {
            let gens = target.cone_generators(t);
            images.iter().all(|v| lp::cone_contains(&gens, v)) && gens.iter().all(|g| lp::cone_contains(&images, g))
        });
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}
