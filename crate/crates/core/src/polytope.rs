//! Exact rational convex polytopes.
//!
//! Vertex enumeration intersects every `n`-subset of inequalities and keeps the
//! feasible points; facet enumeration does the dual thing on vertices. Volumes and
//! barycenters come from a pulling triangulation: the apex (lexicographically
//! smallest vertex by default) is coned over a triangulation of every facet that
//! does not contain it, recursively.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactlin::vecops::{add, combinations, fdot, is_zero_vec, lift, primitive_direction, scale, sub};
use crate::exactlin::{det, lp, nullspace, rank_of, solve, Field, Matrix};

/// The inequality `<x, normal> >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace<F> {
    pub normal: Vec<F>,
    pub rhs: F,
}

impl<F: Field> Halfspace<F> {
    pub fn new(normal: Vec<F>, rhs: F) -> Self {
        Self { normal, rhs }
    }

    /// `<x, normal> - rhs`; nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &[F]) -> F {
        fdot(x, &self.normal) - self.rhs.clone()
    }

    /// Rescales so the normal is a primitive integer vector.
    pub fn normalized(&self) -> Self {
        let (prim, factor) = primitive_direction(&self.normal);
        Self { normal: lift(&prim), rhs: self.rhs.clone() * factor }
    }
}

/// Intersection of finitely many halfspaces in `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope<F> {
    dim: usize,
    ineqs: Vec<Halfspace<F>>,
}

/// Convex hull of finitely many points, stored by its vertices in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPolytope<F> {
    dim: usize,
    vertices: Vec<Vec<F>>,
}

/// Which vertex of each face is used as the cone apex during triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApexChoice {
    #[default]
    LexMin,
    LexMax,
}

impl<F: Field> HPolytope<F> {
    pub fn new(dim: usize, ineqs: Vec<Halfspace<F>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        for h in &ineqs {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: h.normal.len() });
            }
            if is_zero_vec(&h.normal) {
                return Err(Error::InvalidInput("zero normal in inequality".into()));
            }
        }
        Ok(Self { dim, ineqs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Halfspace<F>] {
        &self.ineqs
    }

    pub fn contains(&self, x: &[F]) -> bool {
        self.ineqs.iter().all(|h| !h.slack(x).is_negative())
    }

    /// Same inequalities after normalizing each normal to a primitive integer vector.
    pub fn normalized(&self) -> Self {
        Self { dim: self.dim, ineqs: self.ineqs.iter().map(Halfspace::normalized).collect() }
    }

    fn normal_rank(&self) -> usize {
        let normals: Vec<Vec<F>> = self.ineqs.iter().map(|h| h.normal.clone()).collect();
        rank_of(&normals, self.dim)
    }

    /// Feasibility by LP over free variables split as `x = p - q`.
    fn is_feasible(&self) -> bool {
        let n = self.dim;
        let mut prog = lp::LinearProgram::new(2 * n);
        for h in &self.ineqs {
            let mut row = h.normal.clone();
            row.extend(h.normal.iter().map(|x| -x.clone()));
            prog.constraint(row, lp::Relation::Ge, h.rhs.clone());
        }
        prog.solve().is_feasible()
    }

    /// Nonzero `d` with `<d, normal> >= 0` for all inequalities, if one exists.
    /// Assumes the normals have full rank.
    fn recession_direction(&self) -> Option<Vec<F>> {
        let n = self.dim;
        let normals: Vec<Vec<F>> = self.ineqs.iter().map(|h| h.normal.clone()).collect();
        for subset in combinations(normals.len(), n - 1) {
            let rows: Vec<Vec<F>> = subset.iter().map(|&i| normals[i].clone()).collect();
            let m = Matrix::from_rows(rows, n).expect("consistent widths");
            let ker = nullspace(&m);
            if ker.len() != 1 {
                continue;
            }
            let d = &ker[0];
            for cand in [d.clone(), scale(d, &-F::one())] {
                if normals.iter().all(|a| !fdot(a, &cand).is_negative()) {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Exact vertex set.
    pub fn vertices(&self) -> Result<VPolytope<F>> {
        let n = self.dim;
        if self.normal_rank() < n {
            return Err(if self.is_feasible() { Error::Unbounded } else { Error::Empty });
        }
        let mut found: BTreeSet<Vec<F>> = BTreeSet::new();
        for subset in combinations(self.ineqs.len(), n) {
            let rows: Vec<Vec<F>> = subset.iter().map(|&i| self.ineqs[i].normal.clone()).collect();
            let rhs: Vec<F> = subset.iter().map(|&i| self.ineqs[i].rhs.clone()).collect();
            let m = Matrix::from_rows(rows, n).expect("consistent widths");
            let Ok(x) = solve(&m, &rhs) else { continue };
            if self.contains(&x) {
                found.insert(x);
            }
        }
        if found.is_empty() {
            return Err(Error::Empty);
        }
        if self.recession_direction().is_some() {
            return Err(Error::Unbounded);
        }
        Ok(VPolytope { dim: n, vertices: found.into_iter().collect() })
    }
}

/// Facets with the indices of the vertices lying on each.
#[derive(Debug, Clone)]
pub struct FacetIncidence<F> {
    pub facets: Vec<Halfspace<F>>,
    pub incidence: Vec<Vec<usize>>,
}

fn affine_dim<F: Field>(points: &[&Vec<F>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<F>> = points[1..].iter().map(|p| sub(p, base)).collect();
    rank_of(&diffs, base.len())
}

impl<F: Field> VPolytope<F> {
    /// Convex hull of `points`; points that are not vertices are discarded.
    pub fn from_points(dim: usize, points: Vec<Vec<F>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        let uniq: Vec<Vec<F>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if uniq.is_empty() {
            return Err(Error::Empty);
        }
        // Affinely independent points are all vertices.
        if affine_dim(&uniq.iter().collect::<Vec<_>>()) + 1 == uniq.len() {
            return Ok(Self { dim, vertices: uniq });
        }
        let vertices = (0..uniq.len())
            .filter(|&i| {
                let others: Vec<Vec<F>> =
                    uniq.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
                !lp::hull_contains(&others, &uniq[i])
            })
            .map(|i| uniq[i].clone())
            .collect();
        Ok(Self { dim, vertices })
    }

    /// Trusts the caller that every point is a vertex; sorts and deduplicates.
    pub fn from_vertices_unchecked(dim: usize, vertices: Vec<Vec<F>>) -> Self {
        let vertices = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Self { dim, vertices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<F>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn affine_dim(&self) -> usize {
        affine_dim(&self.vertices.iter().collect::<Vec<_>>())
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn contains(&self, x: &[F]) -> bool {
        lp::hull_contains(&self.vertices, x)
    }

    /// Facets and their vertex incidences.
    pub fn facet_incidence(&self) -> Result<FacetIncidence<F>> {
        let n = self.dim;
        if !self.is_full_dimensional() {
            return Err(Error::Degenerate);
        }
        let mut found: BTreeSet<Halfspace<F>> = BTreeSet::new();
        for subset in combinations(self.vertices.len(), n) {
            let base = &self.vertices[subset[0]];
            let diffs: Vec<Vec<F>> = subset[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
            let normal = if n == 1 {
                vec![F::one()]
            } else {
                let m = Matrix::from_rows(diffs, n).expect("consistent widths");
                let ker = nullspace(&m);
                if ker.len() != 1 {
                    continue;
                }
                ker.into_iter().next().expect("one kernel vector")
            };
            let h = Halfspace::new(normal.clone(), fdot(base, &normal));
            let slacks: Vec<F> = self.vertices.iter().map(|v| h.slack(v)).collect();
            let candidate = if slacks.iter().all(|s| !s.is_negative()) {
                h
            } else if slacks.iter().all(|s| !s.is_positive()) {
                Halfspace::new(scale(&normal, &-F::one()), -h.rhs)
            } else {
                continue;
            };
            found.insert(candidate.normalized());
        }
        let facets: Vec<Halfspace<F>> = found.into_iter().collect();
        let incidence = facets
            .iter()
            .map(|h| (0..self.vertices.len()).filter(|&i| h.slack(&self.vertices[i]).is_zero()).collect())
            .collect();
        Ok(FacetIncidence { facets, incidence })
    }

    /// Irredundant facet description with primitive integer normals.
    pub fn facets(&self) -> Result<HPolytope<F>> {
        let fi = self.facet_incidence()?;
        HPolytope::new(self.dim, fi.facets)
    }

    /// `{v : <u, v> >= -1 for all u in self}`; requires the origin in the interior.
    pub fn polar_dual(&self) -> Result<VPolytope<F>> {
        let fi = match self.facet_incidence() {
            Ok(fi) => fi,
            Err(Error::Degenerate) => return Err(Error::OriginNotInterior),
            Err(e) => return Err(e),
        };
        let mut verts = Vec::with_capacity(fi.facets.len());
        for h in &fi.facets {
            if !h.rhs.is_negative() {
                return Err(Error::OriginNotInterior);
            }
            let s = F::one() / -h.rhs.clone();
            verts.push(scale(&h.normal, &s));
        }
        Ok(Self::from_vertices_unchecked(self.dim, verts))
    }

    pub fn translate(&self, t: &[F]) -> Self {
        assert_eq!(t.len(), self.dim, "translation has wrong dimension");
        Self::from_vertices_unchecked(self.dim, self.vertices.iter().map(|v| add(v, t)).collect())
    }

    /// Dilation by `lambda > 0` about the origin.
    pub fn scale(&self, lambda: &F) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::InvalidInput("scale factor must be positive".into()));
        }
        Ok(Self::from_vertices_unchecked(self.dim, self.vertices.iter().map(|v| scale(v, lambda)).collect()))
    }

    /// Image under an invertible linear map.
    pub fn transform(&self, a: &Matrix<F>) -> Result<Self> {
        if a.nrows() != self.dim || a.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.nrows() });
        }
        if det(a)?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let image = self.vertices.iter().map(|v| a.rows_iter().map(|r| fdot(r, v)).collect()).collect();
        Ok(Self::from_vertices_unchecked(self.dim, image))
    }

    /// Pulling triangulation; each simplex is a list of `dim + 1` vertex indices.
    pub fn triangulate(&self, apex: ApexChoice) -> Result<Vec<Vec<usize>>> {
        let fi = self.facet_incidence()?;
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        Ok(self.triangulate_face(&all, self.dim, &fi.incidence, apex))
    }

    fn triangulate_face(
        &self,
        face: &[usize],
        dim: usize,
        facet_sets: &[Vec<usize>],
        apex: ApexChoice,
    ) -> Vec<Vec<usize>> {
        if dim == 0 {
            return vec![vec![face[0]]];
        }
        let a = match apex {
            ApexChoice::LexMin => *face.iter().min().expect("nonempty face"),
            ApexChoice::LexMax => *face.iter().max().expect("nonempty face"),
        };
        let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for fs in facet_sets {
            let s: Vec<usize> = face.iter().copied().filter(|i| fs.contains(i)).collect();
            if s.len() < dim || s.len() == face.len() {
                continue;
            }
            let pts: Vec<&Vec<F>> = s.iter().map(|&i| &self.vertices[i]).collect();
            if affine_dim(&pts) == dim - 1 {
                subfaces.insert(s);
            }
        }
        let mut out = Vec::new();
        for s in subfaces.into_iter().filter(|s| !s.contains(&a)) {
            for mut simplex in self.triangulate_face(&s, dim - 1, facet_sets, apex) {
                simplex.insert(0, a);
                out.push(simplex);
            }
        }
        out
    }

    /// `|det|` of the edge vectors from the first vertex (`dim!` times the volume).
    fn simplex_weight(&self, simplex: &[usize]) -> F {
        let base = &self.vertices[simplex[0]];
        let rows: Vec<Vec<F>> = simplex[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
        let m = Matrix::from_rows(rows, self.dim).expect("consistent widths");
        det(&m).expect("square").abs()
    }

    fn weighted_sums(&self, apex: ApexChoice) -> Result<(F, Vec<F>)> {
        let simplices = self.triangulate(apex)?;
        let mut total = F::zero();
        let mut moment = vec![F::zero(); self.dim];
        for s in &simplices {
            let w = self.simplex_weight(s);
            let mut centroid = vec![F::zero(); self.dim];
            for &i in s {
                centroid = add(&centroid, &self.vertices[i]);
            }
            moment = add(&moment, &scale(&centroid, &w));
            total = total + w;
        }
        // each centroid above is (dim+1) times the true centroid
        let k = F::from_bigint(&(self.dim + 1).into());
        Ok((total, scale(&moment, &(F::one() / k))))
    }

    pub fn volume(&self) -> Result<F> {
        let (total, _) = self.weighted_sums(ApexChoice::LexMin)?;
        let fact = (1..=self.dim).fold(F::one(), |acc, i| acc * F::from_bigint(&i.into()));
        Ok(total / fact)
    }

    pub fn barycenter(&self) -> Result<Vec<F>> {
        self.barycenter_with(ApexChoice::LexMin)
    }

    pub fn barycenter_with(&self, apex: ApexChoice) -> Result<Vec<F>> {
        let (total, moment) = self.weighted_sums(apex)?;
        if total.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(scale(&moment, &(F::one() / total)))
    }

    /// Vertex average (equals the barycenter for simplices).
    pub fn vertex_average(&self) -> Vec<F> {
        let mut s = vec![F::zero(); self.dim];
        for v in &self.vertices {
            s = add(&s, v);
        }
        let k = F::from_bigint(&self.vertices.len().into());
        scale(&s, &(F::one() / k))
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1 && self.is_full_dimensional()
    }

    /// Whether the origin lies in the interior.
    pub fn has_origin_in_interior(&self) -> bool {
        match self.facets() {
            Ok(h) => h.inequalities().iter().all(|f| f.rhs.is_negative()),
            Err(_) => false,
        }
    }
}
