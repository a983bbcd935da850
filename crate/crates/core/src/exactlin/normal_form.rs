//! Integer normal forms and finitely generated abelian groups.
//!
//! Every routine here works on arbitrary-precision integers. Pivot choices are
//! fixed (smallest nonzero absolute value, row-major tie-break) so that the
//! transforms are reproducible bit for bit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;

pub type IntMat = Matrix<BigInt>;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal (padded with zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn add_row_multiple(m: &mut IntMat, target: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for j in 0..m.ncols() {
        let v = &m[(src, j)] * f;
        m[(target, j)] += v;
    }
}

fn add_col_multiple(m: &mut IntMat, target: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for i in 0..m.nrows() {
        let v = &m[(i, src)] * f;
        m[(i, target)] += v;
    }
}

fn negate_row(m: &mut IntMat, i: usize) {
    for x in m.row_mut(i) {
        *x = -x.clone();
    }
}

fn smallest_nonzero(d: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.nrows() {
        for j in t..d.ncols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
pub fn smith(a: &IntMat) -> SmithDecomposition {
    let (r, k) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntMat::identity(r);
    let mut v = IntMat::identity(k);

    for t in 0..r.min(k) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return finish_smith(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = d[(i, t)].div_floor(&p);
                add_row_multiple(&mut d, i, t, &-q.clone());
                add_row_multiple(&mut u, i, t, &-q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..k {
                let q = d[(t, j)].div_floor(&p);
                add_col_multiple(&mut d, j, t, &-q.clone());
                add_col_multiple(&mut v, j, t, &-q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let offender =
                (t + 1..r).flat_map(|i| (t + 1..k).map(move |j| (i, j))).find(|&(i, j)| !d[(i, j)].is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    add_row_multiple(&mut d, t, i, &BigInt::one());
                    add_row_multiple(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    finish_smith(u, d, v)
}

fn finish_smith(mut u: IntMat, mut d: IntMat, v: IntMat) -> SmithDecomposition {
    for t in 0..d.nrows().min(d.ncols()) {
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithDecomposition { u, d, v }
}

/// Row-style Hermite normal form with zero rows removed.
///
/// Pivots are positive and entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite(a: &IntMat) -> IntMat {
    let (r, k) = (a.nrows(), a.ncols());
    let mut h = a.clone();
    let mut row = 0;
    for col in 0..k {
        if row == r {
            break;
        }
        loop {
            let pick = (row..r)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()).then(x.cmp(&y)));
            let Some(p) = pick else { break };
            h.swap_rows(row, p);
            let piv = h[(row, col)].clone();
            let mut done = true;
            for i in row + 1..r {
                let q = h[(i, col)].div_floor(&piv);
                add_row_multiple(&mut h, i, row, &-q);
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            negate_row(&mut h, row);
        }
        let piv = h[(row, col)].clone();
        for i in 0..row {
            let q = h[(i, col)].div_floor(&piv);
            add_row_multiple(&mut h, i, row, &-q);
        }
        row += 1;
    }
    let keep: Vec<usize> = (0..row).collect();
    h.select_rows(&keep)
}

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    pub rank: usize,
    /// Invariant factors, each at least 2, forming a divisibility chain.
    pub torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Group presented as the cokernel of a diagonal with the given entries.
    pub fn from_diagonal(diag: &[BigInt], extra_free: usize) -> Self {
        let rank = diag.iter().filter(|d| d.is_zero()).count() + extra_free;
        let torsion = diag.iter().filter(|d| !d.is_zero() && !d.abs().is_one()).map(|d| d.abs()).collect();
        Self { rank, torsion }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^k / rowspan(A)` together with the images of the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    pub group: FinAbGroup,
    /// `rank × k`: free coordinates of each generator (column `i` is `e_i`).
    pub free: IntMat,
    /// `t × k`: torsion coordinates, row `j` reduced mod `group.torsion[j]`.
    pub torsion: IntMat,
}

impl Cokernel {
    /// Coordinates of generator `i`: free part first, then torsion residues.
    pub fn image(&self, i: usize) -> (Vec<BigInt>, Vec<BigInt>) {
        (self.free.col(i), self.torsion.col(i))
    }

    pub fn num_generators(&self) -> usize {
        self.free.ncols()
    }

    /// Free and torsion coordinates stacked into one matrix.
    pub fn images(&self) -> IntMat {
        let mut rows = self.free.to_rows();
        rows.extend(self.torsion.to_rows());
        IntMat::from_rows(rows, self.free.ncols()).expect("consistent widths")
    }
}

/// Smallest `c >= 0` minimizing `(x + c * step) mod d`.
fn shear_multiplier(x: &BigInt, step: &BigInt, d: &BigInt) -> BigInt {
    let eg = step.mod_floor(d).extended_gcd(d);
    let g = eg.gcd;
    let target = x.mod_floor(&g);
    let delta = (&target - x) / &g;
    let modulus = d / &g;
    (delta * eg.x).mod_floor(&modulus)
}

/// Cokernel of the relation matrix `a` (rows are relations among `a.ncols()` generators).
///
/// Free coordinates are normalized to Hermite form; each torsion coordinate is
/// then sheared by the free coordinates so that it is as small as possible on the
/// free pivot columns. The result is deterministic for a fixed input.
pub fn cokernel(a: &IntMat) -> Cokernel {
    let k = a.ncols();
    if a.nrows() == 0 {
        return Cokernel { group: FinAbGroup::free(k), free: IntMat::identity(k), torsion: IntMat::zeros(0, k) };
    }
    let snf = smith(a);
    let diag = snf.diagonal();
    let mut free_rows = Vec::new();
    let mut tors_rows = Vec::new();
    let mut factors = Vec::new();
    for c in 0..k {
        let dc = diag.get(c).cloned().unwrap_or_else(BigInt::zero);
        if dc.is_zero() {
            free_rows.push(snf.v.col(c));
        } else if !dc.is_one() {
            tors_rows.push(snf.v.col(c).iter().map(|x| x.mod_floor(&dc)).collect::<Vec<_>>());
            factors.push(dc);
        }
    }
    let rank = free_rows.len();
    let free = if rank == 0 {
        IntMat::zeros(0, k)
    } else {
        hermite(&IntMat::from_rows(free_rows, k).expect("consistent widths"))
    };
    debug_assert_eq!(free.nrows(), rank);

    for (row, d) in tors_rows.iter_mut().zip(&factors) {
        for fr in free.rows_iter() {
            let Some(p) = fr.iter().position(|x| !x.is_zero()) else { continue };
            let best_c = shear_multiplier(&row[p], &fr[p], d);
            if !best_c.is_zero() {
                for (x, f) in row.iter_mut().zip(fr) {
                    *x = (&*x + &best_c * f).mod_floor(d);
                }
            }
        }
    }
    Cokernel {
        group: FinAbGroup { rank, torsion: factors },
        free,
        torsion: IntMat::from_rows(tors_rows, k).expect("consistent widths"),
    }
}

/// The group `Z^k / rowspan(a)` without generator images.
pub fn quotient_group(a: &IntMat) -> FinAbGroup {
    cokernel(a).group
}

/// Rank of an integer matrix.
pub fn int_rank(a: &IntMat) -> usize {
    if a.nrows() == 0 {
        return 0;
    }
    smith(a).rank()
}

/// Whether `v` lies in the row lattice spanned by `basis` (rows).
pub fn in_row_lattice(basis: &IntMat, v: &[BigInt]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.nrows() == 0 {
        return false;
    }
    let h = hermite(basis);
    let mut w = v.to_vec();
    for row in h.rows_iter() {
        let p = row.iter().position(|x| !x.is_zero()).expect("hermite rows are nonzero");
        if w[..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        if !w[p].is_multiple_of(&row[p]) {
            return false;
        }
        let q = &w[p] / &row[p];
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    w.iter().all(|x| x.is_zero())
}
