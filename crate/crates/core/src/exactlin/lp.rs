//! Exact two-phase simplex with Bland's anti-cycling rule.

use super::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `minimize c·x` subject to linear constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram<F> {
    num_vars: usize,
    objective: Vec<F>,
    constraints: Vec<(Vec<F>, Relation, F)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Optimal { x: Vec<F>, value: F },
    Infeasible,
    Unbounded,
}

impl<F> LpOutcome<F> {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

impl<F: Field> LinearProgram<F> {
    /// A feasibility problem (zero objective) over `num_vars` nonnegative variables.
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, objective: vec![F::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn minimize(mut self, objective: Vec<F>) -> Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn constraint(&mut self, coeffs: Vec<F>, rel: Relation, rhs: F) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push((coeffs, rel, rhs));
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn solve(&self) -> LpOutcome<F> {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau<F> {
    /// constraint rows, each `width + 1` long (last entry is the rhs)
    rows: Vec<Vec<F>>,
    basis: Vec<usize>,
    width: usize,
    num_structural: usize,
    first_artificial: usize,
}

impl<F: Field> Tableau<F> {
    fn build(lp: &LinearProgram<F>) -> Self {
        let n = lp.num_vars;
        let m = lp.constraints.len();
        let slack_count = lp.constraints.iter().filter(|c| c.1 != Relation::Eq).count();
        let first_artificial = n + slack_count;
        let width = first_artificial + m;
        let mut rows = Vec::with_capacity(m);
        let mut slack = n;
        for (i, (coeffs, rel, rhs)) in lp.constraints.iter().enumerate() {
            let mut row = vec![F::zero(); width + 1];
            row[..n].clone_from_slice(coeffs);
            match rel {
                Relation::Le => {
                    row[slack] = F::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -F::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width] = rhs.clone();
            if rhs.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[first_artificial + i] = F::one();
            rows.push(row);
        }
        Tableau {
            rows,
            basis: (first_artificial..first_artificial + m).collect(),
            width,
            num_structural: n,
            first_artificial,
        }
    }

    fn pivot(&mut self, obj: &mut [F], r: usize, c: usize) {
        let inv = F::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (x, p) in obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for `cost` under the current basis; last entry is `-value`.
    fn objective_row(&self, cost: &[F]) -> Vec<F> {
        let mut obj: Vec<F> = (0..=self.width).map(|j| cost.get(j).cloned().unwrap_or_else(F::zero)).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost.get(b).cloned().unwrap_or_else(F::zero);
            if cb.is_zero() {
                continue;
            }
            for (x, a) in obj.iter_mut().zip(row) {
                *x = x.clone() - cb.clone() * a.clone();
            }
        }
        obj
    }

    /// Runs simplex iterations over columns `< limit`. Returns false if unbounded.
    fn iterate(&mut self, obj: &mut [F], limit: usize) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, F)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = row[self.width].clone() / row[c].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(obj, r, c);
        }
    }

    fn run(mut self, cost: &[F]) -> LpOutcome<F> {
        let art = self.first_artificial;
        // phase 1: minimize the sum of artificials
        let phase1_cost: Vec<F> = (0..self.width).map(|j| if j >= art { F::one() } else { F::zero() }).collect();
        let mut obj = self.objective_row(&phase1_cost);
        self.iterate(&mut obj, self.width);
        if !obj[self.width].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= art {
                match (0..art).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(c) => {
                        self.pivot(&mut obj, i, c);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        // phase 2 over non-artificial columns
        let mut obj = self.objective_row(cost);
        if !self.iterate(&mut obj, art) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![F::zero(); self.num_structural];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_structural {
                x[b] = row[self.width].clone();
            }
        }
        let value = -obj[self.width].clone();
        LpOutcome::Optimal { x, value }
    }
}

/// Whether `x` is a nonnegative combination of `generators` (all of length `x.len()`).
pub fn cone_contains<F: Field>(generators: &[Vec<F>], x: &[F]) -> bool {
    let dim = x.len();
    let mut lp = LinearProgram::new(generators.len());
    for k in 0..dim {
        lp.constraint(generators.iter().map(|g| g[k].clone()).collect(), Relation::Eq, x[k].clone());
    }
    lp.solve().is_feasible()
}

/// Whether `x` is a convex combination of `points`.
pub fn hull_contains<F: Field>(points: &[Vec<F>], x: &[F]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = x.len();
    let mut lp = LinearProgram::new(points.len());
    for k in 0..dim {
        lp.constraint(points.iter().map(|g| g[k].clone()).collect(), Relation::Eq, x[k].clone());
    }
    lp.constraint(vec![F::one(); points.len()], Relation::Eq, F::one());
    lp.solve().is_feasible()
}
