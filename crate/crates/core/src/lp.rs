//! Exact rational linear programming.
//!
//! Two-phase primal simplex with Bland's rule on a dense tableau. Every
//! solution returned as optimal is a basic feasible solution, i.e. a vertex of
//! the feasible polytope, and the pivot sequence is a pure function of the
//! problem.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .fold(Rational::zero(), |acc, (a, v)| acc + a * v)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.lhs(x) == self.rhs
    }
}

/// `max objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self { objective, constraints: Vec::new() }
    }

    pub fn add_constraint(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        if coefficients.len() != self.num_vars() {
            return Err(Error::MalformedLp(format!(
                "constraint has {} coefficients for {} variables",
                coefficients.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint { coefficients, relation, rhs });
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    /// Rank of the active system at `x`: tight constraint rows together with
    /// the bounds `x_j >= 0` that hold with equality.
    pub fn active_rank(&self, x: &[Rational]) -> usize {
        let n = self.num_vars();
        let mut rows: Vec<Vec<Rational>> =
            self.constraints.iter().filter(|c| c.is_tight(x)).map(|c| c.coefficients.clone()).collect();
        for (j, v) in x.iter().enumerate() {
            if v.is_zero() {
                let mut unit = vec![Rational::zero(); n];
                unit[j] = Rational::one();
                rows.push(unit);
            }
        }
        rank(rows)
    }

    /// Feasible and the active constraints determine `x` uniquely.
    pub fn is_vertex(&self, x: &[Rational]) -> bool {
        self.is_feasible(x) && self.active_rank(x) == self.num_vars()
    }
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &lead;
            for c in col..cols {
                if !rows[rank][c].is_zero() {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalSolution {
    pub value: Rational,
    pub assignment: Vec<Rational>,
    /// Structural variables in the final basis (slack columns are omitted).
    pub basis: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal(OptimalSolution),
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal(_) => LpStatus::Optimal,
            LpSolution::Infeasible => LpStatus::Infeasible,
            LpSolution::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn optimal(&self) -> Option<&OptimalSolution> {
        match self {
            LpSolution::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_optimal(self) -> Option<OptimalSolution> {
        match self {
            LpSolution::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        self.optimal().map(|s| &s.value)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs `c_j - c_B B^-1 A_j`; a positive entry may enter.
    cost: Vec<Rational>,
    value: Rational,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len()
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let lead = self.rows[r][q].clone();
        if !lead.is_one() {
            for v in self.rows[r].iter_mut().filter(|v| !v.is_zero()) {
                *v /= &lead;
            }
            self.rhs[r] /= &lead;
        }
        let pivot_row: Vec<(usize, Rational)> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        let pivot_rhs = self.rhs[r].clone();

        for i in 0..self.rows.len() {
            if i == r || self.rows[i][q].is_zero() {
                continue;
            }
            let factor = self.rows[i][q].clone();
            let row = &mut self.rows[i];
            for (j, v) in &pivot_row {
                row[*j] -= &factor * v;
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.cost[q].is_zero() {
            let factor = self.cost[q].clone();
            for (j, v) in &pivot_row {
                self.cost[*j] -= &factor * v;
            }
            self.value += &factor * &pivot_rhs;
        }
        self.basis[r] = q;
    }

    /// Bland's rule: lowest-index improving column enters; among minimum-ratio
    /// rows the one whose basic variable has the lowest index leaves.
    fn run(&mut self) -> Outcome {
        loop {
            let Some(q) = (0..self.width()).find(|&j| self.cost[j].is_positive()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => match ratio.cmp(best_ratio) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[i] < self.basis[*best],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, q),
                None => return Outcome::Unbounded,
            }
        }
    }

    fn reset_costs(&mut self, costs: Vec<Rational>) {
        self.cost = costs;
        self.value = Rational::zero();
        for r in 0..self.rows.len() {
            let cb = self.cost[self.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.rows[r].len() {
                if !self.rows[r][j].is_zero() {
                    let delta = &cb * &self.rows[r][j];
                    self.cost[j] -= delta;
                }
            }
            self.value += &cb * &self.rhs[r];
        }
    }
}

/// Solves `problem` exactly.
pub fn solve(problem: &LpProblem) -> LpSolution {
    let nv = problem.num_vars();
    // flip rows so every right-hand side is non-negative, and `>= 0` rows
    // into `<= 0` so their slack can start in the basis
    let normalized: Vec<(Vec<Rational>, Relation, Rational)> = problem
        .constraints
        .iter()
        .map(|c| {
            if c.rhs.is_negative() || (c.rhs.is_zero() && c.relation == Relation::Ge) {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Eq => Relation::Eq,
                    Relation::Ge => Relation::Le,
                };
                (c.coefficients.iter().map(|a| -a).collect(), flipped, -&c.rhs)
            } else {
                (c.coefficients.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();

    let num_slack = normalized.iter().filter(|(_, rel, _)| *rel != Relation::Eq).count();
    let num_art = normalized.iter().filter(|(_, rel, _)| *rel != Relation::Le).count();
    let first_art = nv + num_slack;
    let width = first_art + num_art;

    let mut rows = Vec::with_capacity(normalized.len());
    let mut rhs = Vec::with_capacity(normalized.len());
    let mut basis = Vec::with_capacity(normalized.len());
    let (mut next_slack, mut next_art) = (nv, first_art);
    for (coefficients, relation, b) in normalized {
        let mut row = coefficients;
        row.resize(width, Rational::zero());
        match relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    let mut tableau = Tableau { rows, rhs, basis, cost: Vec::new(), value: Rational::zero() };

    if num_art > 0 {
        let mut phase_one = vec![Rational::zero(); width];
        for c in &mut phase_one[first_art..] {
            *c = -Rational::one();
        }
        tableau.reset_costs(phase_one);
        // the phase-one objective is bounded above by zero
        let _ = tableau.run();
        if tableau.value.is_negative() {
            return LpSolution::Infeasible;
        }
        // drive zero-valued artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] < first_art {
                r += 1;
                continue;
            }
            match (0..first_art).find(|&j| !tableau.rows[r][j].is_zero()) {
                Some(j) => {
                    tableau.pivot(r, j);
                    r += 1;
                }
                None => {
                    tableau.rows.remove(r);
                    tableau.rhs.remove(r);
                    tableau.basis.remove(r);
                }
            }
        }
        for row in &mut tableau.rows {
            row.truncate(first_art);
        }
    }

    let mut costs = problem.objective.clone();
    costs.resize(first_art, Rational::zero());
    tableau.reset_costs(costs);
    if let Outcome::Unbounded = tableau.run() {
        return LpSolution::Unbounded;
    }

    let mut assignment = vec![Rational::zero(); nv];
    let mut structural = BTreeSet::new();
    for (r, &j) in tableau.basis.iter().enumerate() {
        if j < nv {
            assignment[j] = tableau.rhs[r].clone();
            structural.insert(j);
        }
    }
    LpSolution::Optimal(OptimalSolution { value: tableau.value, assignment, basis: structural })
}
