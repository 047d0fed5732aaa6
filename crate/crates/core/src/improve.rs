//! From equal division to a welfare-maximal dominating allocation with an
//! acyclic consumption graph.
//!
//! `LP_T` maximizes utilitarian welfare over fractional allocations that give
//! every agent at least her utility under a reference allocation `y`, with the
//! pairs in `T` forbidden. Any optimum is fPO: a Pareto improvement would
//! still dominate `y` and raise welfare. While the optimum's consumption graph
//! has a cycle, some edge of that cycle can be forbidden without lowering the
//! optimal value; it is added to `T` and the LP is re-solved.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::allocation::{Allocation, FractionalAllocation};
use crate::error::{Error, Result};
use crate::graph::{cycle_edges, ConsumptionGraph};
use crate::instance::Instance;
use crate::lp::{self, LpProblem, LpSolution, OptimalSolution, Relation};
use crate::rational::Rational;

/// Every agent receives the fraction `b_i` of every item.
pub fn proportional_seed(instance: &Instance) -> FractionalAllocation {
    let consumers: Vec<(usize, Rational)> = instance.weights().iter().cloned().enumerate().collect();
    let columns = vec![consumers; instance.num_items()];
    FractionalAllocation::from_columns(instance.num_agents(), columns).expect("weights sum to one")
}

/// Index of variable `x_{i,o}` in `LP_T`.
pub fn variable(instance: &Instance, agent: usize, item: usize) -> usize {
    agent * instance.num_items() + item
}

/// Builds `LP_T` for reference allocation `seed` and forbidden pairs `forbidden`.
pub fn build_lp_t(instance: &Instance, seed: &FractionalAllocation, forbidden: &BTreeSet<(usize, usize)>) -> LpProblem {
    let n = instance.num_agents();
    let m = instance.num_items();
    let num_vars = n * m;
    let objective: Vec<Rational> = (0..n).flat_map(|i| instance.utility_row(i).iter().cloned()).collect();
    let mut problem = LpProblem::new(objective);

    let seed_utilities = seed.utilities(instance);
    for (i, floor) in seed_utilities.into_iter().enumerate() {
        let mut row = vec![Rational::zero(); num_vars];
        row[i * m..(i + 1) * m].clone_from_slice(instance.utility_row(i));
        problem.add_constraint(row, Relation::Ge, floor).expect("row length");
    }
    for o in 0..m {
        let mut row = vec![Rational::zero(); num_vars];
        for i in 0..n {
            row[variable(instance, i, o)] = Rational::from_integer(1.into());
        }
        problem.add_constraint(row, Relation::Eq, Rational::from_integer(1.into())).expect("row length");
    }
    for &(i, o) in forbidden {
        let mut row = vec![Rational::zero(); num_vars];
        row[variable(instance, i, o)] = Rational::from_integer(1.into());
        problem.add_constraint(row, Relation::Eq, Rational::zero()).expect("row length");
    }
    problem
}

/// Reads an `LP_T` assignment back as an allocation.
pub fn allocation_from_assignment(instance: &Instance, assignment: &[Rational]) -> Result<FractionalAllocation> {
    let n = instance.num_agents();
    let columns = (0..instance.num_items())
        .map(|o| (0..n).map(|i| (i, assignment[variable(instance, i, o)].clone())).collect())
        .collect();
    FractionalAllocation::from_columns(n, columns)
}

/// Forbidden set, optimal value and optimal allocation of the final `LP_T`.
#[derive(Debug, Clone)]
pub struct ImprovementState {
    pub forbidden: BTreeSet<(usize, usize)>,
    pub current_optimum: Rational,
    pub current_allocation: FractionalAllocation,
    /// Cycles eliminated by forbidding an edge (zero when the first basic
    /// solution is already acyclic).
    pub iterations: usize,
}

fn solve_lp_t(
    instance: &Instance,
    seed: &FractionalAllocation,
    forbidden: &BTreeSet<(usize, usize)>,
) -> Result<Option<OptimalSolution>> {
    match lp::solve(&build_lp_t(instance, seed, forbidden)) {
        LpSolution::Optimal(s) => Ok(Some(s)),
        LpSolution::Infeasible => Ok(None),
        LpSolution::Unbounded => Err(Error::Internal("LP_T is unbounded".into())),
    }
}

/// Runs the edge-forbidding loop and returns its final state.
pub fn improve_traced(instance: &Instance, seed: &FractionalAllocation) -> Result<ImprovementState> {
    if seed.num_agents() != instance.num_agents() || seed.num_items() != instance.num_items() {
        return Err(Error::InvalidAllocation("seed does not match the instance".into()));
    }
    let mut forbidden = BTreeSet::new();
    let first = solve_lp_t(instance, seed, &forbidden)?
        .ok_or_else(|| Error::Internal("LP_T is infeasible although the seed satisfies it".into()))?;
    let mut optimum = first.value;
    let mut allocation = allocation_from_assignment(instance, &first.assignment)?;
    let mut iterations = 0;

    while let Some(cycle) = ConsumptionGraph::from(&allocation).find_cycle() {
        let mut progressed = false;
        for edge in cycle_edges(&cycle) {
            let mut trial = forbidden.clone();
            trial.insert(edge);
            let Some(solution) = solve_lp_t(instance, seed, &trial)? else {
                continue;
            };
            if solution.value == optimum {
                forbidden = trial;
                optimum = solution.value;
                allocation = allocation_from_assignment(instance, &solution.assignment)?;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(Error::Internal(format!(
                "no edge of the cycle through {} can be forbidden without lowering welfare",
                cycle[0]
            )));
        }
        iterations += 1;
    }

    Ok(ImprovementState { forbidden, current_optimum: optimum, current_allocation: allocation, iterations })
}

/// An fPO allocation with acyclic consumption graph that weakly dominates
/// `seed` for every agent.
pub fn improve_to_acyclic_fpo(instance: &Instance, seed: &FractionalAllocation) -> Result<FractionalAllocation> {
    improve_traced(instance, seed).map(|state| state.current_allocation)
}
