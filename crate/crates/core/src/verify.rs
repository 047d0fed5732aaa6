//! Checkers for proportionality and efficiency properties.
//!
//! These are deliberately independent of the construction path: the fPO test
//! builds its own linear program, and integral Pareto optimality is decided
//! by exhaustive enumeration.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::allocation::{Allocation, FractionalAllocation, IntegralAllocation};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::lp::{self, LpProblem, LpSolution, Relation};
use crate::rational::Rational;

/// Default bound on the number of allocations an enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// Weighted proportionality: `u_i(x_i) >= u_i(O) b_i`.
    Prop,
    /// Weighted proportionality up to adding or removing one item.
    Prop1,
    /// Equal-share proportionality up to the least valuable outside good and
    /// the least burdensome owned chore.
    Propx,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Prop => "prop",
            Property::Prop1 => "prop1",
            Property::Propx => "propx",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A hypothetical single-item change to an agent's bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjustment {
    Add(usize),
    Remove(usize),
}

impl Adjustment {
    pub fn item(self) -> usize {
        match self {
            Adjustment::Add(o) | Adjustment::Remove(o) => o,
        }
    }
}

/// Per-agent evidence. `value` is the utility after `adjustment` (or the
/// plain utility when there is none), and `holds` is `value >= threshold`,
/// except for PROPX agents with nothing to check, which hold vacuously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentWitness {
    pub agent: usize,
    pub utility: Rational,
    pub threshold: Rational,
    pub adjustment: Option<Adjustment>,
    pub value: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub agents: Vec<AgentWitness>,
}

impl PropertyReport {
    fn from_agents(property: Property, agents: Vec<AgentWitness>) -> Self {
        let holds = agents.iter().all(|a| a.holds);
        Self { property, holds, agents }
    }

    pub fn violators(&self) -> impl Iterator<Item = &AgentWitness> {
        self.agents.iter().filter(|a| !a.holds)
    }

    /// Re-derives every witness from the instance and allocation and checks
    /// that it supports the recorded verdict.
    pub fn revalidate<A: Allocation>(&self, instance: &Instance, allocation: &A) -> bool {
        if allocation.num_items() != instance.num_items() || self.agents.len() != instance.num_agents() {
            return false;
        }
        let owns = |agent: usize, item: usize| allocation.fraction(agent, item).is_one();
        let n = Rational::from_integer((instance.num_agents() as i64).into());
        let verdicts = self.agents.iter().enumerate().all(|(i, w)| {
            let utility = allocation.utility(instance, i);
            let threshold = match self.property {
                Property::Propx => instance.total_utility(i) / &n,
                _ => instance.proportional_share(i),
            };
            if w.agent != i || w.utility != utility || w.threshold != threshold {
                return false;
            }
            let value = match w.adjustment {
                None => utility.clone(),
                Some(adj) => {
                    let o = adj.item();
                    let owned = owns(i, o);
                    match adj {
                        Adjustment::Add(_) if !owned => &utility + instance.utility_of(i, o),
                        Adjustment::Remove(_) if owned => &utility - instance.utility_of(i, o),
                        _ => return false,
                    }
                }
            };
            if value != w.value {
                return false;
            }
            match self.property {
                Property::Prop => w.adjustment.is_none() && w.holds == (value >= threshold),
                Property::Prop1 => {
                    if w.holds {
                        value >= threshold
                    } else {
                        value < threshold
                            && (0..instance.num_items()).all(|o| {
                                let u = instance.utility_of(i, o);
                                let alt = if owns(i, o) { &utility - u } else { &utility + u };
                                alt < threshold
                            })
                    }
                }
                Property::Propx => match w.adjustment {
                    None => w.holds && propx_checks(instance, i, allocation).next().is_none(),
                    Some(_) => {
                        w.holds == (value >= threshold)
                            && propx_checks(instance, i, allocation).all(|(_, v)| v >= value)
                    }
                },
            }
        });
        verdicts && self.holds == self.agents.iter().all(|a| a.holds)
    }
}

/// `(adjustment, value)` for every item PROPX quantifies over: owned chores
/// (removed) and outside goods (added).
fn propx_checks<'a, A: Allocation>(
    instance: &'a Instance,
    agent: usize,
    allocation: &'a A,
) -> impl Iterator<Item = (Adjustment, Rational)> + 'a {
    let utility = allocation.utility(instance, agent);
    (0..instance.num_items()).filter_map(move |o| {
        let u = instance.utility_of(agent, o);
        let owned = allocation.fraction(agent, o).is_one();
        if owned && u.is_negative() {
            Some((Adjustment::Remove(o), &utility - u))
        } else if !owned && u.is_positive() {
            Some((Adjustment::Add(o), &utility + u))
        } else {
            None
        }
    })
}

/// Weighted PROP for any allocation.
pub fn weighted_prop<A: Allocation>(instance: &Instance, x: &A) -> PropertyReport {
    let agents = x
        .utilities(instance)
        .into_iter()
        .enumerate()
        .map(|(i, utility)| {
            let threshold = instance.proportional_share(i);
            let holds = utility >= threshold;
            AgentWitness { agent: i, value: utility.clone(), utility, threshold, adjustment: None, holds }
        })
        .collect();
    PropertyReport::from_agents(Property::Prop, agents)
}

/// Weighted PROP1. Agents below their share record the single adjustment
/// with the largest gain (lowest item index on ties), whether or not it
/// suffices.
pub fn weighted_prop1(instance: &Instance, pi: &IntegralAllocation) -> PropertyReport {
    let utilities = pi.utilities(instance);
    let agents = utilities
        .into_iter()
        .enumerate()
        .map(|(i, utility)| {
            let threshold = instance.proportional_share(i);
            if utility >= threshold {
                return AgentWitness { agent: i, value: utility.clone(), utility, threshold, adjustment: None, holds: true };
            }
            let mut best: Option<(Adjustment, Rational)> = None;
            for o in 0..instance.num_items() {
                let u = instance.utility_of(i, o);
                let (adj, gain) = if pi.owner(o) == i { (Adjustment::Remove(o), -u) } else { (Adjustment::Add(o), u.clone()) };
                if best.as_ref().is_none_or(|(_, g)| gain > *g) {
                    best = Some((adj, gain));
                }
            }
            match best {
                Some((adj, gain)) => {
                    let value = &utility + gain;
                    let holds = value >= threshold;
                    AgentWitness { agent: i, utility, threshold, adjustment: Some(adj), value, holds }
                }
                None => AgentWitness { agent: i, value: utility.clone(), utility, threshold, adjustment: None, holds: false },
            }
        })
        .collect();
    PropertyReport::from_agents(Property::Prop1, agents)
}

/// PROPX with equal shares `u_i(O) / n`. The witness is the binding item:
/// the adjustment giving the lowest value.
pub fn propx(instance: &Instance, pi: &IntegralAllocation) -> PropertyReport {
    let n = Rational::from_integer((instance.num_agents() as i64).into());
    let agents = (0..instance.num_agents())
        .map(|i| {
            let utility = pi.utility(instance, i);
            let threshold = instance.total_utility(i) / &n;
            let mut binding: Option<(Adjustment, Rational)> = None;
            for o in 0..instance.num_items() {
                let u = instance.utility_of(i, o);
                let check = match (pi.owner(o) == i, u.is_negative(), u.is_positive()) {
                    (true, true, _) => (Adjustment::Remove(o), &utility - u),
                    (false, _, true) => (Adjustment::Add(o), &utility + u),
                    _ => continue,
                };
                if binding.as_ref().is_none_or(|(_, v)| check.1 < *v) {
                    binding = Some(check);
                }
            }
            match binding {
                Some((adj, value)) => {
                    let holds = value >= threshold;
                    AgentWitness { agent: i, utility, threshold, adjustment: Some(adj), value, holds }
                }
                None => AgentWitness { agent: i, value: utility.clone(), utility, threshold, adjustment: None, holds: true },
            }
        })
        .collect();
    PropertyReport::from_agents(Property::Propx, agents)
}

pub fn check(instance: &Instance, pi: &IntegralAllocation, property: Property) -> PropertyReport {
    match property {
        Property::Prop => weighted_prop(instance, pi),
        Property::Prop1 => weighted_prop1(instance, pi),
        Property::Propx => propx(instance, pi),
    }
}

/// `y` gives every agent at least as much as `x`, and someone strictly more.
pub fn pareto_dominates<A: Allocation, B: Allocation>(instance: &Instance, y: &A, x: &B) -> bool {
    let uy = y.utilities(instance);
    let ux = x.utilities(instance);
    uy.iter().zip(&ux).all(|(a, b)| a >= b) && uy.iter().zip(&ux).any(|(a, b)| a > b)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc.saturating_mul(n - j) / (j + 1);
    }
    acc
}

/// Items grouped by identical utility columns, in order of first appearance.
fn identical_item_groups(instance: &Instance) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for o in 0..instance.num_items() {
        match groups.iter_mut().find(|g| instance.items_identical(g[0], o)) {
            Some(g) => g.push(o),
            None => groups.push(vec![o]),
        }
    }
    groups
}

struct DominanceSearch<'a> {
    instance: &'a Instance,
    groups: Vec<Vec<usize>>,
    targets: Vec<Rational>,
    /// `optimistic[g][i]`: utility agent `i` could still gain from groups `g..`.
    optimistic: Vec<Vec<Rational>>,
    partial: Vec<Rational>,
    counts: Vec<Vec<usize>>,
}

impl DominanceSearch<'_> {
    fn group_value(&self, g: usize, agent: usize) -> &Rational {
        self.instance.utility_of(agent, self.groups[g][0])
    }

    fn search(&mut self, g: usize, agent: usize, left: usize) -> bool {
        let n = self.instance.num_agents();
        if g == self.groups.len() {
            return self.partial.iter().zip(&self.targets).any(|(p, t)| p > t);
        }
        let range: Vec<usize> = if agent == n - 1 { vec![left] } else { (0..=left).collect() };
        for c in range {
            let delta = self.group_value(g, agent) * Rational::from_integer(c.into());
            self.partial[agent] += &delta;
            let reachable = &self.partial[agent] + &self.optimistic[g + 1][agent] >= self.targets[agent];
            if reachable {
                self.counts[g][agent] = c;
                let found = if agent == n - 1 {
                    let next = self.groups.get(g + 1).map_or(0, Vec::len);
                    self.search(g + 1, 0, next)
                } else {
                    self.search(g, agent + 1, left - c)
                };
                if found {
                    return true;
                }
            }
            self.partial[agent] -= &delta;
            if !reachable && !self.group_value(g, agent).is_positive() {
                // taking more of a non-positive item cannot help
                break;
            }
        }
        false
    }
}

/// Number of distinct utility profiles the brute-force search may visit:
/// the product over groups of identical items of the ways to split them.
pub fn enumeration_size(instance: &Instance) -> u128 {
    let n = instance.num_agents() as u128;
    identical_item_groups(instance)
        .iter()
        .fold(1u128, |acc, g| acc.saturating_mul(binomial(g.len() as u128 + n - 1, n - 1)))
}

/// An integral allocation that Pareto-dominates `pi`, found by exhaustive
/// search over how each group of identical items is split.
pub fn find_integral_improvement(instance: &Instance, pi: &IntegralAllocation, cap: u128) -> Result<Option<IntegralAllocation>> {
    let size = enumeration_size(instance);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let n = instance.num_agents();
    let groups = identical_item_groups(instance);
    let mut optimistic = vec![vec![Rational::zero(); n]; groups.len() + 1];
    for g in (0..groups.len()).rev() {
        for i in 0..n {
            let u = instance.utility_of(i, groups[g][0]);
            let gain = if u.is_positive() { u * Rational::from_integer(groups[g].len().into()) } else { Rational::zero() };
            optimistic[g][i] = &optimistic[g + 1][i] + gain;
        }
    }
    let first = groups.first().map_or(0, Vec::len);
    let mut search = DominanceSearch {
        instance,
        targets: pi.utilities(instance),
        optimistic,
        partial: vec![Rational::zero(); n],
        counts: vec![vec![0; n]; groups.len()],
        groups,
    };
    if !search.search(0, 0, first) {
        return Ok(None);
    }
    let mut owner = vec![0; instance.num_items()];
    for (g, items) in search.groups.iter().enumerate() {
        let mut it = items.iter();
        for (agent, &count) in search.counts[g].iter().enumerate() {
            for &o in it.by_ref().take(count) {
                owner[o] = agent;
            }
        }
    }
    IntegralAllocation::new(n, owner).map(Some)
}

/// No integral allocation Pareto-dominates `pi` (brute force).
pub fn is_pareto_optimal_integral(instance: &Instance, pi: &IntegralAllocation, cap: u128) -> Result<bool> {
    find_integral_improvement(instance, pi, cap).map(|w| w.is_none())
}

/// Largest total utility gain over `x` achievable by a fractional allocation
/// that leaves nobody worse off. Zero exactly when `x` is fPO.
pub fn max_pareto_gain<A: Allocation>(instance: &Instance, x: &A) -> Result<Rational> {
    let n = instance.num_agents();
    let m = instance.num_items();
    // variables item-major: index o * n + i
    let mut objective = vec![Rational::zero(); n * m];
    for o in 0..m {
        for i in 0..n {
            objective[o * n + i] = instance.utility_of(i, o).clone();
        }
    }
    let mut lp = LpProblem::new(objective);
    let current = x.utilities(instance);
    for (i, floor) in current.iter().enumerate() {
        let mut row = vec![Rational::zero(); n * m];
        for o in 0..m {
            row[o * n + i] = instance.utility_of(i, o).clone();
        }
        lp.add_constraint(row, Relation::Ge, floor.clone())?;
    }
    for o in 0..m {
        let mut row = vec![Rational::zero(); n * m];
        for cell in &mut row[o * n..(o + 1) * n] {
            *cell = Rational::one();
        }
        lp.add_constraint(row, Relation::Eq, Rational::one())?;
    }
    match lp::solve(&lp) {
        LpSolution::Optimal(s) => Ok(s.value - current.iter().fold(Rational::zero(), |a, u| a + u)),
        other => Err(Error::Internal(format!("Pareto-gain LP ended {:?}", other.status()))),
    }
}

/// Some fractional allocation Pareto-improves `x`; `x` is fPO iff false.
pub fn pareto_improvement_exists<A: Allocation>(instance: &Instance, x: &A) -> Result<bool> {
    max_pareto_gain(instance, x).map(|gain| gain.is_positive())
}

/// Strictly positive agent multipliers for a weighted-welfare certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WelfareWeights {
    pub lambda: Vec<Rational>,
}

impl WelfareWeights {
    /// Every consumed share goes to an agent with the highest weighted
    /// utility `lambda_i u_i(o)` for that item, so `x` maximizes
    /// `sum_i lambda_i u_i(x_i)`.
    pub fn certifies(&self, instance: &Instance, x: &FractionalAllocation) -> bool {
        self.lambda.len() == instance.num_agents()
            && self.lambda.iter().all(Signed::is_positive)
            && x.columns().iter().enumerate().all(|(o, column)| {
                let best = (0..instance.num_agents())
                    .map(|j| &self.lambda[j] * instance.utility_of(j, o))
                    .max()
                    .expect("at least one agent");
                column.iter().all(|(i, _)| &self.lambda[*i] * instance.utility_of(*i, o) == best)
            })
    }

    pub fn weighted_welfare<A: Allocation>(&self, instance: &Instance, x: &A) -> Rational {
        x.utilities(instance).iter().zip(&self.lambda).fold(Rational::zero(), |acc, (u, l)| acc + u * l)
    }
}

/// Searches for `lambda >= 1` under which every consumer of every item has
/// maximal weighted utility for it. `None` means no certificate was found; it
/// does not by itself show that `x` is not fPO.
pub fn find_welfare_weights(instance: &Instance, x: &IntegralAllocation) -> Result<Option<WelfareWeights>> {
    find_welfare_weights_fractional(instance, &x.to_fractional())
}

pub fn find_welfare_weights_fractional(instance: &Instance, x: &FractionalAllocation) -> Result<Option<WelfareWeights>> {
    let n = instance.num_agents();
    // For each ordered pair (i, j) the item constraints collapse to the
    // tightest bound on lambda_i / lambda_j: a lower one from goods of i, an
    // upper one from chores of i.
    let mut lower: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    let mut upper: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (o, column) in x.columns().iter().enumerate() {
        for (i, _) in column {
            let ui = instance.utility_of(*i, o);
            for j in (0..n).filter(|j| j != i) {
                let uj = instance.utility_of(j, o);
                if ui.is_positive() {
                    if uj.is_positive() {
                        let r = uj / ui;
                        if lower[*i][j].as_ref().is_none_or(|b| r > *b) {
                            lower[*i][j] = Some(r);
                        }
                    }
                } else if ui.is_zero() {
                    if uj.is_positive() {
                        return Ok(None);
                    }
                } else if uj.is_negative() {
                    let r = uj / ui;
                    if upper[*i][j].as_ref().is_none_or(|b| r < *b) {
                        upper[*i][j] = Some(r);
                    }
                } else {
                    return Ok(None);
                }
            }
        }
    }
    let mut lp = LpProblem::new(vec![-Rational::one(); n]);
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] = Rational::one();
        lp.add_constraint(row, Relation::Ge, Rational::one())?;
    }
    for i in 0..n {
        for j in 0..n {
            for (bound, relation) in [(&lower[i][j], Relation::Ge), (&upper[i][j], Relation::Le)] {
                if let Some(r) = bound {
                    let mut row = vec![Rational::zero(); n];
                    row[i] = Rational::one();
                    row[j] = -r;
                    lp.add_constraint(row, relation, Rational::zero())?;
                }
            }
        }
    }
    match lp::solve(&lp) {
        LpSolution::Optimal(s) => Ok(Some(WelfareWeights { lambda: s.assignment })),
        LpSolution::Infeasible => Ok(None),
        LpSolution::Unbounded => Err(Error::Internal("welfare-weight LP is unbounded".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub property: Property,
    pub total: u128,
    pub count: u128,
    /// First satisfying allocation in enumeration order (item 0 varies slowest).
    pub witness: Option<IntegralAllocation>,
}

/// Counts integral allocations satisfying `property` by enumerating all
/// `n^m` of them.
pub fn search(instance: &Instance, property: Property, cap: u128) -> Result<SearchOutcome> {
    let n = instance.num_agents();
    let m = instance.num_items();
    let total = (0..m).try_fold(1u128, |acc, _| acc.checked_mul(n as u128)).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::CapExceeded { size: total, cap });
    }
    let mut owner = vec![0usize; m];
    let mut count = 0u128;
    let mut witness = None;
    loop {
        let pi = IntegralAllocation::new(n, owner.clone())?;
        if check(instance, &pi, property).holds {
            count += 1;
            if witness.is_none() {
                witness = Some(pi);
            }
        }
        // odometer with the last item varying fastest
        let mut k = m;
        loop {
            if k == 0 {
                return Ok(SearchOutcome { property, total, count, witness });
            }
            k -= 1;
            owner[k] += 1;
            if owner[k] < n {
                break;
            }
            owner[k] = 0;
        }
    }
}
