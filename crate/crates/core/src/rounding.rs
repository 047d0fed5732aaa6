//! Rounding an acyclic fractional allocation to an integral one.
//!
//! Each tree of the consumption forest is explored from a root agent. The
//! active agent takes every good she still shares and hands every shared
//! chore to her lowest-index co-consumer. Items consumed by a single agent
//! never move, so the output graph is a subgraph of the input graph.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::allocation::{Allocation, FractionalAllocation, IntegralAllocation};
use crate::error::{Error, Result};
use crate::graph::ConsumptionGraph;
use crate::improve;
use crate::instance::Instance;
use crate::rational::Rational;
use crate::verify::{self, PropertyReport, WelfareWeights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExplorationOrder {
    /// FIFO queue.
    #[default]
    BreadthFirst,
    /// LIFO stack.
    DepthFirst,
}

/// How the root of each tree is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum RootRule {
    /// Lowest-index agent that shares exactly one item.
    #[default]
    SharesExactlyOneItem,
    /// Lowest-index agent that shares any item.
    LowestIndexSharingAgent,
    /// The first agent of the list that still shares an item; once the list
    /// is exhausted, falls back to [`RootRule::SharesExactlyOneItem`].
    Preferred(Vec<usize>),
}

/// Exploration order and root rule. Ties are always broken by lowest index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExplorationStrategy {
    pub order: ExplorationOrder,
    pub root_rule: RootRule,
}

impl ExplorationStrategy {
    pub fn new(order: ExplorationOrder, root_rule: RootRule) -> Self {
        Self { order, root_rule }
    }

    /// Both orders crossed with both index-based root rules.
    pub fn standard_variants() -> Vec<Self> {
        let mut out = Vec::new();
        for order in [ExplorationOrder::BreadthFirst, ExplorationOrder::DepthFirst] {
            for root_rule in [RootRule::SharesExactlyOneItem, RootRule::LowestIndexSharingAgent] {
                out.push(Self::new(order, root_rule));
            }
        }
        out
    }
}

/// Gives every shared item that some sharer values at zero wholly to its
/// lowest-index sharer. Other items are untouched.
pub fn resolve_zero_items(instance: &Instance, x: &FractionalAllocation) -> FractionalAllocation {
    let columns = x
        .columns()
        .iter()
        .enumerate()
        .map(|(o, column)| {
            if column.len() > 1 && column.iter().any(|(i, _)| instance.utility_of(*i, o).is_zero()) {
                vec![(column[0].0, Rational::from_integer(1.into()))]
            } else {
                column.clone()
            }
        })
        .collect();
    FractionalAllocation::from_columns(x.num_agents(), columns).expect("columns stay valid")
}

/// Every shared item that some sharer values at zero is worth zero to all of
/// its sharers, so [`resolve_zero_items`] changes no utility. Holds at any fPO
/// allocation.
pub fn check_zero_neutrality(instance: &Instance, x: &FractionalAllocation) -> Result<()> {
    for (o, column) in x.columns().iter().enumerate() {
        if column.len() < 2 {
            continue;
        }
        let zeros = column.iter().filter(|(i, _)| instance.utility_of(*i, o).is_zero()).count();
        if zeros > 0 && zeros < column.len() {
            return Err(Error::MixedSignShare { item: o });
        }
    }
    Ok(())
}

/// What happened during rounding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoundingTrace {
    /// One root per tree that contained a shared item, in processing order.
    pub roots: Vec<usize>,
    pub activation_order: Vec<usize>,
    /// For each agent, the active agents that decided a shared item against
    /// her before she became active. Never longer than one.
    pub predecessors: Vec<Vec<usize>>,
    /// Shared items remaining after each tree is processed.
    pub shared_remaining: Vec<usize>,
}

struct RootPicker<'a> {
    rule: &'a RootRule,
    cursor: usize,
    preferred_cursor: usize,
}

impl RootPicker<'_> {
    // Counts only fall to zero when a whole tree is processed, so skipped
    // agents never become eligible later and the cursors only move forward.
    fn next(&mut self, shared_count: &[usize]) -> Option<usize> {
        if let RootRule::Preferred(list) = self.rule {
            while self.preferred_cursor < list.len() {
                let a = list[self.preferred_cursor];
                if a < shared_count.len() && shared_count[a] > 0 {
                    return Some(a);
                }
                self.preferred_cursor += 1;
            }
        }
        let wanted = |count: usize| match self.rule {
            RootRule::LowestIndexSharingAgent => count > 0,
            _ => count == 1,
        };
        while self.cursor < shared_count.len() {
            if wanted(shared_count[self.cursor]) {
                return Some(self.cursor);
            }
            self.cursor += 1;
        }
        None
    }
}

/// Rounds `x` and records the exploration.
///
/// `x` must have an acyclic consumption graph, and every shared item must be
/// a good for all of its sharers or a chore for all of them.
pub fn round_acyclic_traced(
    instance: &Instance,
    x: &FractionalAllocation,
    strategy: &ExplorationStrategy,
) -> Result<(IntegralAllocation, RoundingTrace)> {
    let n = instance.num_agents();
    if x.num_agents() != n || x.columns().len() != instance.num_items() {
        return Err(Error::InvalidAllocation("allocation does not match the instance".into()));
    }
    let graph = ConsumptionGraph::from(x);
    if graph.find_cycle().is_some() {
        return Err(Error::CyclicInput);
    }

    let mut sharers: Vec<Vec<usize>> = (0..graph.num_items()).map(|o| graph.agents_of(o).to_vec()).collect();
    let mut shared_count = vec![0usize; n];
    let mut shared_total = 0;
    for (o, agents) in sharers.iter().enumerate() {
        if agents.len() < 2 {
            continue;
        }
        let positive = instance.utility_of(agents[0], o).is_positive();
        let uniform = agents.iter().all(|&i| {
            let u = instance.utility_of(i, o);
            !u.is_zero() && u.is_positive() == positive
        });
        if !uniform {
            return Err(Error::MixedSignShare { item: o });
        }
        for &i in agents {
            shared_count[i] += 1;
        }
        shared_total += 1;
    }

    let mut trace = RoundingTrace { predecessors: vec![Vec::new(); n], ..Default::default() };
    let mut active = vec![false; n];
    let mut frontier = VecDeque::new();
    let mut picker = RootPicker { rule: &strategy.root_rule, cursor: 0, preferred_cursor: 0 };

    while shared_total > 0 {
        let root = picker
            .next(&shared_count)
            .ok_or_else(|| Error::Internal("shared items remain but no root agent qualifies".into()))?;
        trace.roots.push(root);
        frontier.push_back(root);

        while let Some(j) = match strategy.order {
            ExplorationOrder::BreadthFirst => frontier.pop_front(),
            ExplorationOrder::DepthFirst => frontier.pop_back(),
        } {
            if active[j] {
                continue;
            }
            active[j] = true;
            trace.activation_order.push(j);

            let items: Vec<usize> = graph.items_of(j).iter().copied().filter(|&o| sharers[o].len() > 1).collect();
            let mut neighbors: Vec<usize> =
                items.iter().flat_map(|&o| sharers[o].iter().copied()).filter(|&k| k != j && !active[k]).collect();
            neighbors.sort_unstable();
            neighbors.dedup();
            frontier.extend(neighbors);

            for o in items {
                let takes_it = instance.utility_of(j, o).is_positive();
                let winner = if takes_it {
                    j
                } else {
                    *sharers[o].iter().find(|&&k| k != j).expect("shared item has another sharer")
                };
                for &k in &sharers[o] {
                    let loses = if takes_it { k != j } else { k == winner };
                    if loses {
                        trace.predecessors[k].push(j);
                        if active[k] || trace.predecessors[k].len() > 1 {
                            return Err(Error::Internal(format!("agent {k} has more than one predecessor")));
                        }
                    }
                    shared_count[k] -= 1;
                }
                sharers[o] = vec![winner];
                shared_total -= 1;
            }
        }
        trace.shared_remaining.push(shared_total);
    }

    let owners = sharers.into_iter().map(|s| s[0]).collect();
    Ok((IntegralAllocation::new(n, owners)?, trace))
}

pub fn round_acyclic(
    instance: &Instance,
    x: &FractionalAllocation,
    strategy: &ExplorationStrategy,
) -> Result<IntegralAllocation> {
    round_acyclic_traced(instance, x, strategy).map(|(pi, _)| pi)
}

/// Certificates attached to a pipeline result.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub prop1: PropertyReport,
    /// No fractional Pareto improvement exists (LP check).
    pub fpo_certified: bool,
    pub welfare_weights: Option<WelfareWeights>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub allocation: IntegralAllocation,
    /// The acyclic fPO allocation that was rounded.
    pub fractional: FractionalAllocation,
    pub report: PipelineReport,
}

/// Equal division, improvement, zero-item resolution and rounding with the
/// default strategy.
pub fn rounding_pipeline(instance: &Instance) -> Result<PipelineOutput> {
    rounding_pipeline_with(instance, &ExplorationStrategy::default())
}

pub fn rounding_pipeline_with(instance: &Instance, strategy: &ExplorationStrategy) -> Result<PipelineOutput> {
    let fractional = fractional_stage(instance)?;
    round_fractional_stage(instance, fractional, strategy)
}

/// Seed and improvement: an acyclic fPO allocation that is weighted PROP.
pub fn fractional_stage(instance: &Instance) -> Result<FractionalAllocation> {
    let seed = improve::proportional_seed(instance);
    let x = improve::improve_to_acyclic_fpo(instance, &seed)?;
    check_zero_neutrality(instance, &x).map_err(|e| Error::Internal(format!("improved allocation: {e}")))?;
    Ok(x)
}

/// Rounds the output of [`fractional_stage`] and attaches certificates.
pub fn round_fractional_stage(
    instance: &Instance,
    fractional: FractionalAllocation,
    strategy: &ExplorationStrategy,
) -> Result<PipelineOutput> {
    let resolved = resolve_zero_items(instance, &fractional);
    let allocation = round_acyclic(instance, &resolved, strategy)?;
    // Weights for the fractional support also cover the rounded allocation.
    let welfare_weights = match verify::find_welfare_weights_fractional(instance, &fractional)? {
        Some(w) => Some(w),
        None => verify::find_welfare_weights(instance, &allocation)?,
    };
    let report = PipelineReport {
        prop1: verify::weighted_prop1(instance, &allocation),
        fpo_certified: !verify::pareto_improvement_exists(instance, &allocation)?,
        welfare_weights,
    };
    Ok(PipelineOutput { allocation, fractional, report })
}
