//! Fractional and integral allocations.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;

/// Anything that yields an additive utility for each agent.
pub trait Allocation {
    fn num_agents(&self) -> usize;
    fn num_items(&self) -> usize;

    /// `x_{i,o}`.
    fn fraction(&self, agent: usize, item: usize) -> Rational;

    /// `u_i(x_i)`.
    fn utility(&self, instance: &Instance, agent: usize) -> Rational;

    fn utilities(&self, instance: &Instance) -> Vec<Rational> {
        (0..self.num_agents()).map(|i| self.utility(instance, i)).collect()
    }
}

pub fn utility<A: Allocation + ?Sized>(instance: &Instance, allocation: &A, agent: usize) -> Rational {
    allocation.utility(instance, agent)
}

pub fn utilities<A: Allocation + ?Sized>(instance: &Instance, allocation: &A) -> Vec<Rational> {
    allocation.utilities(instance)
}

/// An `n x m` matrix of consumption fractions whose columns sum to one.
///
/// Stored column-sparse: each item keeps its consumers with strictly positive
/// fractions, sorted by agent index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalAllocation {
    num_agents: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl FractionalAllocation {
    /// Validates and normalizes per-item consumer lists. Zero entries are
    /// dropped; duplicates, out-of-range agents, fractions outside `[0, 1]`
    /// and columns that do not sum to one are rejected.
    pub fn from_columns(num_agents: usize, columns: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(columns.len());
        for (item, mut column) in columns.into_iter().enumerate() {
            column.retain(|(_, f)| !f.is_zero());
            column.sort_by_key(|(agent, _)| *agent);
            let mut total = Rational::zero();
            for (k, (agent, fraction)) in column.iter().enumerate() {
                if *agent >= num_agents {
                    return Err(Error::InvalidAllocation(format!("item {item}: agent {agent} out of range")));
                }
                if k > 0 && column[k - 1].0 == *agent {
                    return Err(Error::InvalidAllocation(format!("item {item}: agent {agent} listed twice")));
                }
                if fraction.is_negative() || *fraction > Rational::one() {
                    return Err(Error::InvalidAllocation(format!("item {item}: fraction outside [0, 1]")));
                }
                total += fraction;
            }
            if !total.is_one() {
                return Err(Error::InvalidAllocation(format!("item {item}: fractions sum to {total}, not 1")));
            }
            normalized.push(column);
        }
        Ok(Self { num_agents, columns: normalized })
    }

    /// From a dense matrix indexed `[agent][item]`.
    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidAllocation("no agents".into()));
        }
        let m = rows[0].len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidAllocation("ragged fraction matrix".into()));
        }
        let columns = (0..m)
            .map(|o| rows.iter().enumerate().map(|(i, row)| (i, row[o].clone())).collect())
            .collect();
        Self::from_columns(rows.len(), columns)
    }

    /// Consumers of `item` with their positive fractions, by agent index.
    pub fn consumers(&self, item: usize) -> &[(usize, Rational)] {
        &self.columns[item]
    }

    pub fn columns(&self) -> &[Vec<(usize, Rational)>] {
        &self.columns
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![vec![Rational::zero(); self.columns.len()]; self.num_agents];
        for (o, column) in self.columns.iter().enumerate() {
            for (i, f) in column {
                rows[*i][o] = f.clone();
            }
        }
        rows
    }

    /// Number of items consumed by more than one agent.
    pub fn shared_item_count(&self) -> usize {
        self.columns.iter().filter(|c| c.len() > 1).count()
    }

    /// `Some` when every item is consumed wholly by one agent.
    pub fn to_integral(&self) -> Option<IntegralAllocation> {
        let owner = self
            .columns
            .iter()
            .map(|c| if c.len() == 1 { Some(c[0].0) } else { None })
            .collect::<Option<Vec<_>>>()?;
        Some(IntegralAllocation { num_agents: self.num_agents, owner })
    }
}

impl Allocation for FractionalAllocation {
    fn num_agents(&self) -> usize {
        self.num_agents
    }

    fn num_items(&self) -> usize {
        self.columns.len()
    }

    fn fraction(&self, agent: usize, item: usize) -> Rational {
        self.columns[item]
            .iter()
            .find(|(a, _)| *a == agent)
            .map(|(_, f)| f.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn utility(&self, instance: &Instance, agent: usize) -> Rational {
        let mut total = Rational::zero();
        for (o, column) in self.columns.iter().enumerate() {
            if let Some((_, f)) = column.iter().find(|(a, _)| *a == agent) {
                total += instance.utility_of(agent, o) * f;
            }
        }
        total
    }

    fn utilities(&self, instance: &Instance) -> Vec<Rational> {
        let mut totals = vec![Rational::zero(); self.num_agents];
        for (o, column) in self.columns.iter().enumerate() {
            for (i, f) in column {
                totals[*i] += instance.utility_of(*i, o) * f;
            }
        }
        totals
    }
}

/// Each item assigned wholly to one agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralAllocation {
    num_agents: usize,
    owner: Vec<usize>,
}

impl IntegralAllocation {
    pub fn new(num_agents: usize, owner: Vec<usize>) -> Result<Self> {
        if let Some((item, agent)) = owner.iter().enumerate().find(|(_, &a)| a >= num_agents) {
            return Err(Error::InvalidAllocation(format!("item {item}: agent {agent} out of range")));
        }
        Ok(Self { num_agents, owner })
    }

    /// Builds an allocation from per-agent bundles; every item in `0..num_items`
    /// must appear in exactly one bundle.
    pub fn from_bundles(num_items: usize, bundles: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![None; num_items];
        for (agent, bundle) in bundles.iter().enumerate() {
            for &item in bundle {
                let slot = owner
                    .get_mut(item)
                    .ok_or_else(|| Error::InvalidAllocation(format!("item {item} out of range")))?;
                if slot.replace(agent).is_some() {
                    return Err(Error::InvalidAllocation(format!("item {item} assigned twice")));
                }
            }
        }
        let owner = owner
            .into_iter()
            .enumerate()
            .map(|(o, a)| a.ok_or_else(|| Error::InvalidAllocation(format!("item {o} unassigned"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { num_agents: bundles.len(), owner })
    }

    pub fn owner(&self, item: usize) -> usize {
        self.owner[item]
    }

    pub fn owners(&self) -> &[usize] {
        &self.owner
    }

    pub fn bundle(&self, agent: usize) -> Vec<usize> {
        (0..self.owner.len()).filter(|&o| self.owner[o] == agent).collect()
    }

    pub fn bundles(&self) -> Vec<Vec<usize>> {
        let mut bundles = vec![Vec::new(); self.num_agents];
        for (o, &a) in self.owner.iter().enumerate() {
            bundles[a].push(o);
        }
        bundles
    }

    pub fn to_fractional(&self) -> FractionalAllocation {
        FractionalAllocation {
            num_agents: self.num_agents,
            columns: self.owner.iter().map(|&a| vec![(a, Rational::one())]).collect(),
        }
    }
}

impl Allocation for IntegralAllocation {
    fn num_agents(&self) -> usize {
        self.num_agents
    }

    fn num_items(&self) -> usize {
        self.owner.len()
    }

    fn fraction(&self, agent: usize, item: usize) -> Rational {
        if self.owner[item] == agent {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    fn utility(&self, instance: &Instance, agent: usize) -> Rational {
        self.owner
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == agent)
            .fold(Rational::zero(), |acc, (o, _)| acc + instance.utility_of(agent, o))
    }

    fn utilities(&self, instance: &Instance) -> Vec<Rational> {
        let mut totals = vec![Rational::zero(); self.num_agents];
        for (o, &a) in self.owner.iter().enumerate() {
            totals[a] += instance.utility_of(a, o);
        }
        totals
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, rational};

    fn goods_aggregate() -> Instance {
        // A, B, C as single aggregated items
        Instance::with_equal_weights(vec![
            vec![rational(3, 10), rational(2, 10), rational(5, 10)],
            vec![rational(34, 100), rational(16, 100), rational(5, 10)],
            vec![rational(16, 100), rational(5, 10), rational(34, 100)],
        ])
        .unwrap()
    }

    #[test]
    fn integral_utility() {
        let inst = goods_aggregate();
        let x = IntegralAllocation::from_bundles(3, &[vec![1], vec![0], vec![2]]).unwrap();
        assert_eq!(utility(&inst, &x, 1), rational(34, 100));
        assert_eq!(utility(&inst, &x, 0), rational(1, 5));
        let all = IntegralAllocation::new(3, vec![0, 0, 0]).unwrap();
        assert_eq!(utility(&inst, &all, 0), inst.total_utility(0));
        assert_eq!(utility(&inst, &all, 2), integer(0));
        assert_eq!(utilities(&inst, &all), all.to_fractional().utilities(&inst));
    }

    #[test]
    fn fractional_validation() {
        let half = rational(1, 2);
        assert!(FractionalAllocation::from_columns(2, vec![vec![(0, half.clone()), (1, half.clone())]]).is_ok());
        assert!(FractionalAllocation::from_columns(2, vec![vec![(0, half.clone())]]).is_err());
        assert!(FractionalAllocation::from_columns(2, vec![vec![(0, half.clone()), (0, half.clone())]]).is_err());
        assert!(FractionalAllocation::from_columns(1, vec![vec![(1, integer(1))]]).is_err());
        assert!(FractionalAllocation::from_columns(2, vec![vec![(0, integer(2)), (1, integer(-1))]]).is_err());
        let zeros_dropped =
            FractionalAllocation::from_columns(2, vec![vec![(1, integer(1)), (0, integer(0))]]).unwrap();
        assert_eq!(zeros_dropped.consumers(0), &[(1, integer(1))]);
    }

    #[test]
    fn bundles_validation() {
        assert!(IntegralAllocation::from_bundles(2, &[vec![0], vec![0, 1]]).is_err());
        assert!(IntegralAllocation::from_bundles(2, &[vec![0], vec![]]).is_err());
        assert!(IntegralAllocation::from_bundles(1, &[vec![3]]).is_err());
        assert!(IntegralAllocation::new(2, vec![0, 2]).is_err());
    }

    #[test]
    fn dense_roundtrip() {
        let rows = vec![
            vec![rational(1, 3), integer(1), integer(0)],
            vec![rational(2, 3), integer(0), integer(1)],
        ];
        let x = FractionalAllocation::from_dense(&rows).unwrap();
        assert_eq!(x.to_dense(), rows);
        assert_eq!(x.shared_item_count(), 1);
        assert!(x.to_integral().is_none());
        assert_eq!(x.fraction(1, 0), rational(2, 3));
        assert_eq!(x.fraction(0, 2), integer(0));
    }
}
