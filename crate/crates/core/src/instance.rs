//! Problem instances: agents with entitlements and an additive utility matrix.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `n` agents, `m` items, weights `b_i` summing to one, and utilities
/// `u_i(o)` of any sign.
///
/// Agents and items are addressed by 0-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    weights: Vec<Rational>,
    utilities: Vec<Vec<Rational>>,
    num_items: usize,
}

impl Instance {
    /// Builds an instance from positive weights (normalized here to sum to
    /// one) and an `n x m` utility matrix indexed `[agent][item]`.
    pub fn new(weights: Vec<Rational>, utilities: Vec<Vec<Rational>>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInstance("at least one agent is required".into()));
        }
        if weights.len() != utilities.len() {
            return Err(Error::InvalidInstance(format!(
                "{} weights but {} utility rows",
                weights.len(),
                utilities.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidInstance(format!("weight of agent {i} is not positive")));
        }
        let num_items = utilities[0].len();
        if let Some(i) = utilities.iter().position(|row| row.len() != num_items) {
            return Err(Error::InvalidInstance(format!(
                "utility row of agent {i} has {} entries, expected {num_items}",
                utilities[i].len()
            )));
        }
        let total = rational::sum(&weights);
        let weights = weights.into_iter().map(|w| w / &total).collect();
        Ok(Self { weights, utilities, num_items })
    }

    pub fn with_equal_weights(utilities: Vec<Vec<Rational>>) -> Result<Self> {
        let n = utilities.len();
        Self::new(vec![rational::integer(1); n], utilities)
    }

    /// Convenience constructor from integer utilities.
    pub fn from_integers(weights: Vec<Rational>, utilities: &[Vec<i64>]) -> Result<Self> {
        let utilities = utilities
            .iter()
            .map(|row| row.iter().map(|&u| rational::integer(u)).collect())
            .collect();
        Self::new(weights, utilities)
    }

    pub fn num_agents(&self) -> usize {
        self.weights.len()
    }

    pub fn num_items(&self) -> usize {
        self.num_items
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, agent: usize) -> &Rational {
        &self.weights[agent]
    }

    pub fn utility_of(&self, agent: usize, item: usize) -> &Rational {
        &self.utilities[agent][item]
    }

    pub fn utility_row(&self, agent: usize) -> &[Rational] {
        &self.utilities[agent]
    }

    pub fn utility_matrix(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    /// `u_i(O)`, the agent's value for the whole set of items.
    pub fn total_utility(&self, agent: usize) -> Rational {
        rational::sum(&self.utilities[agent])
    }

    /// The weighted proportional share `u_i(O) * b_i`.
    pub fn proportional_share(&self, agent: usize) -> Rational {
        self.total_utility(agent) * &self.weights[agent]
    }

    /// True when every agent assigns the same value to `a` and `b`.
    pub fn items_identical(&self, a: usize, b: usize) -> bool {
        self.utilities.iter().all(|row| row[a] == row[b])
    }

    pub fn is_zero_row(&self, agent: usize) -> bool {
        self.utilities[agent].iter().all(Zero::is_zero)
    }
}
