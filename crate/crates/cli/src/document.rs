//! JSON documents for instances and allocations.
//!
//! Rationals travel as strings (`"3/10"`, `"-2"`) so values stay exact.

use std::collections::HashMap;

use fairalloc::rational::{format_rational, parse_rational};
use fairalloc::{Instance, IntegralAllocation, Rational};
use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

mod rational_matrix {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Cell(#[serde(with = "rational_string")] Rational);

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<Cell>>::deserialize(d)?;
        Ok(rows.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub id: String,
    #[serde(with = "rational_string")]
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub agents: Vec<AgentEntry>,
    pub items: Vec<String>,
    /// Indexed `[agent][item]`.
    #[serde(with = "rational_matrix")]
    pub utilities: Vec<Vec<Rational>>,
}

/// An instance together with the id tables used to translate indices back.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub agent_ids: Vec<String>,
    pub item_ids: Vec<String>,
}

impl LoadedInstance {
    pub fn agent_index(&self, id: &str) -> Result<usize, CliError> {
        self.agent_ids
            .iter()
            .position(|a| a == id)
            .ok_or_else(|| CliError::Input(format!("unknown agent id {id:?}")))
    }

    pub fn item_index(&self, id: &str) -> Result<usize, CliError> {
        self.item_ids
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| CliError::Input(format!("unknown item id {id:?}")))
    }

    /// `{itemId: agentId}` in item order.
    pub fn owner_map(&self, pi: &IntegralAllocation) -> IndexMap<String, String> {
        self.item_ids
            .iter()
            .zip(pi.owners())
            .map(|(o, &i)| (o.clone(), self.agent_ids[i].clone()))
            .collect()
    }

    pub fn allocation_from_owner_map(&self, owner: &IndexMap<String, String>) -> Result<IntegralAllocation, CliError> {
        let mut owners = vec![None; self.item_ids.len()];
        for (item, agent) in owner {
            let o = self.item_index(item)?;
            owners[o] = Some(self.agent_index(agent)?);
        }
        let owners = owners
            .into_iter()
            .enumerate()
            .map(|(o, a)| a.ok_or_else(|| CliError::Input(format!("item {:?} has no owner", self.item_ids[o]))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntegralAllocation::new(self.agent_ids.len(), owners)?)
    }
}

fn check_unique(kind: &str, ids: &[String]) -> Result<(), CliError> {
    let mut seen = HashMap::new();
    for (k, id) in ids.iter().enumerate() {
        if let Some(prev) = seen.insert(id.as_str(), k) {
            return Err(CliError::Input(format!("duplicate {kind} id {id:?} at positions {prev} and {k}")));
        }
    }
    Ok(())
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("instance: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn load(&self) -> Result<LoadedInstance, CliError> {
        let agent_ids: Vec<String> = self.agents.iter().map(|a| a.id.clone()).collect();
        check_unique("agent", &agent_ids)?;
        check_unique("item", &self.items)?;
        if self.utilities.len() != self.agents.len() {
            return Err(CliError::Input(format!(
                "utilities has {} rows for {} agents",
                self.utilities.len(),
                self.agents.len()
            )));
        }
        if let Some((i, row)) = self.utilities.iter().enumerate().find(|(_, r)| r.len() != self.items.len()) {
            return Err(CliError::Input(format!(
                "utility row of agent {:?} has {} entries for {} items",
                agent_ids[i],
                row.len(),
                self.items.len()
            )));
        }
        let weights = self.agents.iter().map(|a| a.weight.clone()).collect();
        let instance = Instance::new(weights, self.utilities.clone())?;
        Ok(LoadedInstance { instance, agent_ids, item_ids: self.items.clone() })
    }
}

/// `{"owner": {itemId: agentId}}`. The `solve` output, whose map sits under
/// `"allocation"`, is accepted as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationDocument {
    #[serde(alias = "allocation")]
    pub owner: IndexMap<String, String>,
}

impl AllocationDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("allocation: {e}")))
    }
}
