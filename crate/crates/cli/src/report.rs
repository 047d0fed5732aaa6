//! JSON rendering of reports, with indices translated to ids.

use fairalloc::rational::format_rational;
use fairalloc::verify::{Adjustment, AgentWitness, PropertyReport, WelfareWeights};
use fairalloc::FractionalAllocation;
use serde_json::{json, Map, Value};

use crate::document::LoadedInstance;

pub fn witness(loaded: &LoadedInstance, w: &AgentWitness) -> Value {
    let adjustment = match w.adjustment {
        Some(Adjustment::Add(o)) => json!({ "add": loaded.item_ids[o] }),
        Some(Adjustment::Remove(o)) => json!({ "remove": loaded.item_ids[o] }),
        None => Value::Null,
    };
    json!({
        "agent": loaded.agent_ids[w.agent],
        "utility": format_rational(&w.utility),
        "threshold": format_rational(&w.threshold),
        "adjustment": adjustment,
        "value": format_rational(&w.value),
        "holds": w.holds,
    })
}

pub fn property_report(loaded: &LoadedInstance, report: &PropertyReport) -> Value {
    json!({
        "property": report.property.name(),
        "holds": report.holds,
        "agents": report.agents.iter().map(|w| witness(loaded, w)).collect::<Vec<_>>(),
    })
}

pub fn welfare_weights(loaded: &LoadedInstance, weights: &WelfareWeights) -> Value {
    let map: Map<String, Value> = loaded
        .agent_ids
        .iter()
        .zip(&weights.lambda)
        .map(|(id, l)| (id.clone(), Value::String(format_rational(l))))
        .collect();
    Value::Object(map)
}

/// `{itemId: {agentId: fraction}}`, listing only positive fractions.
pub fn fractional(loaded: &LoadedInstance, x: &FractionalAllocation) -> Value {
    let map: Map<String, Value> = loaded
        .item_ids
        .iter()
        .zip(x.columns())
        .map(|(item, column)| {
            let shares: Map<String, Value> = column
                .iter()
                .map(|(i, f)| (loaded.agent_ids[*i].clone(), Value::String(format_rational(f))))
                .collect();
            (item.clone(), Value::Object(shares))
        })
        .collect();
    Value::Object(map)
}
