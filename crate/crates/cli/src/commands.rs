//! The subcommands, as functions from parsed inputs to JSON values.

use fairalloc::rational::{format_rational, integer};
use fairalloc::rounding::rounding_pipeline_with;
use fairalloc::verify::{self, Property};
use fairalloc::{Allocation, ExplorationStrategy, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::document::{AgentEntry, AllocationDocument, InstanceDocument};
use crate::error::CliError;
use crate::report;

/// Result of a command: the JSON to print and whether everything checked held.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Value,
    pub holds: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }
}

pub fn solve(doc: &InstanceDocument, strategy: &ExplorationStrategy) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let out = rounding_pipeline_with(&loaded.instance, strategy)?;
    if !out.report.prop1.holds || !out.report.fpo_certified {
        return Err(CliError::Internal("pipeline output failed its own certificates".into()));
    }
    let weights = out.report.welfare_weights.as_ref().map(|w| report::welfare_weights(&loaded, w));
    let output = json!({
        "allocation": loaded.owner_map(&out.allocation),
        "fractionalIntermediate": report::fractional(&loaded, &out.fractional),
        "certificates": {
            "prop1": report::property_report(&loaded, &out.report.prop1)["agents"],
            "fpoCertified": out.report.fpo_certified,
            "welfareWeights": weights.unwrap_or(Value::Null),
        },
    });
    Ok(Outcome { output, holds: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Prop,
    Prop1,
    Propx,
    Po,
    Fpo,
    Dominates,
}

impl Check {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        Ok(match name.trim() {
            "prop" => Check::Prop,
            "prop1" => Check::Prop1,
            "propx" => Check::Propx,
            "po" => Check::Po,
            "fpo" => Check::Fpo,
            "dominates" => Check::Dominates,
            other => return Err(CliError::Input(format!("unknown property {other:?}"))),
        })
    }

    pub fn parse_list(list: &str) -> Result<Vec<Self>, CliError> {
        list.split(',').filter(|s| !s.trim().is_empty()).map(Self::parse).collect()
    }
}

pub fn verify(
    doc: &InstanceDocument,
    allocation: &AllocationDocument,
    checks: &[Check],
    against: Option<&AllocationDocument>,
    cap: u128,
) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let inst = &loaded.instance;
    let pi = loaded.allocation_from_owner_map(&allocation.owner)?;
    let mut reports = Vec::new();
    for check in checks {
        let value = match check {
            Check::Prop => report::property_report(&loaded, &verify::weighted_prop(inst, &pi)),
            Check::Prop1 => report::property_report(&loaded, &verify::weighted_prop1(inst, &pi)),
            Check::Propx => report::property_report(&loaded, &verify::propx(inst, &pi)),
            Check::Po => {
                let better = verify::find_integral_improvement(inst, &pi, cap)?;
                json!({
                    "property": "po",
                    "holds": better.is_none(),
                    "improvement": better.map(|b| loaded.owner_map(&b)),
                })
            }
            Check::Fpo => {
                let gain = verify::max_pareto_gain(inst, &pi)?;
                let holds = gain == Rational::from_integer(0.into());
                let weights = if holds { verify::find_welfare_weights(inst, &pi)? } else { None };
                json!({
                    "property": "fpo",
                    "holds": holds,
                    "maxParetoGain": format_rational(&gain),
                    "welfareWeights": weights.map(|w| report::welfare_weights(&loaded, &w)),
                })
            }
            Check::Dominates => {
                let other = against.ok_or_else(|| CliError::Input("dominates needs --against".into()))?;
                let other = loaded.allocation_from_owner_map(&other.owner)?;
                json!({
                    "property": "dominates",
                    "holds": verify::pareto_dominates(inst, &pi, &other),
                    "utilities": pi.utilities(inst).iter().map(format_rational).collect::<Vec<_>>(),
                    "againstUtilities": other.utilities(inst).iter().map(format_rational).collect::<Vec<_>>(),
                })
            }
        };
        reports.push(value);
    }
    let holds = reports.iter().all(|r| r["holds"] == Value::Bool(true));
    Ok(Outcome { output: json!({ "holds": holds, "reports": reports }), holds })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    Equal,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub min: i64,
    pub max: i64,
    pub weights: WeightMode,
    pub seed: u64,
}

/// Random weights are drawn from 1..=10 and normalized to sum to one.
pub fn gen(p: &GenParams) -> Result<InstanceDocument, CliError> {
    if p.n == 0 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    if p.min > p.max {
        return Err(CliError::Input(format!("empty utility range [{}, {}]", p.min, p.max)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let raw: Vec<i64> = (0..p.n)
        .map(|_| match p.weights {
            WeightMode::Equal => 1,
            WeightMode::Random => rng.gen_range(1..=10),
        })
        .collect();
    let total = integer(raw.iter().sum());
    let agents = raw
        .iter()
        .enumerate()
        .map(|(i, &w)| AgentEntry { id: format!("a{}", i + 1), weight: integer(w) / &total })
        .collect();
    let utilities = (0..p.n).map(|_| (0..p.m).map(|_| integer(rng.gen_range(p.min..=p.max))).collect()).collect();
    Ok(InstanceDocument { agents, items: (1..=p.m).map(|o| format!("o{o}")).collect(), utilities })
}

pub fn parse_search_property(name: &str) -> Result<Property, CliError> {
    match Check::parse(name)? {
        Check::Prop => Ok(Property::Prop),
        Check::Prop1 => Ok(Property::Prop1),
        Check::Propx => Ok(Property::Propx),
        _ => Err(CliError::Input(format!("search supports prop, prop1 and propx, not {name:?}"))),
    }
}

/// Exit status 0 when some allocation satisfies the property, 1 when none does.
pub fn search(doc: &InstanceDocument, property: Property, cap: u128) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let outcome = verify::search(&loaded.instance, property, cap)?;
    let output = json!({
        "property": property.name(),
        "total": outcome.total.to_string(),
        "count": outcome.count.to_string(),
        "witness": outcome.witness.map(|w| loaded.owner_map(&w)),
    });
    Ok(Outcome { output, holds: outcome.count > 0 })
}
