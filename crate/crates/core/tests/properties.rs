//! Invariants of each stage on seeded random instances.

mod support {
    pub mod random;
}

use fairalloc::allocation::Allocation;
use fairalloc::improve::{improve_traced, proportional_seed};
use fairalloc::rational::integer;
use fairalloc::rounding::{
    check_zero_neutrality, fractional_stage, resolve_zero_items, round_acyclic_traced, round_fractional_stage,
};
use fairalloc::verify::{self, Property, DEFAULT_ENUMERATION_CAP};
use fairalloc::{ConsumptionGraph, ExplorationStrategy, Instance, IntegralAllocation, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn improvement_invariants() {
    for inst in support::random::suite(11, 120) {
        let seed = proportional_seed(&inst);
        let state = improve_traced(&inst, &seed).unwrap();
        let x = &state.current_allocation;
        for (i, (ux, us)) in x.utilities(&inst).iter().zip(seed.utilities(&inst)).enumerate() {
            assert!(*ux >= us);
            assert!(*ux >= inst.proportional_share(i));
        }
        assert!(ConsumptionGraph::from(x).find_cycle().is_none());
        assert!(!verify::pareto_improvement_exists(&inst, x).unwrap());
        for &(i, o) in &state.forbidden {
            assert!(x.fraction(i, o).is_zero());
        }
        assert!(state.forbidden.len() <= inst.num_agents() * inst.num_items());
        // shared items are goods for all sharers, chores for all, or worthless to all
        for (o, column) in x.columns().iter().enumerate() {
            let signs: Vec<i8> = column
                .iter()
                .map(|(i, _)| {
                    let u = inst.utility_of(*i, o);
                    if u.is_positive() { 1 } else if u.is_negative() { -1 } else { 0 }
                })
                .collect();
            assert!(signs.windows(2).all(|w| w[0] == w[1]), "item {o} shared across signs");
        }
        let weights = verify::find_welfare_weights_fractional(&inst, x).unwrap().unwrap();
        assert!(weights.certifies(&inst, x));
    }
}

#[test]
fn rounding_invariants_for_every_strategy() {
    for inst in support::random::suite(12, 120) {
        let x = fractional_stage(&inst).unwrap();
        check_zero_neutrality(&inst, &x).unwrap();
        let resolved = resolve_zero_items(&inst, &x);
        assert_eq!(resolved.utilities(&inst), x.utilities(&inst));
        let graph = ConsumptionGraph::from(&x);
        for strategy in ExplorationStrategy::standard_variants() {
            let (pi, trace) = round_acyclic_traced(&inst, &resolved, &strategy).unwrap();
            assert!(ConsumptionGraph::from(&pi).is_subgraph_of(&graph));
            assert!(trace.predecessors.iter().all(|p| p.len() <= 1));
            let mut last = resolved.shared_item_count();
            for &remaining in &trace.shared_remaining {
                assert!(remaining < last);
                last = remaining;
            }
            let report = verify::weighted_prop1(&inst, &pi);
            assert!(report.holds && report.revalidate(&inst, &pi));
            assert!(!verify::pareto_improvement_exists(&inst, &pi).unwrap());
            assert!(verify::is_pareto_optimal_integral(&inst, &pi, DEFAULT_ENUMERATION_CAP).unwrap());
        }
    }
}

#[test]
fn welfare_weights_carry_over_from_rounding() {
    for inst in support::random::suite(13, 80) {
        let x = fractional_stage(&inst).unwrap();
        let out = round_fractional_stage(&inst, x, &ExplorationStrategy::default()).unwrap();
        let weights = out.report.welfare_weights.expect("fPO allocation admits weights");
        assert!(weights.certifies(&inst, &out.allocation.to_fractional()));
        assert!(weights.certifies(&inst, &out.fractional));
        assert!(out.report.fpo_certified);
    }
}

fn random_integral(rng: &mut impl Rng, n: usize, m: usize) -> IntegralAllocation {
    IntegralAllocation::new(n, (0..m).map(|_| rng.gen_range(0..n)).collect()).unwrap()
}

/// Every integral allocation, plainly enumerated.
fn all_integral(n: usize, m: usize) -> Vec<IntegralAllocation> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..n).map(move |a| [p.clone(), vec![a]].concat())).collect();
    }
    out.into_iter().map(|o| IntegralAllocation::new(n, o).unwrap()).collect()
}

#[test]
fn fpo_implies_po_and_brute_force_agrees_with_plain_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..150 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=5);
        let random_weights = rng.gen_bool(0.5);
        let inst = support::random::instance(&mut rng, n, m, -5, 5, random_weights);
        let pi = random_integral(&mut rng, n, m);
        let po = verify::is_pareto_optimal_integral(&inst, &pi, DEFAULT_ENUMERATION_CAP).unwrap();
        let plain = !all_integral(n, m).iter().any(|y| verify::pareto_dominates(&inst, y, &pi));
        assert_eq!(po, plain);
        if !verify::pareto_improvement_exists(&inst, &pi).unwrap() {
            assert!(po);
        }
        if let Some(better) = verify::find_integral_improvement(&inst, &pi, DEFAULT_ENUMERATION_CAP).unwrap() {
            assert!(verify::pareto_dominates(&inst, &better, &pi));
        }
    }
}

/// PROP1 with equal shares, written from the definition.
fn equal_share_prop1(inst: &Instance, pi: &IntegralAllocation) -> bool {
    let n = Rational::from_integer((inst.num_agents() as i64).into());
    (0..inst.num_agents()).all(|i| {
        let share = inst.total_utility(i) / &n;
        let own = pi.utility(inst, i);
        own >= share
            || (0..inst.num_items()).any(|o| {
                let u = inst.utility_of(i, o);
                if pi.owner(o) == i { &own - u >= share } else { &own + u >= share }
            })
    })
}

#[test]
fn prop1_reductions_and_implications() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..400 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=6);
        let inst = support::random::instance(&mut rng, n, m, -5, 5, false);
        let pi = random_integral(&mut rng, n, m);
        let prop1 = verify::weighted_prop1(&inst, &pi);
        assert_eq!(prop1.holds, equal_share_prop1(&inst, &pi));
        let propx = verify::propx(&inst, &pi);
        if propx.holds {
            assert!(prop1.holds);
        }
        let prop = verify::weighted_prop(&inst, &pi);
        if prop.holds {
            assert!(prop1.holds);
        }
        for report in [&prop, &prop1, &propx] {
            assert!(report.revalidate(&inst, &pi), "{} witness does not revalidate", report.property);
        }
    }
}

#[test]
fn tampered_witness_fails_revalidation() {
    let inst = Instance::from_integers(vec![integer(1); 2], &[vec![3, 1], vec![1, 3]]).unwrap();
    let pi = IntegralAllocation::new(2, vec![1, 0]).unwrap();
    let mut report = verify::check(&inst, &pi, Property::Prop1);
    assert!(report.revalidate(&inst, &pi));
    report.agents[0].holds = !report.agents[0].holds;
    assert!(!report.revalidate(&inst, &pi));
}

#[test]
fn single_agent_and_empty_instances() {
    let single = Instance::from_integers(vec![integer(3)], &[vec![2, -1, 0]]).unwrap();
    let out = fairalloc::rounding::rounding_pipeline(&single).unwrap();
    assert_eq!(out.allocation.owners(), &[0, 0, 0]);
    assert!(out.report.prop1.holds && out.report.fpo_certified);

    let empty = Instance::from_integers(vec![integer(1), integer(2)], &[vec![], vec![]]).unwrap();
    let out = fairalloc::rounding::rounding_pipeline(&empty).unwrap();
    assert_eq!(out.allocation.owners(), &[] as &[usize]);
    assert!(out.report.prop1.holds && out.report.fpo_certified);
    assert!(verify::weighted_prop(&empty, &out.allocation).holds);
}
