mod support {
    pub mod instances;
}

use fairalloc::rounding::{round_acyclic, round_acyclic_traced, rounding_pipeline};
use fairalloc::verify::{self, DEFAULT_ENUMERATION_CAP};
use fairalloc::{ConsumptionGraph, ExplorationOrder, ExplorationStrategy, IntegralAllocation, RootRule};
use support::instances::*;

#[test]
fn forest_fixture_has_two_trees() {
    let x = forest_allocation();
    let g = ConsumptionGraph::from(&x);
    assert!(g.find_cycle().is_none());
    // 13 vertices, 11 edges, so two components
    assert_eq!(g.edge_count(), 11);
    assert_eq!(g.neighbors(0), vec![1, 4]);
    assert_eq!(g.neighbors(2), vec![3]);
}

#[test]
fn default_rounding_matches_table() {
    let (pi, trace) = round_acyclic_traced(&forest_instance(), &forest_allocation(), &Default::default()).unwrap();
    // agent 1: {b}; 2: {a, d}; 3: {e, f, g}; 4: {}; 5: {c, h}
    let want = IntegralAllocation::from_bundles(8, &[vec![1], vec![0, 3], vec![4, 5, 6], vec![], vec![2, 7]]).unwrap();
    assert_eq!(pi, want);
    assert_eq!(trace.roots, vec![1, 2]);
    assert_eq!(trace.activation_order, vec![1, 0, 4, 2, 3]);
    assert_eq!(trace.shared_remaining, vec![1, 0]);
}

#[test]
fn alternative_roots_rounding() {
    let strategy = ExplorationStrategy::new(ExplorationOrder::BreadthFirst, RootRule::Preferred(vec![0, 3]));
    let (pi, trace) = round_acyclic_traced(&forest_instance(), &forest_allocation(), &strategy).unwrap();
    // agent 1: {a, b}; 2: {d}; 4: {f}; 5: {c, h}; agent 3 keeps the rest
    let want = IntegralAllocation::from_bundles(8, &[vec![0, 1], vec![3], vec![4, 6], vec![5], vec![2, 7]]).unwrap();
    assert_eq!(pi, want);
    assert_eq!(trace.roots, vec![0, 3]);
}

#[test]
fn rounding_output_is_subgraph_for_every_strategy() {
    let x = forest_allocation();
    let g = ConsumptionGraph::from(&x);
    for strategy in ExplorationStrategy::standard_variants() {
        let (pi, trace) = round_acyclic_traced(&forest_instance(), &x, &strategy).unwrap();
        assert!(ConsumptionGraph::from(&pi).is_subgraph_of(&g));
        assert!(trace.predecessors.iter().all(|p| p.len() <= 1));
    }
}

#[test]
fn depth_first_explores_last_neighbor_first() {
    // chain: agent 0 shares item 0 with 1 and item 1 with 2
    let inst = fairalloc::Instance::from_integers(vec![fairalloc::rational::integer(1); 3], &[vec![1, 1], vec![1, 1], vec![1, 1]])
        .unwrap();
    let half = || fairalloc::rational::rational(1, 2);
    let x = fairalloc::FractionalAllocation::from_columns(3, vec![vec![(0, half()), (1, half())], vec![(0, half()), (2, half())]])
        .unwrap();
    let dfs = ExplorationStrategy::new(ExplorationOrder::DepthFirst, RootRule::LowestIndexSharingAgent);
    let (pi, trace) = round_acyclic_traced(&inst, &x, &dfs).unwrap();
    assert_eq!(trace.activation_order, vec![0, 2, 1]);
    assert_eq!(pi.owners(), &[0, 0]);
    let root_one = ExplorationStrategy::new(ExplorationOrder::BreadthFirst, RootRule::SharesExactlyOneItem);
    assert_eq!(round_acyclic(&inst, &x, &root_one).unwrap().owners(), &[1, 0]);
}

#[test]
fn goods_example_judgements() {
    let inst = goods_example();
    let x = goods_allocation([1, 0, 2]);
    let y = goods_allocation([0, 2, 1]);
    assert_eq!(fairalloc::utility(&inst, &x, 1), fairalloc::rational::rational(34, 100));
    assert!(verify::weighted_prop1(&inst, &x).holds);
    assert!(verify::pareto_dominates(&inst, &y, &x));
    assert!(!verify::weighted_prop(&inst, &y).holds);
    assert!(!verify::weighted_prop1(&inst, &y).holds);
    assert!(!verify::is_pareto_optimal_integral(&inst, &x, DEFAULT_ENUMERATION_CAP).unwrap());
    let seed = fairalloc::improve::proportional_seed(&inst);
    assert!(verify::pareto_improvement_exists(&inst, &seed).unwrap());
}

#[test]
fn goods_example_pipeline() {
    let inst = goods_example();
    let out = rounding_pipeline(&inst).unwrap();
    assert!(out.report.prop1.holds);
    assert!(out.report.fpo_certified);
    assert!(verify::is_pareto_optimal_integral(&inst, &out.allocation, DEFAULT_ENUMERATION_CAP).unwrap());
    let weights = out.report.welfare_weights.unwrap();
    assert!(weights.certifies(&inst, &out.allocation.to_fractional()));
    assert!(weights.certifies(&inst, &out.fractional));
}

#[test]
fn chores_example_pipeline() {
    let inst = chores_example();
    let x = chores_allocation([1, 0, 2]);
    let y = chores_allocation([0, 2, 1]);
    assert!(verify::weighted_prop1(&inst, &x).holds);
    assert!(verify::pareto_dominates(&inst, &y, &x));
    assert!(!verify::weighted_prop1(&inst, &y).holds);

    let out = rounding_pipeline(&inst).unwrap();
    assert!(out.report.prop1.holds);
    assert!(out.report.fpo_certified);
    assert!(verify::is_pareto_optimal_integral(&inst, &out.allocation, DEFAULT_ENUMERATION_CAP).unwrap());
}
