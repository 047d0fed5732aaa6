#![allow(dead_code)]

//! Instances and allocations from the worked examples, with item order
//! `A, b1..b10, c1..c20` for goods and `a1..a10, B, C` for chores.

use fairalloc::rational::{integer, rational};
use fairalloc::{FractionalAllocation, Instance, IntegralAllocation, Rational};

fn equal_weights(n: usize) -> Vec<Rational> {
    vec![integer(1); n]
}

/// 3 agents; A worth (0.3, 0.34, 0.16); each of b1..b10 worth (0.02, 0.016, 0.05);
/// each of c1..c20 worth (0.025, 0.025, 0.017).
pub fn goods_example() -> Instance {
    let per_agent = [
        (rational(3, 10), rational(2, 100), rational(25, 1000)),
        (rational(34, 100), rational(16, 1000), rational(25, 1000)),
        (rational(16, 100), rational(5, 100), rational(17, 1000)),
    ];
    let rows = per_agent
        .iter()
        .map(|(a, b, c)| {
            let mut row = vec![a.clone()];
            row.extend(std::iter::repeat_n(b.clone(), 10));
            row.extend(std::iter::repeat_n(c.clone(), 20));
            row
        })
        .collect();
    Instance::new(equal_weights(3), rows).unwrap()
}

/// Item sets of the goods example as (A, B, C) index lists.
pub fn goods_sets() -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    (vec![0], (1..=10).collect(), (11..=30).collect())
}

/// Bundles given as set indices 0 = A, 1 = B, 2 = C, one per agent.
pub fn goods_allocation(sets_per_agent: [usize; 3]) -> IntegralAllocation {
    let (a, b, c) = goods_sets();
    let sets = [a, b, c];
    let bundles: Vec<Vec<usize>> = sets_per_agent.iter().map(|&s| sets[s].clone()).collect();
    IntegralAllocation::from_bundles(31, &bundles).unwrap()
}

/// 3 agents; each of a1..a10 worth (-0.04, -0.03, -0.06); B worth
/// (-0.5, -0.6, -0.1); C worth (-0.1, -0.1, -0.3).
pub fn chores_example() -> Instance {
    let per_agent = [
        (rational(-4, 100), rational(-5, 10), rational(-1, 10)),
        (rational(-3, 100), rational(-6, 10), rational(-1, 10)),
        (rational(-6, 100), rational(-1, 10), rational(-3, 10)),
    ];
    let rows = per_agent
        .iter()
        .map(|(a, b, c)| {
            let mut row: Vec<Rational> = std::iter::repeat_n(a.clone(), 10).collect();
            row.push(b.clone());
            row.push(c.clone());
            row
        })
        .collect();
    Instance::new(equal_weights(3), rows).unwrap()
}

/// Bundles given as set indices 0 = A (a1..a10), 1 = B, 2 = C.
pub fn chores_allocation(sets_per_agent: [usize; 3]) -> IntegralAllocation {
    let sets: [Vec<usize>; 3] = [(0..10).collect(), vec![10], vec![11]];
    let bundles: Vec<Vec<usize>> = sets_per_agent.iter().map(|&s| sets[s].clone()).collect();
    IntegralAllocation::from_bundles(12, &bundles).unwrap()
}

/// Five identical items worth 3, 3, 3, 3, 1 to each of three agents.
pub fn propx_example() -> Instance {
    Instance::from_integers(equal_weights(3), &[vec![3, 3, 3, 3, 1], vec![3, 3, 3, 3, 1], vec![3, 3, 3, 3, 1]]).unwrap()
}

/// Five agents and items a..h with the sign pattern of the rounding
/// illustration; unit magnitudes.
pub fn forest_instance() -> Instance {
    Instance::from_integers(
        equal_weights(5),
        &[
            vec![1, 1, -1, 1, -1, 1, 1, 1],
            vec![1, -1, -1, 1, -1, 1, 1, 1],
            vec![1, 1, -1, -1, -1, 1, 1, -1],
            vec![-1, 1, -1, -1, -1, 1, 1, -1],
            vec![-1, -1, -1, 1, -1, -1, 1, 1],
        ],
    )
    .unwrap()
}

/// a shared by agents 1, 2; c by 1, 5; f by 3, 4; all other items owned
/// alone (agents numbered from 1 here, indices from 0 in code).
pub fn forest_allocation() -> FractionalAllocation {
    let half = || rational(1, 2);
    let one = || integer(1);
    FractionalAllocation::from_columns(
        5,
        vec![
            vec![(0, half()), (1, half())],
            vec![(0, one())],
            vec![(0, half()), (4, half())],
            vec![(1, one())],
            vec![(2, one())],
            vec![(2, half()), (3, half())],
            vec![(2, one())],
            vec![(4, one())],
        ],
    )
    .unwrap()
}
