//! Fair division of indivisible goods and chores under additive utilities and
//! asymmetric entitlements.
//!
//! The crate computes integral allocations that are fractionally Pareto
//! optimal (fPO) and weighted proportional up to one item (weighted PROP1):
//!
//! 1. start from the equal-share allocation that gives every agent a fraction
//!    `b_i` of each item ([`improve::proportional_seed`]);
//! 2. move to a welfare-maximal allocation that dominates it and has an acyclic
//!    consumption graph ([`improve::improve_to_acyclic_fpo`]), using an exact
//!    rational simplex ([`lp`]);
//! 3. round the forest of shared items by exploring it from a root agent
//!    ([`rounding`]).
//!
//! Every property is checked independently by [`verify`], and all arithmetic
//! is exact.

pub mod allocation;
pub mod error;
pub mod graph;
pub mod improve;
pub mod instance;
pub mod lp;
pub mod rational;
pub mod rounding;
pub mod verify;

pub use allocation::{utilities, utility, Allocation, FractionalAllocation, IntegralAllocation};
pub use error::{Error, Result};
pub use graph::{ConsumptionGraph, Vertex};
pub use instance::Instance;
pub use rational::Rational;
pub use rounding::{ExplorationOrder, ExplorationStrategy, PipelineOutput, RootRule};
