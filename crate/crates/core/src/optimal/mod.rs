//! Globally optimal discrete phase selection.
//!
//! Every element's best phase depends only on the direction `μ` of the final
//! sum. As `μ` turns once around the circle each element changes its choice
//! exactly at its K decision boundaries, so visiting the (at most NK) arcs
//! between sorted boundaries and updating g incrementally finds the optimum in
//! linear time. [`exhaustive_search`] is the brute-force reference.

mod boundaries;
mod exhaustive;
mod sweep;

pub use boundaries::{
    boundary_offsets, build_boundary_schedule, BoundaryOffsets, BoundarySet, Crossing,
    GROUPING_TOLERANCE,
};
pub use exhaustive::{exhaustive_search, exhaustive_search_with_budget, DEFAULT_EVALUATION_BUDGET};
pub use sweep::{algorithm1_optimize, lemma1_assign, sweep_optimum, BoundarySweep, SweepOptimum};
