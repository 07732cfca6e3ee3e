//! The distortion-cost region of semantic encoding.

mod frontier;
mod subsets;
mod timeshare;

pub use frontier::{
    build_frontier, build_frontier_with, critical_encoders_from_subsets, critical_points,
    distortion_cost_function, region_contains, CriticalPoint, CriticalPoints, FrontierVertex,
    RegionFrontier, Step, TieBreak,
};
pub use subsets::{all_six_subsets, six_subsets, six_subsets_from, slope_g, SixSubsets};
pub use timeshare::{mixture_point, time_share_decompose};
