//! Exact solvers: brute force, the distance-vector DP, the bounded search
//! tree, the dispatcher between the last two, and the committee variant.

pub mod bruteforce;
pub mod committee;
pub mod dispatch;
pub mod dp;
pub mod majority;
pub mod preprocess;
pub mod searchtree;
pub(crate) mod track;

pub use bruteforce::{
    all_optimal_centroids, solve_bruteforce, solve_bruteforce_as, solve_bruteforce_with_cap,
    solve_committee_bruteforce, solve_committee_bruteforce_with_cap, DEFAULT_BRUTEFORCE_CAP,
};
pub use committee::solve_committee;
pub use dispatch::{dispatch_choice, dispatch_threshold, solve_dispatch, solve_dispatch_with};
pub use dp::{distance_cap, max_single_distance, solve_dp, DpConfig, DpTable};
pub use majority::solve_majority;
pub use preprocess::{preprocess, PreprocessReport};
pub use searchtree::{search_radius, solve_searchtree, solve_searchtree_with, SearchProgress, SearchTreeConfig};
