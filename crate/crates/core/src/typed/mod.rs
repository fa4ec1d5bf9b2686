//! Column-type compression, the n-fold IP export and a branch-and-bound
//! solver over type counts.

pub mod bb;
pub mod cnip;
pub mod profile;

pub use bb::{relax, solve_typed_bb, solve_typed_centroid, solve_typed_optimum, BbStats, Relaxation};
pub use cnip::{build_cnip, CnipModel};
pub use profile::{decode_centroid, extract_types, TypeProfile, TypeSolution};
