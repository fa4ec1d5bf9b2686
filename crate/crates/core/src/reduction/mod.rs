//! Reduction from graph 3-coloring and its verifiers.

mod construct;
mod graph;
mod maps;
mod verify;

pub use construct::{build_gadget_group1, reduce_3coloring, reduced_length, reduction_budget, ReductionOutput, Role, MAX_BLOCK};
pub use graph::{Coloring, Graph};
pub use maps::{centroid_to_coloring, coloring_to_centroid};
pub use verify::{
    check_cover, structured_minimum, verify_gadget_lemma, CoverReport, GadgetReport, StructuredReport,
    GADGET_MAX_COLUMNS, STRUCTURED_MAX_NHAT,
};
