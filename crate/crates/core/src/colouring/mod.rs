//! Quotients by finite-index subgroups, finite colouring engines and lifts.

mod engines;
mod lift;
mod pipeline;
mod quotient;

pub(crate) use pipeline::check_one_end;

pub use engines::{
    colour_quotient, dsatur, exact_k, QuotientColouring, SimpleGraph, Strategy, DEFAULT_NODE_BUDGET,
};
pub use lift::{lift_colouring, ColourSource, PeriodicColouring};
pub use quotient::{
    quotient_loop_error, quotient_mod_subgroup, resolution_respects_edges, QuotientGraph, QuotientVertex,
};
pub use pipeline::{
    colour_pipeline, euclid_pipeline, hyp_pipeline, PipelineOptions, PipelineOutput, PipelineReport,
    LENGTH_MARGIN, MAX_EXACT_DOUBLINGS, MAX_LOOP_DOUBLINGS,
};
