//! Periodic graphs as voltage graphs: validation, realisation of finite
//! patches of the cover, end and connectivity diagnostics, and metric
//! queries.

mod cover;
mod graph;
mod metrics;
mod patch;
mod subgroup;

pub use cover::{Cover, CoverVertex, Element, VertexKey};
pub use graph::{
    Dart, GroupKind, PeriodicGraph, ValidationReport, Violation, ViolationKind, Voltage,
    VoltageGroup,
};
pub use metrics::{
    max_edge_length, shortest_noncontractible, shortest_noncontractible_capped,
    NONCONTRACTIBLE_CAP,
};
pub use patch::{
    build_patch, estimate_ends, patch_connectivity, separated_components, vertex_cuts,
    Connectivity, Patch, DEFAULT_PATCH_CAP,
};
pub use subgroup::SubgroupDescriptor;

/// Report-valued invariant check.
pub fn validate_quotient(pg: &PeriodicGraph) -> ValidationReport {
    pg.validate()
}
