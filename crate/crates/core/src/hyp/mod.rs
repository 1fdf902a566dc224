//! Fuchsian groups: Möbius arithmetic, presentations, coset enumeration,
//! subgroup search and the genus / colour-budget arithmetic of quotient
//! surfaces.

mod coset;
mod moebius;
mod presentation;
mod subgroup;
mod surface;
mod word;

pub use coset::{cycle_lengths, is_torsion_free, low_index_subgroups, todd_coxeter, CosetTable};
pub use moebius::{
    classify_and_length, disc_to_half_plane, half_plane_distance, half_plane_to_disc,
    hyperbolic_distance, IsometryClass, MoebiusMatrix, CLASSIFY_EPS, DEDUP_EPS,
};
pub use presentation::{
    covering_radius, triangle_group, triangle_vertices, FuchsianPresentation, Signature,
};
pub use subgroup::{
    enumerate_short_translations, subgroup_avoiding_short, SearchBudget, ShortElement,
    SubgroupCertificate,
};
pub use surface::{colour_budget, riemann_hurwitz_genus, ColourBudget};
pub use word::{Letter, Word};
