//! File formats, the bundled example corpus and SVG rendering.

pub mod corpus;
pub mod json;
pub mod svg;
