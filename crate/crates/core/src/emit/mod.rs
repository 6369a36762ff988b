//! Persistence and rendering.

pub mod json;
pub mod svg;

pub use json::{from_json, to_json, LaminationRecord, OrbitRecord, SetRecord};
pub use svg::{to_svg, RenderOptions};
