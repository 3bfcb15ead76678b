//! Graph homomorphisms, the category ladder OG ⊇ POG ⊇ TBPOG ⊇ CRTBPOG, and admissible inclusions.

mod admissible;
mod hom;
mod vertex_sets;

pub use admissible::{admissible_equiv_crtbpog, is_admissible, Admissibility};
pub use hom::{Category, GraphHom, HomClassification, HomReport};
pub use vertex_sets::{
    breaking_vertices, desaturating_vertices, is_hereditary, is_saturated, is_unbroken,
    saturation, HereditaryCheck, VertexSet,
};
