//! Floating-point pictures of the exact classification: the Lobachevsky
//! disc, the unrolled de Sitter cylinder and the sun-eclipse ring, with SVG
//! output for tilings and orbit overlays.

pub mod error;
pub mod projection;
pub mod svg;

pub use error::{RenderError, Result};
pub use projection::{
    apply_homography, cylinder_to_hyperboloid, disc_apply_word, disc_generator, disc_to_halfplane,
    eclipse_project, eclipse_stages, eclipse_two_sheet, halfplane_to_disc, project_one_sheet,
    project_two_sheet, CylinderPoint, DiscPoint, MOON_RADIUS,
};
pub use svg::{render_scene, Model, SceneSpec, Seam};
