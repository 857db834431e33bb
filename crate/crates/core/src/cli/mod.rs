//! Command-line support: fixtures, file formats and SVG rendering.

pub mod fixtures;
pub mod render;

pub use fixtures::{fixture, Fixture};
pub use render::render_svg;
