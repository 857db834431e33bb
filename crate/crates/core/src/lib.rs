//! Exact computations with hypersimplicial subdivisions, zonotopal tilings,
//! tile separation and hypersecondary polytopes of small point configurations.

pub mod cli;
pub mod coherent;
pub mod counterexamples;
pub mod enumeration;
pub mod error;
pub mod fiberpoly;
pub mod halflevel;
pub mod exactgeom;
pub mod tiles;

pub use error::{HypersubError, Result};
pub use exactgeom::{Circuit, PointConfiguration, Rational, Sign, SignConstraint, SignVector};
pub use tiles::{HypersimplicialSubdivision, Tile, ZonotopalTiling};
