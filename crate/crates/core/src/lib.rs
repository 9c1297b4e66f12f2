//! Dimensions of moduli spaces of tropical plane curves with a fixed Newton
//! polygon.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: exact lattice polygon calculus (hulls, interior and relaxed
//!   polygons, maximality, column vectors, lattice width).
//! - [`subdivision`]: regular subdivisions, unimodular triangulations,
//!   regularity certificates, enumeration, honeycomb and beehive constructions.
//! - [`tropical`]: dual tropical curves, the edge-length map `lambda`, the
//!   skeleton map `kappa` and skeletonization.
//! - [`moduli`]: radial edges, dimension formulas and rank oracles.
//! - [`hyperelliptic`]: maximal hyperelliptic polygons and the strip
//!   triangulation with its chain-of-loops constraints.
//! - [`io`]: JSON formats and SVG rendering used by the `tropmod` binary.
//!
//! All geometric predicates use exact integer or rational arithmetic.

pub mod error;
pub mod exact;
pub mod hyperelliptic;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod moduli;
pub mod subdivision;
pub mod tropical;

pub use error::{Error, Result};
pub use exact::Rat;
pub use lattice::{InteriorHull, LatticePoint, LatticePolygon, PolygonClass};
pub use moduli::DimensionReport;
pub use subdivision::{HeightFunction, Subdivision, Triangulation};
