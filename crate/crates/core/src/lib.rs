//! Spherical occlusion diagrams: finite sets of geodesic arcs on the unit
//! sphere in which every arc endpoint rests on the interior of another arc,
//! arcs never cross, and all arcs reaching a given arc arrive from the same
//! side.
//!
//! The crate provides:
//!
//! * [`sphere`] — tolerance-aware primitives for points, great circles, and
//!   geodesic arcs on the unit sphere;
//! * [`diagram`] — the [`diagram::Diagram`] type, axiom validation,
//!   hit/block incidence, contact graphs, monotonic walks, and the
//!   irreducibility decider;
//! * [`tiling`] — the partition of the sphere induced by a diagram;
//! * [`swirls`] — swirl enumeration, eyes, the swirl graph, classification,
//!   and non-swirling cycle decomposition;
//! * [`subdivision`] and [`swirlify`] — convex subdivisions of the sphere,
//!   duals, truncated duals, and the swirlification construction;
//! * [`vismap`] — visibility maps of polyhedra and polygon arrangements;
//! * [`render`] — SVG output of hemisphere views;
//! * [`io`] — JSON and OFF codecs shared with the command-line tool;
//! * [`fixtures`] — reference diagrams and meshes used by the test suite
//!   and handy as demo inputs.

pub mod diagram;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod render;
pub mod sphere;
pub mod subdivision;
pub mod swirlify;
pub mod swirls;
pub mod tiling;
pub mod vismap;

pub use sphere::{GeodesicArc, Tolerance, UnitVec};
