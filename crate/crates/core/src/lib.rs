//! Coverage path planning over sloped terrain.
//!
//! The pipeline turns an elevation grid into a closed route that visits every
//! free cell exactly once:
//!
//! 1. [`terrain`]: load or generate a [`HeightGrid`](terrain::HeightGrid) and
//!    aggregate it into 2×2 mega cells.
//! 2. [`graph`]: connect 4-adjacent free mega cells with slope-dependent
//!    weights from [`weights`].
//! 3. [`spanning`]: take the minimum spanning tree (or the weight-blind
//!    classical tree used as a baseline).
//! 4. [`coverage`]: walk clockwise around the tree on the fine grid.
//!
//! [`bench`] runs the MST-versus-classical comparison over seeded random
//! terrains. All types are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64` or `f32`.

pub mod bench;
pub mod coverage;
pub mod graph;
mod scalar;
pub mod spanning;
pub mod terrain;
mod union_find;
pub mod weights;

pub use scalar::Scalar;
pub use weights::WeightSpec;

pub type HeightGrid = terrain::HeightGrid<f64>;
pub type MegaGrid = terrain::MegaGrid<f64>;
pub type CoverageGraph<'m> = graph::CoverageGraph<'m, f64>;
pub type SpanningTree<'g, 'm> = spanning::SpanningTree<'g, 'm, f64>;
pub type Edge = graph::Edge<f64>;

pub type HeightGridF32 = terrain::HeightGrid<f32>;
pub type MegaGridF32 = terrain::MegaGrid<f32>;
pub type CoverageGraphF32<'m> = graph::CoverageGraph<'m, f32>;
pub type SpanningTreeF32<'g, 'm> = spanning::SpanningTree<'g, 'm, f32>;
