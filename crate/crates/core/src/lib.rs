//! Combinatorial checks around the unoriented skein exact triangle in knot
//! Floer homology: planar diagrams, link determinants, grid homology,
//! quasi-alternating certificates, F₂ homological algebra and the special
//! Heegaard diagrams built from link projections.

pub mod determinant;
pub mod diagram;
pub mod fixtures;
pub mod gf2;
pub mod grid;
pub mod heegaard;
pub mod homalg;
pub mod quasialt;
pub mod scorecard;
pub mod skein;
mod util;

pub use diagram::{CrossingRef, PlanarDiagram, ResolutionChoice};
