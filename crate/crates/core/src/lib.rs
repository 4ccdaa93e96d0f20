//! Rail knotoid diagrams and rail arcs.

pub mod diagram;
pub mod geometry;
pub mod invariants;
pub mod io;
pub mod isotopy;
pub mod knotoid;
pub mod moves;
pub mod map;
pub mod rational;
pub mod render;
pub mod search;
pub mod theta;

pub use diagram::{CanonicalCode, DiagramError, End, InfPort, RailDiagram, RailId, RailTag, Report, VertexKind};
