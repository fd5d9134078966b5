//! Divisor theory, harmonic morphisms and gonality for graphs whose edge
//! lengths live in a sharp integral monoid.

pub mod catalog;
pub mod corpus;
pub mod dhar;
pub mod divisor;
pub mod error;
pub mod ggon;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod monoid;
pub mod morphism;
pub mod pipeline;
pub mod treewidth;
pub mod trees;

pub use divisor::{Divisor, PlFunction};
pub use error::{Axiom, Error, Result, Violation};
pub use graph::{GraphBuilder, MetrisedGraph, VertexMap};
pub use ggon::GonalityResult;
pub use monoid::{MonoidHom, MonoidSpec, Presentation};
pub use morphism::GraphMorphism;
