//! Exact computations for the conifold quiver with potential: the Jacobi
//! algebra and its truncations, the A∞ structure on the Floer generators,
//! representations and their stability, homological algebra between them,
//! and the action of the flop on arcs in the punctured disk.

pub mod ainfty;
pub mod arcs;
pub mod complex;
pub mod error;
pub mod finite_field;
pub mod homalg;
pub mod linalg;
pub mod quiver;
pub mod rational;
pub mod reps;
pub mod scan;
pub mod verify;

pub use ainfty::{AInftyTable, CatalogTarget, FloerGenerator};
pub use arcs::{ArcInvariants, ArcLabel, PLArc, SceneConfig};
pub use complex::FreeComplex;
pub use error::{Error, Result};
pub use linalg::Mat;
pub use quiver::{Arrow, FreePathElement, Path, Potential, TruncatedAlgebra, Vertex};
pub use rational::{CQ, Q};
pub use reps::{Chamber, RepKind, Representation, StabilityParams, StabilityVerdict};
