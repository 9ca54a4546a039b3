//! Gentle algebras, their Cohen-Macaulay Auslander algebras, quiver
//! Grassmannians over finite fields and desingularizations by strata.

pub mod auslander;
pub mod desing;
pub mod error;
pub mod ffla;
pub mod gorenstein;
pub mod grassmannian;
pub mod io;
pub mod quiver;
pub mod random;
pub mod rep;
pub mod samples;
pub mod scenario;
pub mod strings;

pub use error::{Error, Result};
pub use ffla::{Matrix, Polynomial, PrimeField, Subspace};
pub use quiver::{parse_quiver, ArrowId, BoundQuiver, CycleClass, CycleSet, DimVector, VertexId};
pub use rep::{Morphism, Representation, SubrepPoint};
pub use strings::{Letter, StringModule, StringWord};
