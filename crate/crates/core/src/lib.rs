//! Exact lattice computations for genus-two pencils on rational surfaces.

pub mod ade;
pub mod catalog;
pub mod curves;
pub mod error;
pub mod fibration;
pub mod fibres;
pub mod lattice;
pub mod linalg;
pub mod minimal;
pub mod numeric;

pub use error::{Error, Result};
pub use lattice::{Ambient, DivisorClass, SurfaceModel};
