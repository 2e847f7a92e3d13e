//! Exact computations with mod-p Satake homomorphisms and Jacquet cohomology
//! of smooth mod-p representations of GL2(Q_p).

pub mod error;
pub mod ffield;
pub mod padic;
pub mod weights;
pub mod cohomology;
pub mod torus;
pub mod gl2ind;
pub mod satake;
pub mod jacquet;
pub mod verify;

pub use error::{Error, Result};
