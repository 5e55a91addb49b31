//! Khovanov, reduced Khovanov and annular Khovanov homology over F2, the
//! augmented-link construction and the spectral sequence relating them.

pub mod census;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod reduction;
pub mod spectral;
pub mod union_find;

pub use diagram::{AnnularDiagram, Basepoint, Crossing, PointedDiagram, SeamEntry, Strand};
pub use error::{Error, Result};
