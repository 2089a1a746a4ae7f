//! P-resolutions of tetrahedral, octahedral and icosahedral quotient surface
//! singularities: validation and enumeration, M-resolutions, compactified
//! central fibers, and the semistable MMP on them.

pub mod catalog;
pub mod compactify;
pub mod contfrac;
pub mod curvegraph;
mod linalg;
pub mod mmp;
pub mod mres;
pub mod presolve;
pub mod singularity;

pub use curvegraph::{DecoratedGraph, Marker};
pub use singularity::{Family, ToiDescriptor};
