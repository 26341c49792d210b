pub mod cli;
pub mod cosheaf;
pub mod error;
pub mod exact;
pub mod homology;
pub mod hypersurface;
pub mod matroid;
pub mod tropgeo;
