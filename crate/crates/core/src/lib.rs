//! Quandle cocycle invariants of knotted foams.

pub mod algebra;
pub mod diagrams;
pub mod foam;
pub mod homology;
pub mod report;
