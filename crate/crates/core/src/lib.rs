pub mod chains;
pub mod curvature;
pub mod error;
pub mod report;
pub mod kostant;
pub mod lie;
pub mod linalg;
pub mod sampling;
pub mod spencer;
pub mod torsion;
