//! The curve complex of the five-holed sphere: subsurface projections,
//! relative twisting, distances and geodesics.

mod annular;
mod distance;
mod dw;
mod project;

pub use annular::{annular_arcs, annular_distance, AnnularArc};
pub use distance::{
    audit_geodesic, cc_distance, cc_geodesic, small_distance, thin_triangle_audit, thin_triangle_ball, BallAudit, Certificate, DistanceReport,
    GeodesicAudit, SearchBudget, TriangleAudit,
};
pub use dw::{subsurface_distance, DwReport};
pub use project::{fills, project_subsurface, ProjectionResult};
