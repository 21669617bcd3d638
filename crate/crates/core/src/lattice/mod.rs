//! Exact integer/rational linear algebra and 2D lattice-polygon primitives.

mod matrix;
mod polygon;

pub use matrix::{smith_normal_form, IntMatrix, SnfResult};
pub use polygon::{
    cone_admits_unit_functional, cone_type_of, gorenstein_index, hull2d, lattice_points,
    polar_dual, vertex_cone_type, ConeType, Facet, LPoint, LatticePolygon, RPoint,
    RationalPolygon,
};
