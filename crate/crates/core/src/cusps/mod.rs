//! Cusp cross-sections: developing maps into the plane, peripheral
//! holonomy, and cusp shapes reduced to the modular fundamental domain.

pub(crate) mod develop;
mod shape;

pub use develop::{
    cusp_shape, develop_cusp, export_cusp_svg, shapes_csv, CuspError, DevelopedCusp, Similarity,
};
pub use shape::{CuspShape, ShapeError};
