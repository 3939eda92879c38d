pub mod cplx;
pub mod error;
pub mod farey;
pub mod hier;
pub mod markings;
pub mod model;
pub mod pipeline;
pub mod subsurface;
pub mod surface;
pub mod tubegeom;

pub use error::{Error, Result};
