//! Spinor-valued exterior algebra relative to a frame, the `clf`/`clv`
//! calculus, and the curvature actions of the constant-curvature model.

mod curvature;
mod form;
mod frame;
pub mod random;

pub use curvature::{CurvPart, ModelCurvature, PairTensor, ROp, SymKind};
pub use form::{mask_indices, masks_of_degree, SVForm};
pub use frame::Frame;
