//! Brillouin-zone geometry, small Hermitian eigensolving and the discrete
//! differential-geometry primitives used by every invariant in the workspace.

mod error;
mod field;
mod frame;
mod geometry;
mod grid;
mod kernel;
mod sum;

pub use error::{Error, GridLoc, Result};
pub use field::{BandField, BandSelection, FrameField, DEGENERACY_TOL};
pub use frame::{
    boundary_berry_phase, link_phase, parallel_transport, plaquette_berry_flux, principal_phase, Frame, Matrix2c,
    SINGULAR_OVERLAP_TOL,
};
pub use geometry::{solid_angle, UnitVec3, ANTIPODAL_TOL, UNIT_NORM_TOL};
pub use grid::{wrap_angle, BzGrid, MomentumPoint, MIN_GRID};
pub use kernel::{
    eigensolve_hermitian2, eigensolve_hermitian4, BlochKernel, HermitianKernel4, Matrix4c, SpectralData4, Vector4c,
    HERMITICITY_TOL,
};
pub use num_complex::Complex64 as C64;
pub use sum::pairwise_sum;
