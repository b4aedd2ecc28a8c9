//! Topological invariants: winding numbers of subsystem vector fields and
//! the Chern number as lattice Berry flux, projector integral and boundary
//! Berry phase.

mod chern;
mod spin;
mod winding;

use topoinv_models::ModelKind;
use topoinv_observables::Path;

pub use chern::{
    berry_boundary, chern_berry_boundary, chern_flux, chern_of_flux, chern_projector, chern_report, flux_chern,
    plaquette_fluxes, projector_chern, total_flux, BoundaryPhase, ChernReport,
};
pub use spin::{spin_chern, SpinChern};
pub use winding::{subsystem_winding, winding_number, winding_of_units, WindingResult, MIN_WINDING_GRID};

/// Results with residual at or above this are unreliable.
pub const RESIDUAL_TOL: f64 = 0.01;

/// Ground-state construction matching the model family.
pub fn path_for(kind: ModelKind) -> Path {
    if kind.is_bdg() {
        Path::Superconductor
    } else {
        Path::Insulator
    }
}
