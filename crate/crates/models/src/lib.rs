//! Bloch and BdG kernels of the two case-study models.
//!
//! Both kernels use the periodic Fourier gauge (no intra-cell position
//! phases), so `h(p + 2π ê) = h(p)`.

mod honeycomb;
mod kane_mele;
mod staggered_sc;

use std::fmt;

use topoinv_bz::{BandField, BlochKernel, BzGrid, HermitianKernel4, MomentumPoint, Result};

pub use honeycomb::{HoneycombGeometry, HONEYCOMB};
pub use kane_mele::{kane_mele_kernel, KaneMeleParams};
pub use staggered_sc::{staggered_sc_kernel, StaggeredScParams};

/// Model family; fixes the meaning of the four basis modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    KaneMele,
    StaggeredSc,
}

impl ModelKind {
    /// Labels of the basis modes in kernel order.
    pub fn basis(&self) -> [&'static str; 4] {
        match self {
            ModelKind::KaneMele => ["a_up", "a_dn", "b_up", "b_dn"],
            ModelKind::StaggeredSc => ["a+_p", "a_-p", "b+_p", "b_-p"],
        }
    }

    /// True for BdG kernels, whose occupied states are the negative-energy levels.
    pub fn is_bdg(&self) -> bool {
        matches!(self, ModelKind::StaggeredSc)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::KaneMele => "kane-mele",
            ModelKind::StaggeredSc => "staggered-sc",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "kane-mele" => Ok(ModelKind::KaneMele),
            "staggered-sc" => Ok(ModelKind::StaggeredSc),
            other => Err(format!("unknown model '{other}' (expected kane-mele or staggered-sc)")),
        }
    }
}

/// A model together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    KaneMele(KaneMeleParams),
    StaggeredSc(StaggeredScParams),
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::KaneMele(_) => ModelKind::KaneMele,
            Model::StaggeredSc(_) => ModelKind::StaggeredSc,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Model::KaneMele(p) => p.validate(),
            Model::StaggeredSc(p) => p.validate(),
        }
    }
}

impl BlochKernel for Model {
    fn kernel(&self, p: MomentumPoint) -> HermitianKernel4 {
        match self {
            Model::KaneMele(params) => kane_mele_kernel(params, p),
            Model::StaggeredSc(params) => staggered_sc_kernel(params, p),
        }
    }
}

/// `min_p (E₃(p) − E₂(p))` over the grid.
pub fn spectral_gap<K: BlochKernel + ?Sized>(kernel: &K, grid: BzGrid) -> f64 {
    BandField::compute(kernel, grid).min_gap(2).0.max(0.0)
}
