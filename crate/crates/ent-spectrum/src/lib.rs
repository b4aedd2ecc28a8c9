//! Entanglement spectrum of one subsystem from its vector `s(p)` and
//! occupation `N(p)`: correlation eigenvalues `λ± = (N ± |s|)/2` and
//! entanglement energies `ε = ln((1 − λ)/λ)`.

use rayon::prelude::*;
use topoinv_bz::{BzGrid, Error, Result};
use topoinv_observables::{Path, SVectorField};

/// Slack allowed on `|s| ≤ min(N, 2 − N)`.
pub const RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntLevels {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `−∞` when `λ₊ = 1`.
    pub eps_plus: f64,
    /// `+∞` when `λ₋ = 0`.
    pub eps_minus: f64,
}

/// `ε = ln((1 − λ)/λ)`, the inverse of `λ = 1/(e^ε + 1)`.
pub fn peschel_energy(lambda: f64) -> f64 {
    if lambda >= 1.0 {
        f64::NEG_INFINITY
    } else if lambda <= 0.0 {
        f64::INFINITY
    } else {
        ((1.0 - lambda) / lambda).ln()
    }
}

pub fn peschel_eigenvalue(eps: f64) -> f64 {
    1.0 / (eps.exp() + 1.0)
}

/// Levels of a two-mode subsystem at half filling, `N_b = 2 − N_a`.
pub fn insulator_ent_levels(s_norm: f64, n_a: f64) -> Result<EntLevels> {
    let bound = n_a.min(2.0 - n_a);
    if !(s_norm.is_finite() && n_a.is_finite()) || s_norm < 0.0 || s_norm > bound + RANGE_TOL {
        return Err(Error::InvalidParameter(format!("|s| = {s_norm} outside [0, min(N, 2 - N)] for N = {n_a}")));
    }
    let lambda_plus = ((n_a + s_norm) / 2.0).clamp(0.0, 1.0);
    let lambda_minus = ((n_a - s_norm) / 2.0).clamp(0.0, 1.0);
    Ok(EntLevels {
        lambda_plus,
        lambda_minus,
        eps_plus: peschel_energy(lambda_plus),
        eps_minus: peschel_energy(lambda_minus),
    })
}

/// Entanglement spectrum of one subsystem over the whole grid.
#[derive(Debug, Clone)]
pub struct EntanglementField {
    grid: BzGrid,
    path: Path,
    levels: Vec<EntLevels>,
}

impl EntanglementField {
    pub fn new(field: &SVectorField, path: Path) -> Result<Self> {
        let grid = field.grid();
        let levels = field
            .norms()
            .par_iter()
            .zip(field.occupation().par_iter())
            .enumerate()
            .map(|(i, (&s, &n))| {
                insulator_ent_levels(s, n).map_err(|e| match e {
                    Error::InvalidParameter(msg) => Error::InvalidParameter(format!("{msg} at {}", grid.loc(i))),
                    other => other,
                })
            })
            .collect::<Result<_>>()?;
        Ok(EntanglementField { grid, path, levels })
    }

    pub fn grid(&self) -> BzGrid {
        self.grid
    }

    pub fn path(&self) -> Path {
        self.path
    }

    pub fn levels(&self) -> &[EntLevels] {
        &self.levels
    }

    pub fn lambda_plus(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|l| l.lambda_plus)
    }

    pub fn lambda_minus(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|l| l.lambda_minus)
    }

    pub fn gap_insulator(&self) -> f64 {
        ent_gap_insulator(self)
    }

    pub fn gap_sc(&self) -> f64 {
        ent_gap_sc(self)
    }

    /// The gap matching the field's path.
    pub fn gap(&self) -> f64 {
        match self.path {
            Path::Insulator => ent_gap_insulator(self),
            Path::Superconductor => ent_gap_sc(self),
        }
    }
}

/// `min_p λ₊ − max_p λ₋`; negative when the spectrum crosses.
pub fn ent_gap_insulator(field: &EntanglementField) -> f64 {
    let min_plus = field.lambda_plus().fold(f64::INFINITY, f64::min);
    let max_minus = field.lambda_minus().fold(f64::NEG_INFINITY, f64::max);
    min_plus - max_minus
}

/// `min_p |1/2 − λ₊|`.
pub fn ent_gap_sc(field: &EntanglementField) -> f64 {
    field.lambda_plus().map(|l| (0.5 - l).abs()).fold(f64::INFINITY, f64::min)
}
