use std::f64::consts::PI;

use rayon::prelude::*;
use topoinv_bz::{pairwise_sum, solid_angle, BandField, BzGrid, Error, Result, UnitVec3};
use topoinv_observables::{svector_fields, Path, SVectorField, SubsystemPartition};

use crate::RESIDUAL_TOL;

/// Smallest grid accepted for winding numbers.
pub const MIN_WINDING_GRID: usize = 16;

/// Discretized winding integral with its nearest integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingResult {
    pub raw: f64,
    pub value: i64,
    pub residual: f64,
    /// Largest `|Ω|` of a single triangle; near `2π` the integer is not
    /// resolved by the grid.
    pub max_solid_angle: f64,
    pub grid: BzGrid,
}

impl WindingResult {
    fn from_raw(raw: f64, max_solid_angle: f64, grid: BzGrid) -> Self {
        let value = raw.round();
        WindingResult { raw, value: value as i64, residual: (raw - value).abs(), max_solid_angle, grid }
    }

    pub fn is_reliable(&self) -> bool {
        self.residual < RESIDUAL_TOL
    }
}

/// Degree of a unit-vector field: `(1/4π) Σ Ω` over the two triangles
/// `(00, 10, 11)` and `(00, 11, 01)` of every plaquette.
pub fn winding_of_units(grid: BzGrid, units: &[UnitVec3]) -> Result<WindingResult> {
    if grid.nx() < MIN_WINDING_GRID || grid.ny() < MIN_WINDING_GRID {
        return Err(Error::InvalidParameter(format!(
            "winding numbers need at least a {MIN_WINDING_GRID}x{MIN_WINDING_GRID} grid, got {}x{}",
            grid.nx(),
            grid.ny()
        )));
    }
    assert_eq!(units.len(), grid.len());
    let cells: Vec<(f64, f64)> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let l = grid.loc(i);
            let (j, k) = (l.j as isize, l.k as isize);
            let v00 = &units[i];
            let v10 = &units[grid.index_wrapped(j + 1, k)];
            let v11 = &units[grid.index_wrapped(j + 1, k + 1)];
            let v01 = &units[grid.index_wrapped(j, k + 1)];
            let lower = solid_angle(v00, v10, v11).map_err(|e| e.located(l))?;
            let upper = solid_angle(v00, v11, v01).map_err(|e| e.located(l))?;
            Ok((lower + upper, lower.abs().max(upper.abs())))
        })
        .collect::<Result<_>>()?;
    let sums: Vec<f64> = cells.iter().map(|c| c.0).collect();
    let max = cells.iter().map(|c| c.1).fold(0.0, f64::max);
    Ok(WindingResult::from_raw(pairwise_sum(&sums) / (4.0 * PI), max, grid))
}

/// Winding number of `ŝ = s/|s|`; fails at the first maximally entangled point.
pub fn winding_number(field: &SVectorField) -> Result<WindingResult> {
    if let Some((at, norm)) = field.first_undefined() {
        return Err(Error::MaxEntangled { at: Some(at), norm });
    }
    let units: Vec<UnitVec3> = (0..field.grid().len()).map(|i| field.unit(i).expect("checked above")).collect();
    winding_of_units(field.grid(), &units)
}

/// Winding numbers `(ν_a, ν_b)` of both subsystems.
pub fn subsystem_winding(
    bands: &BandField,
    part: &SubsystemPartition,
    path: Path,
) -> Result<(WindingResult, WindingResult)> {
    let [a, b] = svector_fields(bands, part, path)?;
    Ok((winding_number(&a)?, winding_number(&b)?))
}
