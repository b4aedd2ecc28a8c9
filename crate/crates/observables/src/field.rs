use nalgebra::Vector3;
use rayon::prelude::*;
use topoinv_bz::{BandField, BzGrid, Error, GridLoc, Result, UnitVec3};

use crate::correlation::{
    ground_correlations_insulator, ground_correlations_sc, insulator_svector, sc_svector, CorrelationMatrix,
};
use crate::partition::{Path, Subsystem, SubsystemPartition};

/// Below this norm a subsystem vector has no direction and the point counts
/// as maximally entangled.
pub const ENTANGLEMENT_FLOOR: f64 = 1e-6;

/// Subsystem vectors `s_i(p)` over a grid, with their norms and the
/// subsystem occupation `N_i(p)` (trace of the subsystem correlation block,
/// or `1 + n_p − n_{−p}` for a superconducting species).
#[derive(Debug, Clone)]
pub struct SVectorField {
    grid: BzGrid,
    label: &'static str,
    raw: Vec<Vector3<f64>>,
    norm: Vec<f64>,
    occupation: Vec<f64>,
}

impl SVectorField {
    pub fn new(grid: BzGrid, label: &'static str, raw: Vec<Vector3<f64>>, occupation: Vec<f64>) -> Self {
        assert_eq!(raw.len(), grid.len());
        assert_eq!(occupation.len(), grid.len());
        let norm = raw.iter().map(|v| v.norm()).collect();
        SVectorField { grid, label, raw, norm, occupation }
    }

    /// Field with unit occupation everywhere (synthetic fields in tests).
    pub fn from_vectors(grid: BzGrid, raw: Vec<Vector3<f64>>) -> Self {
        let occupation = vec![1.0; raw.len()];
        SVectorField::new(grid, "field", raw, occupation)
    }

    pub fn grid(&self) -> BzGrid {
        self.grid
    }

    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn raw(&self) -> &[Vector3<f64>] {
        &self.raw
    }

    pub fn norms(&self) -> &[f64] {
        &self.norm
    }

    pub fn occupation(&self) -> &[f64] {
        &self.occupation
    }

    /// `ŝ` at a flat index, or `None` at or below the entanglement floor.
    pub fn unit(&self, index: usize) -> Option<UnitVec3> {
        if self.norm[index] > ENTANGLEMENT_FLOOR {
            UnitVec3::normalize(&self.raw[index])
        } else {
            None
        }
    }

    /// First grid point whose norm is at or below the floor.
    pub fn first_undefined(&self) -> Option<(GridLoc, f64)> {
        self.norm
            .iter()
            .position(|&n| n <= ENTANGLEMENT_FLOOR || !n.is_finite())
            .map(|i| (self.grid.loc(i), self.norm[i]))
    }
}

/// Ground-state correlations at every grid point.
pub fn correlation_field(bands: &BandField, path: Path) -> Result<Vec<CorrelationMatrix>> {
    let grid = bands.grid();
    if path == Path::Superconductor && !grid.is_even() {
        return Err(Error::InvalidParameter(format!(
            "superconductor path needs even grid sizes, got {}x{}",
            grid.nx(),
            grid.ny()
        )));
    }
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let loc = grid.loc(i);
            let spec = &bands.spectra()[i];
            let corr = match path {
                Path::Insulator => ground_correlations_insulator(spec),
                Path::Superconductor => {
                    let m = grid.neg_loc(loc.j, loc.k);
                    ground_correlations_sc(spec, bands.spectrum(m.j, m.k))
                }
            };
            corr.map_err(|e| e.located(loc))
        })
        .collect()
}

fn subsystem_field(
    grid: BzGrid,
    corr: &[CorrelationMatrix],
    part: &SubsystemPartition,
    which: Subsystem,
    path: Path,
) -> SVectorField {
    let [m1, m2] = part.modes(which);
    let (raw, occupation): (Vec<_>, Vec<_>) = corr
        .iter()
        .map(|c| {
            let n = c.normal();
            match path {
                Path::Insulator => (insulator_svector(c, part, which), n[(m1, m1)].re + n[(m2, m2)].re),
                Path::Superconductor => (sc_svector(c, part, which), 1.0 + n[(m1, m1)].re - n[(m2, m2)].re),
            }
        })
        .unzip();
    SVectorField::new(grid, part.label(which), raw, occupation)
}

/// Fields of both subsystems, sharing one correlation pass.
pub fn svector_fields(bands: &BandField, part: &SubsystemPartition, path: Path) -> Result<[SVectorField; 2]> {
    let corr = correlation_field(bands, path)?;
    let grid = bands.grid();
    Ok([subsystem_field(grid, &corr, part, Subsystem::A, path), subsystem_field(grid, &corr, part, Subsystem::B, path)])
}

pub fn svector_field(
    bands: &BandField,
    part: &SubsystemPartition,
    which: Subsystem,
    path: Path,
) -> Result<SVectorField> {
    let corr = correlation_field(bands, path)?;
    Ok(subsystem_field(bands.grid(), &corr, part, which, path))
}

/// `min_p |s(p)|` over the grid points.
pub fn entanglement_measure(field: &SVectorField) -> f64 {
    field.norms().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Distance from the origin to the triangle `(a, b, c)`.
fn origin_distance(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
    let ab = b - a;
    let ac = c - a;
    let ap = -a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a.norm();
    }
    let bp = -b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b.norm();
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return (a + ab * (d1 / (d1 - d3))).norm();
    }
    let cp = -c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c.norm();
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return (a + ac * (d2 / (d2 - d6))).norm();
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)))).norm();
    }
    let denom = 1.0 / (va + vb + vc);
    (a + ab * (vb * denom) + ac * (vc * denom)).norm()
}

/// Minimum of `|s|` over the piecewise-linear interpolation of the field on
/// the winding triangulation. Never larger than [`entanglement_measure`];
/// catches zeros that fall between grid points.
pub fn hull_entanglement_measure(field: &SVectorField) -> f64 {
    let g = field.grid();
    let raw = field.raw();
    (0..g.len())
        .into_par_iter()
        .map(|i| {
            let l = g.loc(i);
            let (j, k) = (l.j as isize, l.k as isize);
            let v00 = &raw[i];
            let v10 = &raw[g.index_wrapped(j + 1, k)];
            let v11 = &raw[g.index_wrapped(j + 1, k + 1)];
            let v01 = &raw[g.index_wrapped(j, k + 1)];
            origin_distance(v00, v10, v11).min(origin_distance(v00, v11, v01))
        })
        .reduce(|| f64::INFINITY, f64::min)
}
