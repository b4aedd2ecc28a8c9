use std::f64::consts::TAU;

use rayon::prelude::*;
use topoinv_bz::{
    boundary_berry_phase, link_phase, pairwise_sum, parallel_transport, plaquette_berry_flux, BandSelection,
    BlochKernel, BzGrid, Frame, FrameField, Matrix4c, Result, C64,
};

use crate::RESIDUAL_TOL;

/// Lattice Berry flux of every plaquette, indexed like the grid points.
pub fn plaquette_fluxes(frames: &FrameField) -> Result<Vec<f64>> {
    let grid = frames.grid();
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let l = grid.loc(i);
            let (j, k) = (l.j as isize, l.k as isize);
            plaquette_berry_flux([
                frames.frame(j, k),
                frames.frame(j + 1, k),
                frames.frame(j + 1, k + 1),
                frames.frame(j, k + 1),
            ])
            .map_err(|e| e.located(l))
        })
        .collect()
}

/// Sum of the lattice Berry fluxes of all plaquettes.
pub fn total_flux(frames: &FrameField) -> Result<f64> {
    Ok(pairwise_sum(&plaquette_fluxes(frames)?))
}

/// Chern number from a flux sum.
pub fn chern_of_flux(total: f64) -> i64 {
    (-total / TAU).round() as i64
}

/// Chern number `−(1/2π) Σ flux` of a frame field; integer by construction.
pub fn flux_chern(frames: &FrameField) -> Result<i64> {
    Ok(chern_of_flux(total_flux(frames)?))
}

pub fn chern_flux<K: BlochKernel + ?Sized>(kernel: &K, grid: BzGrid, selection: BandSelection) -> Result<i64> {
    flux_chern(&FrameField::build(kernel, grid, selection)?)
}

/// `−(i/2π) ∫ tr(P [∂ₓP, ∂ᵧP])` with central differences and the
/// periodic trapezoidal rule.
pub fn projector_chern(frames: &FrameField) -> f64 {
    let grid = frames.grid();
    let projectors: Vec<Matrix4c> = frames.frames().iter().map(Frame::projector).collect();
    let at = |j: isize, k: isize| &projectors[grid.index_wrapped(j, k)];
    let (hx, hy) = (grid.dpx(), grid.dpy());
    let terms: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let l = grid.loc(i);
            let (j, k) = (l.j as isize, l.k as isize);
            let dx = (at(j + 1, k) - at(j - 1, k)) / C64::from(2.0 * hx);
            let dy = (at(j, k + 1) - at(j, k - 1)) / C64::from(2.0 * hy);
            let comm = dx * dy - dy * dx;
            let tr = (at(j, k) * comm).trace();
            (C64::new(0.0, -1.0) * tr).re * hx * hy / TAU
        })
        .collect();
    pairwise_sum(&terms)
}

pub fn chern_projector<K: BlochKernel + ?Sized>(kernel: &K, grid: BzGrid, selection: BandSelection) -> Result<f64> {
    Ok(projector_chern(&FrameField::build(kernel, grid, selection)?))
}

/// Berry phase around the boundary of the cut-open zone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPhase {
    /// Loop phase in `(−π, π]`.
    pub principal: f64,
    /// Sum of the individual link phases in the parallel-transport gauge.
    pub unwrapped: f64,
    /// Sum of all plaquette fluxes.
    pub interior_flux: f64,
    /// `principal` moved onto the 2π branch selected by `interior_flux`.
    pub resolved: f64,
}

impl BoundaryPhase {
    /// Chern number from the branch-resolved phase.
    pub fn chern(&self) -> f64 {
        -self.resolved / TAU
    }

    /// Chern number from the unwrapped link sum.
    pub fn chern_unwrapped(&self) -> f64 {
        -self.unwrapped / TAU
    }
}

/// Boundary phase in a smooth gauge on the open `(nx+1) × (ny+1)` square:
/// frames are parallel-transported up the left edge and then along each row,
/// so the two copies of an edge carry different gauges.
pub fn berry_boundary(frames: &FrameField) -> Result<BoundaryPhase> {
    let grid = frames.grid();
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut left = Vec::with_capacity(ny + 1);
    left.push(*frames.frame(0, 0));
    for k in 1..=ny {
        let next = parallel_transport(frames.frame(0, k as isize), &left[k - 1])
            .map_err(|e| e.located(grid.loc(grid.index(0, k))))?;
        left.push(next);
    }
    let rows: Vec<Vec<Frame>> = (0..=ny)
        .into_par_iter()
        .map(|k| {
            let mut row = Vec::with_capacity(nx + 1);
            row.push(left[k]);
            for j in 1..=nx {
                let next = parallel_transport(frames.frame(j as isize, k as isize), &row[j - 1])
                    .map_err(|e| e.located(grid.loc(grid.index(j, k))))?;
                row.push(next);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let path: Vec<Frame> = grid.boundary_loop().into_iter().map(|(j, k)| rows[k][j]).collect();
    let principal = boundary_berry_phase(&path)?;
    let links: Vec<f64> =
        (0..path.len()).map(|i| link_phase(&path[i], &path[(i + 1) % path.len()])).collect::<Result<_>>()?;
    let unwrapped = pairwise_sum(&links);
    let interior_flux = total_flux(frames)?;
    let resolved = principal + TAU * ((interior_flux - principal) / TAU).round();
    Ok(BoundaryPhase { principal, unwrapped, interior_flux, resolved })
}

pub fn chern_berry_boundary<K: BlochKernel + ?Sized>(
    kernel: &K,
    grid: BzGrid,
    selection: BandSelection,
) -> Result<f64> {
    Ok(berry_boundary(&FrameField::build(kernel, grid, selection)?)?.chern())
}

/// The Chern number in all three representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernReport {
    pub projector_form: f64,
    /// Boundary form from the unwrapped link sum.
    pub berry_boundary_form: f64,
    pub flux_form: i64,
    pub boundary: BoundaryPhase,
    pub agreement: bool,
}

pub fn chern_report(frames: &FrameField) -> Result<ChernReport> {
    let boundary = berry_boundary(frames)?;
    let flux_form = chern_of_flux(boundary.interior_flux);
    let projector_form = projector_chern(frames);
    let berry_boundary_form = boundary.chern_unwrapped();
    let agrees = |x: f64| (x - flux_form as f64).abs() < RESIDUAL_TOL;
    let agreement = agrees(projector_form) && agrees(berry_boundary_form) && agrees(boundary.chern());
    Ok(ChernReport { projector_form, berry_boundary_form, flux_form, boundary, agreement })
}
