use nalgebra::Matrix2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, GridLoc, Result};
use crate::frame::Frame;
use crate::grid::BzGrid;
use crate::kernel::{eigensolve_hermitian2, eigensolve_hermitian4, BlochKernel, SpectralData4, Vector4c};

/// Eigenvalues closer than this across the occupied/unoccupied boundary
/// count as a gap closure.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Spectra of a kernel at every point of a grid.
#[derive(Debug, Clone)]
pub struct BandField {
    grid: BzGrid,
    spectra: Vec<SpectralData4>,
}

impl BandField {
    pub fn compute<K: BlochKernel + ?Sized>(kernel: &K, grid: BzGrid) -> Self {
        let spectra =
            (0..grid.len()).into_par_iter().map(|i| eigensolve_hermitian4(&kernel.kernel(grid.point_at(i)))).collect();
        BandField { grid, spectra }
    }

    pub fn grid(&self) -> BzGrid {
        self.grid
    }

    pub fn spectra(&self) -> &[SpectralData4] {
        &self.spectra
    }

    pub fn spectrum(&self, j: usize, k: usize) -> &SpectralData4 {
        &self.spectra[self.grid.index(j, k)]
    }

    /// Minimum over the grid of `E[occupied] - E[occupied - 1]`, with the
    /// location where it is attained.
    pub fn min_gap(&self, occupied: usize) -> (f64, GridLoc) {
        assert!((1..4).contains(&occupied));
        let mut best = (f64::INFINITY, GridLoc::new(0, 0));
        for (i, s) in self.spectra.iter().enumerate() {
            let g = s.eigenvalues[occupied] - s.eigenvalues[occupied - 1];
            if g < best.0 {
                best = (g, self.grid.loc(i));
            }
        }
        best
    }
}

/// Which states span the occupied subspace at each momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandSelection {
    /// The lowest `n` bands of the full kernel (`n` = 1 or 2).
    Lowest(usize),
    /// The lower band of the 2×2 block on `modes`, which must be decoupled
    /// from the other two modes.
    Block { modes: [usize; 2] },
}

/// Occupied frames at every point of a grid.
#[derive(Debug, Clone)]
pub struct FrameField {
    grid: BzGrid,
    frames: Vec<Frame>,
}

impl FrameField {
    pub fn from_frames(grid: BzGrid, frames: Vec<Frame>) -> Self {
        assert_eq!(frames.len(), grid.len());
        FrameField { grid, frames }
    }

    /// Lowest `occupied` bands; fails where they touch the next band.
    pub fn from_bands(bands: &BandField, occupied: usize) -> Result<Self> {
        if !(1..=2).contains(&occupied) {
            return Err(Error::InvalidParameter(format!("occupied band count must be 1 or 2, got {occupied}")));
        }
        let (gap, at) = bands.min_gap(occupied);
        if gap <= DEGENERACY_TOL {
            return Err(Error::GapClosure { at: Some(at), gap });
        }
        let frames = bands
            .spectra
            .iter()
            .map(|s| {
                if occupied == 1 {
                    Frame::single(s.eigenvector(0))
                } else {
                    Frame::pair(s.eigenvector(0), s.eigenvector(1))
                }
            })
            .collect();
        Ok(FrameField { grid: bands.grid, frames })
    }

    /// Lower band of a decoupled 2×2 block of the kernel.
    pub fn from_block<K: BlochKernel + ?Sized>(kernel: &K, grid: BzGrid, modes: [usize; 2]) -> Result<Self> {
        let [m1, m2] = modes;
        if m1 == m2 || m1 > 3 || m2 > 3 {
            return Err(Error::InvalidParameter(format!("invalid block modes {modes:?}")));
        }
        let frames: Vec<Result<Frame>> = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let at = Some(grid.loc(i));
                let h = kernel.kernel(grid.point_at(i));
                let mut coupling: f64 = 0.0;
                for m in modes {
                    for r in (0..4).filter(|r| !modes.contains(r)) {
                        coupling = coupling.max(h.entry(m, r).norm());
                    }
                }
                if coupling > crate::kernel::HERMITICITY_TOL {
                    return Err(Error::BlockCoupled { at, coupling });
                }
                let block = Matrix2::new(h.entry(m1, m1), h.entry(m1, m2), h.entry(m2, m1), h.entry(m2, m2));
                let (vals, vecs) = eigensolve_hermitian2(&block);
                if vals[1] - vals[0] <= DEGENERACY_TOL {
                    return Err(Error::GapClosure { at, gap: vals[1] - vals[0] });
                }
                let mut v = Vector4c::zeros();
                v[m1] = vecs[(0, 0)];
                v[m2] = vecs[(1, 0)];
                Ok(Frame::single(v))
            })
            .collect();
        let frames = frames.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(FrameField { grid, frames })
    }

    pub fn build<K: BlochKernel + ?Sized>(kernel: &K, grid: BzGrid, selection: BandSelection) -> Result<Self> {
        match selection {
            BandSelection::Lowest(n) => FrameField::from_bands(&BandField::compute(kernel, grid), n),
            BandSelection::Block { modes } => FrameField::from_block(kernel, grid, modes),
        }
    }

    pub fn grid(&self) -> BzGrid {
        self.grid
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    /// Frame at a periodic position.
    pub fn frame(&self, j: isize, k: isize) -> &Frame {
        &self.frames[self.grid.index_wrapped(j, k)]
    }

    /// Applies a per-point gauge transformation (for testing gauge invariance).
    pub fn regauged(&self, mut gauge: impl FnMut(usize) -> Matrix2<C64>) -> Self {
        let frames = self.frames.iter().enumerate().map(|(i, f)| f.rotated(&gauge(i))).collect();
        FrameField { grid: self.grid, frames }
    }
}
