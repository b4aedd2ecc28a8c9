use std::f64::consts::{PI, TAU};

use crate::error::{Error, GridLoc, Result};

/// Smallest grid dimension accepted along either axis.
pub const MIN_GRID: usize = 4;

/// Maps an angle into `[-π, π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y >= PI {
        -PI
    } else {
        y
    }
}

/// A crystal momentum `(px, py)` on the Brillouin-zone torus, both
/// components in `[-π, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    px: f64,
    py: f64,
}

impl MomentumPoint {
    pub fn new(px: f64, py: f64) -> Self {
        MomentumPoint { px: wrap_angle(px), py: wrap_angle(py) }
    }

    pub fn px(&self) -> f64 {
        self.px
    }

    pub fn py(&self) -> f64 {
        self.py
    }

    pub fn neg(&self) -> Self {
        MomentumPoint::new(-self.px, -self.py)
    }
}

/// Uniform `nx × ny` discretization of the Brillouin zone with points
/// `p(j, k) = (-π + 2πj/nx, -π + 2πk/ny)`.
///
/// Flat indices are row-major in `j`: `index(j, k) = j·ny + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BzGrid {
    nx: usize,
    ny: usize,
}

impl BzGrid {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        if nx < MIN_GRID || ny < MIN_GRID {
            return Err(Error::InvalidParameter(format!("grid {nx}x{ny} is smaller than {MIN_GRID}x{MIN_GRID}")));
        }
        Ok(BzGrid { nx, ny })
    }

    pub fn square(n: usize) -> Result<Self> {
        BzGrid::new(n, n)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_even(&self) -> bool {
        self.nx % 2 == 0 && self.ny % 2 == 0
    }

    pub fn dpx(&self) -> f64 {
        TAU / self.nx as f64
    }

    pub fn dpy(&self) -> f64 {
        TAU / self.ny as f64
    }

    /// Flat index of `(j, k)`; both indices wrap periodically.
    pub fn index(&self, j: usize, k: usize) -> usize {
        (j % self.nx) * self.ny + k % self.ny
    }

    /// Flat index of a signed offset position, wrapped onto the torus.
    pub fn index_wrapped(&self, j: isize, k: isize) -> usize {
        let j = j.rem_euclid(self.nx as isize) as usize;
        let k = k.rem_euclid(self.ny as isize) as usize;
        j * self.ny + k
    }

    pub fn loc(&self, index: usize) -> GridLoc {
        GridLoc::new(index / self.ny, index % self.ny)
    }

    pub fn point(&self, j: usize, k: usize) -> MomentumPoint {
        let j = j % self.nx;
        let k = k % self.ny;
        MomentumPoint { px: -PI + TAU * j as f64 / self.nx as f64, py: -PI + TAU * k as f64 / self.ny as f64 }
    }

    pub fn point_at(&self, index: usize) -> MomentumPoint {
        let l = self.loc(index);
        self.point(l.j, l.k)
    }

    /// Grid location of `-p(j, k)`, which is always on the grid.
    pub fn neg_loc(&self, j: usize, k: usize) -> GridLoc {
        GridLoc::new((self.nx - j % self.nx) % self.nx, (self.ny - k % self.ny) % self.ny)
    }

    /// All locations in flat-index order.
    pub fn locations(&self) -> impl Iterator<Item = GridLoc> + '_ {
        (0..self.len()).map(move |i| self.loc(i))
    }

    /// The `2(nx + ny)` boundary points of the cut-open zone as a closed
    /// counter-clockwise loop of unwrapped indices, starting at `(0, 0)`.
    pub fn boundary_loop(&self) -> Vec<(usize, usize)> {
        let (nx, ny) = (self.nx, self.ny);
        let mut path = Vec::with_capacity(2 * (nx + ny));
        path.extend((0..nx).map(|j| (j, 0)));
        path.extend((0..ny).map(|k| (nx, k)));
        path.extend((1..=nx).rev().map(|j| (j, ny)));
        path.extend((1..=ny).rev().map(|k| (0, k)));
        path
    }
}
