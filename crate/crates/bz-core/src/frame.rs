use std::f64::consts::{PI, TAU};

use nalgebra::Matrix2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::kernel::{Matrix4c, Vector4c};

pub type Matrix2c = Matrix2<C64>;

/// Overlap determinants smaller than this are treated as singular.
pub const SINGULAR_OVERLAP_TOL: f64 = 1e-12;

/// Orthonormal basis of an occupied subspace with one or two columns.
///
/// Rank-one frames carry a zero second column; their overlap matrices are
/// padded with a unit entry so every operation works on 2×2 matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    cols: [Vector4c; 2],
    rank: usize,
}

impl Frame {
    pub fn single(v: Vector4c) -> Self {
        Frame { cols: [v, Vector4c::zeros()], rank: 1 }
    }

    pub fn pair(v1: Vector4c, v2: Vector4c) -> Self {
        Frame { cols: [v1, v2], rank: 2 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn col(&self, i: usize) -> &Vector4c {
        &self.cols[i]
    }

    /// `U = A†B` restricted to the frame rank (identity-padded).
    pub fn overlap(&self, other: &Frame) -> Matrix2c {
        debug_assert_eq!(self.rank, other.rank);
        let mut u = Matrix2c::identity();
        for a in 0..self.rank {
            for b in 0..self.rank {
                u[(a, b)] = self.cols[a].dotc(&other.cols[b]);
            }
        }
        u
    }

    /// Frame whose columns are `Σ_i cols[i]·u[(i, j)]`.
    pub fn rotated(&self, u: &Matrix2c) -> Frame {
        let mut cols = [Vector4c::zeros(); 2];
        for (j, col) in cols.iter_mut().enumerate().take(self.rank) {
            for i in 0..self.rank {
                *col += self.cols[i] * u[(i, j)];
            }
        }
        Frame { cols, rank: self.rank }
    }

    /// Projector `Σ v v†` onto the frame.
    pub fn projector(&self) -> Matrix4c {
        let mut p = Matrix4c::zeros();
        for v in &self.cols[..self.rank] {
            p += v * v.adjoint();
        }
        p
    }
}

fn det2(u: &Matrix2c) -> C64 {
    u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)]
}

/// `-arg z` mapped into `(-π, π]`.
pub fn principal_phase(z: C64) -> f64 {
    let a = -z.arg();
    if a <= -PI {
        a + TAU
    } else {
        a
    }
}

fn link_det(a: &Frame, b: &Frame) -> Result<C64> {
    let d = det2(&a.overlap(b));
    if d.norm() < SINGULAR_OVERLAP_TOL {
        return Err(Error::SingularOverlap { at: None, det: d.norm() });
    }
    Ok(d)
}

/// Berry phase `-Im log det(A†B)` of a single link, in `(-π, π]`.
pub fn link_phase(a: &Frame, b: &Frame) -> Result<f64> {
    Ok(principal_phase(link_det(a, b)?))
}

/// Lattice Berry flux `-Im log det[U₁₂ U₂₃ U₃₄ U₄₁]` through a plaquette
/// whose corners are listed counter-clockwise.
pub fn plaquette_berry_flux(corners: [&Frame; 4]) -> Result<f64> {
    let mut w = C64::new(1.0, 0.0);
    for i in 0..4 {
        w *= link_det(corners[i], corners[(i + 1) % 4])?;
    }
    Ok(principal_phase(w))
}

/// Berry phase of a closed loop of frames: `-Im log` of the product of
/// consecutive overlap determinants, including the closing link.
pub fn boundary_berry_phase(path: &[Frame]) -> Result<f64> {
    let mut w = C64::new(1.0, 0.0);
    for i in 0..path.len() {
        w *= link_det(&path[i], &path[(i + 1) % path.len()])?;
        w /= w.norm();
    }
    Ok(principal_phase(w))
}

/// Unitary factor `W V†` of the polar decomposition of `u = W Σ V†`.
fn polar_unitary(u: &Matrix2c, rank: usize) -> Result<Matrix2c> {
    if rank == 1 {
        let z = u[(0, 0)];
        if z.norm() < SINGULAR_OVERLAP_TOL {
            return Err(Error::SingularOverlap { at: None, det: z.norm() });
        }
        let mut out = Matrix2c::identity();
        out[(0, 0)] = z / z.norm();
        return Ok(out);
    }
    let svd = u.svd(true, true);
    let smallest = svd.singular_values.min();
    if smallest < SINGULAR_OVERLAP_TOL {
        return Err(Error::SingularOverlap { at: None, det: smallest });
    }
    Ok(svd.u.expect("requested") * svd.v_t.expect("requested"))
}

/// Re-gauges `frame` so that its overlap with `reference` is positive
/// Hermitian: the discrete parallel transport of `reference` onto the
/// subspace spanned by `frame`.
pub fn parallel_transport(frame: &Frame, reference: &Frame) -> Result<Frame> {
    let m = frame.overlap(reference);
    let u = polar_unitary(&m, frame.rank)?;
    Ok(frame.rotated(&u))
}
