use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::grid::MomentumPoint;

pub type Matrix4c = Matrix4<C64>;
pub type Vector4c = Vector4<C64>;

/// Absolute per-entry Hermiticity tolerance.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A 4×4 complex Hermitian matrix: the Bloch or BdG kernel at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianKernel4(Matrix4c);

impl HermitianKernel4 {
    /// Validates Hermiticity, naming the worst offending entry on failure.
    pub fn new(m: Matrix4c) -> Result<Self> {
        let mut worst = (0, 0, 0.0);
        for i in 0..4 {
            for j in i..4 {
                let d = (m[(i, j)] - m[(j, i)].conj()).norm();
                if d > worst.2 {
                    worst = (i, j, d);
                }
            }
        }
        if worst.2 > HERMITICITY_TOL {
            return Err(Error::NonHermitian { row: worst.0, col: worst.1, deviation: worst.2 });
        }
        Ok(HermitianKernel4(m))
    }

    /// Builds the kernel from its upper triangle, mirroring it into the lower one.
    /// Imaginary parts on the diagonal are discarded.
    pub fn from_upper(m: &Matrix4c) -> Self {
        let mut h = Matrix4c::zeros();
        for i in 0..4 {
            h[(i, i)] = C64::new(m[(i, i)].re, 0.0);
            for j in i + 1..4 {
                h[(i, j)] = m[(i, j)];
                h[(j, i)] = m[(i, j)].conj();
            }
        }
        HermitianKernel4(h)
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        HermitianKernel4(Matrix4c::from_diagonal(&Vector4c::from_fn(|i, _| C64::new(d[i], 0.0))))
    }

    pub fn matrix(&self) -> &Matrix4c {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

/// Anything that assigns a Hermitian kernel to each momentum.
pub trait BlochKernel: Sync {
    fn kernel(&self, p: MomentumPoint) -> HermitianKernel4;
}

impl<F> BlochKernel for F
where
    F: Fn(MomentumPoint) -> HermitianKernel4 + Sync,
{
    fn kernel(&self, p: MomentumPoint) -> HermitianKernel4 {
        self(p)
    }
}

/// Ascending eigenvalues with their orthonormal eigenvectors as columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData4 {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: Matrix4c,
}

impl SpectralData4 {
    pub fn eigenvector(&self, n: usize) -> Vector4c {
        self.eigenvectors.column(n).into_owned()
    }

    /// Largest `‖H v - E v‖` over the four pairs.
    pub fn max_residual(&self, h: &HermitianKernel4) -> f64 {
        (0..4)
            .map(|n| {
                let v = self.eigenvector(n);
                (h.matrix() * v - v * C64::new(self.eigenvalues[n], 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation of `V†V` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.eigenvectors.adjoint() * self.eigenvectors;
        (g - Matrix4c::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Rotates `v` so its largest-magnitude component (lowest index on ties) is
/// real and positive.
fn fix_phase<D: nalgebra::Dim, S: nalgebra::StorageMut<C64, D>>(v: &mut nalgebra::Vector<C64, D, S>) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_mag {
            best = i;
            best_mag = m;
        }
    }
    let z = v[best];
    let mag = z.norm();
    if mag > 0.0 {
        let phase = z.conj() / mag;
        for c in v.iter_mut() {
            *c *= phase;
        }
        v[best] = C64::new(mag, 0.0);
    }
}

/// Diagonalizes a Hermitian 4×4 kernel with ascending eigenvalues and
/// deterministic eigenvector phases.
pub fn eigensolve_hermitian4(h: &HermitianKernel4) -> SpectralData4 {
    let eig = h.0.symmetric_eigen();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = Matrix4c::zeros();
    for (n, &src) in order.iter().enumerate() {
        eigenvalues[n] = eig.eigenvalues[src];
        let mut v: Vector4c = eig.eigenvectors.column(src).into_owned();
        fix_phase(&mut v);
        eigenvectors.set_column(n, &v);
    }
    SpectralData4 { eigenvalues, eigenvectors }
}

/// Diagonalizes a Hermitian 2×2 block, same conventions as the 4×4 solver.
pub fn eigensolve_hermitian2(h: &Matrix2<C64>) -> ([f64; 2], Matrix2<C64>) {
    let eig = h.symmetric_eigen();
    let order = if eig.eigenvalues[0] <= eig.eigenvalues[1] { [0, 1] } else { [1, 0] };
    let mut vecs = Matrix2::<C64>::zeros();
    let mut vals = [0.0; 2];
    for (n, &src) in order.iter().enumerate() {
        vals[n] = eig.eigenvalues[src];
        let mut v: Vector2<C64> = eig.eigenvectors.column(src).into_owned();
        fix_phase(&mut v);
        vecs.set_column(n, &v);
    }
    (vals, vecs)
}
