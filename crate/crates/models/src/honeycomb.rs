/// Geometry of the honeycomb lattice in units of the lattice constant.
///
/// ```text
///        b           b
///          \       /
///       δ₂  \     / δ₁
///             a ──────> a₁
///             |
///             | δ₃
///             b
/// ```
///
/// Sublattice `a` sits at the cell origin and `b` at `(a₁ + a₂)/3`.
/// Momenta are given in the reduced form `p = (k·a₁, k·a₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoneycombGeometry {
    /// Primitive vectors.
    pub a1: [f64; 2],
    pub a2: [f64; 2],
    /// Unit vectors from an `a` site to its three `b` neighbours.
    pub nn_dirs: [[f64; 2]; 3],
    /// Cell offsets (in units of `a₁`, `a₂`) of those `b` neighbours.
    pub nn_cells: [[i32; 2]; 3],
    /// Next-nearest-neighbour offsets with `ν = +1` when hopping onto an
    /// `a` site from the site at this offset; the opposite offsets carry
    /// `ν = −1` and sublattice `b` has all signs reversed.
    pub nnn_plus: [[i32; 2]; 3],
}

const S3_2: f64 = 0.866_025_403_784_438_6;

pub const HONEYCOMB: HoneycombGeometry = HoneycombGeometry {
    a1: [1.0, 0.0],
    a2: [0.5, S3_2],
    nn_dirs: [[S3_2, 0.5], [-S3_2, 0.5], [0.0, -1.0]],
    nn_cells: [[0, 0], [-1, 0], [0, -1]],
    nnn_plus: [[1, 0], [-1, 1], [0, -1]],
};

impl HoneycombGeometry {
    /// `p·R` for the lattice vector `R = n₁a₁ + n₂a₂`.
    pub fn phase(&self, cell: [i32; 2], p1: f64, p2: f64) -> f64 {
        cell[0] as f64 * p1 + cell[1] as f64 * p2
    }

    /// The two K points `±(2π/3, −2π/3)` in reduced coordinates.
    pub fn k_points(&self) -> [[f64; 2]; 2] {
        let k = 2.0 * std::f64::consts::PI / 3.0;
        [[k, -k], [-k, k]]
    }
}
