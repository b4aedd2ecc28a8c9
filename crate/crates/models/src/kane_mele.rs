use topoinv_bz::{Error, HermitianKernel4, Matrix4c, MomentumPoint, Result, C64};

use crate::honeycomb::HONEYCOMB;

/// Kane–Mele parameters: nearest-neighbour hopping `t`, sublattice offset
/// `lambda_v`, intrinsic spin–orbit `lambda_so` and Rashba `lambda_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaneMeleParams {
    pub t: f64,
    pub lambda_v: f64,
    pub lambda_so: f64,
    pub lambda_r: f64,
}

impl KaneMeleParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.t, self.lambda_v, self.lambda_so, self.lambda_r];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("Kane-Mele parameters must be finite".into()));
        }
        if self.t == 0.0 {
            return Err(Error::InvalidParameter("Kane-Mele hopping t must be nonzero".into()));
        }
        Ok(())
    }

    /// Analytic gap of the spin blocks at the K points for `lambda_r = 0`.
    pub fn k_point_gap(&self) -> f64 {
        2.0 * (self.lambda_v - 3.0 * 3f64.sqrt() * self.lambda_so).abs()
    }
}

/// Bloch kernel in the basis `(a↑, a↓, b↑, b↓)`.
pub fn kane_mele_kernel(params: &KaneMeleParams, p: MomentumPoint) -> HermitianKernel4 {
    let geo = &HONEYCOMB;
    let (p1, p2) = (p.px(), p.py());
    let i = C64::i();

    let g: f64 = geo.nnn_plus.iter().map(|&n| geo.phase(n, p1, p2).sin()).sum();
    let so = 2.0 * params.lambda_so * g;

    let mut h = Matrix4c::zeros();
    h[(0, 0)] = C64::from(params.lambda_v - so);
    h[(1, 1)] = C64::from(params.lambda_v + so);
    h[(2, 2)] = C64::from(-params.lambda_v + so);
    h[(3, 3)] = C64::from(-params.lambda_v - so);

    // a→b block: Σ_n e^{ip·R_n} [t + iλ_R (σ × d̂_n)_z] in spin space
    let mut ab = [[C64::from(0.0); 2]; 2];
    for (cell, d) in geo.nn_cells.iter().zip(geo.nn_dirs.iter()) {
        let phase = C64::from_polar(1.0, geo.phase(*cell, p1, p2));
        let (dx, dy) = (d[0], d[1]);
        // σx·dy − σy·dx = [[0, dy + i dx], [dy − i dx, 0]]
        let r_up_dn = i * params.lambda_r * C64::new(dy, dx);
        let r_dn_up = i * params.lambda_r * C64::new(dy, -dx);
        ab[0][0] += phase * params.t;
        ab[1][1] += phase * params.t;
        ab[0][1] += phase * r_up_dn;
        ab[1][0] += phase * r_dn_up;
    }
    for s in 0..2 {
        for s2 in 0..2 {
            h[(s, 2 + s2)] = ab[s][s2];
        }
    }
    HermitianKernel4::from_upper(&h)
}
