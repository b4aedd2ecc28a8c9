use topoinv_bz::{Error, HermitianKernel4, Matrix4c, MomentumPoint, Result, C64};

/// Staggered superconductor parameters: chemical potential `mu`, staggered
/// offset `delta_stagger`, hopping `t` and pairing `delta_pair`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaggeredScParams {
    pub mu: f64,
    pub delta_stagger: f64,
    pub t: f64,
    pub delta_pair: f64,
}

impl StaggeredScParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.mu, self.delta_stagger, self.t, self.delta_pair];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("superconductor parameters must be finite".into()));
        }
        Ok(())
    }
}

/// Normal-state kernel on the `(a, b)` sublattices.
fn normal(params: &StaggeredScParams, px: f64, py: f64) -> [[C64; 2]; 2] {
    let i = C64::i();
    let hop_y = 2.0 * params.t * py.cos();
    let ab = i * params.t * (C64::from(1.0) + C64::from_polar(1.0, -px));
    [
        [C64::from(params.mu - params.delta_stagger + hop_y), ab],
        [ab.conj(), C64::from(params.mu + params.delta_stagger + hop_y)],
    ]
}

/// Pairing matrix `D(p)` multiplying `c†_p c†_{−p}`.
fn pairing(params: &StaggeredScParams, px: f64, py: f64) -> [[C64; 2]; 2] {
    let d = params.delta_pair;
    let on_site = C64::new(0.0, 2.0 * d * py.sin());
    let one = C64::from(1.0);
    [[on_site, d * (one - C64::from_polar(1.0, -px))], [-d * (one - C64::from_polar(1.0, px)), on_site]]
}

/// BdG kernel in the basis `(a†_p, a_{−p}, b†_p, b_{−p})`, i.e. acting on
/// `Ψ_p = (a_p, a†_{−p}, b_p, b†_{−p})`.
///
/// Real-space terms: on-site `(μ∓δ)` on `a`/`b`, `i t a†b` within the cell
/// and `−i t b†a` to the next cell along x, `t` hopping along y on both
/// sublattices, and `Δ` pairing on the same bonds.
pub fn staggered_sc_kernel(params: &StaggeredScParams, p: MomentumPoint) -> HermitianKernel4 {
    let (px, py) = (p.px(), p.py());
    let h = normal(params, px, py);
    let hm = normal(params, -px, -py);
    let d = pairing(params, px, py);

    // Nambu-ordered (a, b, ã, b̃) blocks, then interleaved to (a, ã, b, b̃)
    let mut nambu = Matrix4c::zeros();
    for r in 0..2 {
        for c in 0..2 {
            nambu[(r, c)] = h[r][c];
            nambu[(r, 2 + c)] = d[r][c];
            nambu[(2 + c, r)] = d[r][c].conj();
            nambu[(2 + r, 2 + c)] = -hm[c][r];
        }
    }
    const PERM: [usize; 4] = [0, 2, 1, 3];
    let m = Matrix4c::from_fn(|r, c| nambu[(PERM[r], PERM[c])]);
    HermitianKernel4::from_upper(&m)
}
