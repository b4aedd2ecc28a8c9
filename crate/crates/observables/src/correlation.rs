use nalgebra::{SMatrix, Vector3};
use topoinv_bz::{Error, Matrix4c, Result, SpectralData4, C64, DEGENERACY_TOL};

use crate::partition::{Subsystem, SubsystemPartition};

/// Ground-state two-point functions in the fixed basis:
/// `normal(i, j) = ⟨c†_i c_j⟩` and, for superconductors,
/// `anomalous(i, j) = ⟨c_i c_j⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix {
    normal: Matrix4c,
    anomalous: Option<Matrix4c>,
}

impl CorrelationMatrix {
    pub fn new(normal: Matrix4c, anomalous: Option<Matrix4c>) -> Self {
        CorrelationMatrix { normal, anomalous }
    }

    pub fn normal(&self) -> &Matrix4c {
        &self.normal
    }

    pub fn anomalous(&self) -> Option<&Matrix4c> {
        self.anomalous.as_ref()
    }

    pub fn trace(&self) -> f64 {
        self.normal.trace().re
    }

    /// Generalized 8×8 correlation matrix `⟨Φ†_i Φ_j⟩` of
    /// `Φ = (c₁…c₄, c†₁…c†₄)`; a projector for pure Gaussian states.
    pub fn nambu(&self) -> SMatrix<C64, 8, 8> {
        let f = self.anomalous.unwrap_or_else(Matrix4c::zeros);
        let mut g = SMatrix::<C64, 8, 8>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                g[(i, j)] = self.normal[(i, j)];
                g[(i, 4 + j)] = f[(j, i)].conj();
                g[(4 + i, j)] = f[(i, j)];
                let delta = if i == j { 1.0 } else { 0.0 };
                g[(4 + i, 4 + j)] = C64::from(delta) - self.normal[(j, i)];
            }
        }
        g
    }
}

/// Occupies the two lowest bands: `C(i, j) = Σ_{n<2} conj(v_n(i)) v_n(j)`.
pub fn ground_correlations_insulator(spec: &SpectralData4) -> Result<CorrelationMatrix> {
    let gap = spec.eigenvalues[2] - spec.eigenvalues[1];
    if gap <= DEGENERACY_TOL {
        return Err(Error::GapClosure { at: None, gap });
    }
    let mut c = Matrix4c::zeros();
    for n in 0..2 {
        let v = spec.eigenvector(n);
        for i in 0..4 {
            for j in 0..4 {
                c[(i, j)] += v[i].conj() * v[j];
            }
        }
    }
    Ok(CorrelationMatrix::new(c, None))
}

/// `Γ(i, j) = ⟨Ψ†_i Ψ_j⟩` of the BdG ground state at one momentum.
fn nambu_occupation(spec: &SpectralData4) -> Result<Matrix4c> {
    let negative = spec.eigenvalues.iter().filter(|&&e| e < 0.0).count();
    let gap = spec.eigenvalues[2] - spec.eigenvalues[1];
    if gap <= DEGENERACY_TOL {
        return Err(Error::GapClosure { at: None, gap });
    }
    if negative != 2 {
        return Err(Error::ParitySector { at: None, negative });
    }
    let mut g = Matrix4c::zeros();
    for n in 0..2 {
        let v = spec.eigenvector(n);
        for i in 0..4 {
            for j in 0..4 {
                g[(i, j)] += v[i].conj() * v[j];
            }
        }
    }
    Ok(g)
}

const PARTICLE: [usize; 2] = [0, 2];
const HOLE: [usize; 2] = [1, 3];

/// Normal and anomalous correlations of the modes
/// `(a_p, a_{−p}, b_p, b_{−p})` from the BdG spectra at `p` and `−p`.
///
/// The `+p` block and the pairing amplitudes come from `p`; the `−p`
/// occupations come from the particle block at `−p`.
pub fn ground_correlations_sc(at_p: &SpectralData4, at_minus_p: &SpectralData4) -> Result<CorrelationMatrix> {
    let gp = nambu_occupation(at_p)?;
    let gm = nambu_occupation(at_minus_p)?;
    let mut c = Matrix4c::zeros();
    let mut f = Matrix4c::zeros();
    for r in 0..2 {
        for s in 0..2 {
            c[(PARTICLE[r], PARTICLE[s])] = gp[(PARTICLE[r], PARTICLE[s])];
            c[(HOLE[r], HOLE[s])] = gm[(PARTICLE[r], PARTICLE[s])];
            // ⟨c_{p,r} c_{−p,s}⟩ = −conj⟨c†_{p,r} c†_{−p,s}⟩
            let pair = -gp[(PARTICLE[r], HOLE[s])].conj();
            f[(PARTICLE[r], HOLE[s])] = pair;
            f[(HOLE[s], PARTICLE[r])] = -pair;
        }
    }
    Ok(CorrelationMatrix::new(c, Some(f)))
}

/// `(2 Re C(m₁,m₂), 2 Im C(m₁,m₂), C(m₁,m₁) − C(m₂,m₂))` for the chosen pair.
pub fn insulator_svector(corr: &CorrelationMatrix, part: &SubsystemPartition, which: Subsystem) -> Vector3<f64> {
    let [m1, m2] = part.modes(which);
    let c = corr.normal();
    let off = c[(m1, m2)];
    Vector3::new(2.0 * off.re, 2.0 * off.im, c[(m1, m1)].re - c[(m2, m2)].re)
}

/// Pairing vector of one species with modes `(c_p, c_{−p})`:
/// `(2 Re z, −2 Im z, 1 − n_p − n_{−p})` with `z = ⟨c†_p c†_{−p}⟩`.
///
/// The third component is the Nambu-`τ_z` expectation `⟨1 − n_p − n_{−p}⟩`,
/// which equals `|α₀₀|² − |α₁₁|²` inside the even-parity sector.
pub fn sc_svector(corr: &CorrelationMatrix, part: &SubsystemPartition, which: Subsystem) -> Vector3<f64> {
    let [m1, m2] = part.modes(which);
    let c = corr.normal();
    let z = corr.anomalous().map(|f| f[(m2, m1)].conj()).unwrap_or_default();
    Vector3::new(2.0 * z.re, -2.0 * z.im, 1.0 - c[(m1, m1)].re - c[(m2, m2)].re)
}
