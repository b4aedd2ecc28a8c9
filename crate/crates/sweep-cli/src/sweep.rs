use rayon::prelude::*;
use topoinv_bz::pairwise_sum;
use topoinv_bz::{BandField, Error, FrameField};
use topoinv_entspec::EntanglementField;
use topoinv_invariants::{chern_of_flux, path_for, plaquette_fluxes, spin_chern, winding_number, SpinChern};
use topoinv_observables::{entanglement_measure, svector_fields, PartitionKind};

use crate::config::{Quantity, SweepConfig};
use crate::CliError;

pub const WARN_HIGH_ENTANGLEMENT: &str = "high_entanglement";
pub const WARN_ADDITIVITY: &str = "additivity_mismatch";
/// Status of cells whose lattice integers are not resolved by the grid.
pub const UNRESOLVED: &str = "unresolved";

/// Everything computed at one raster cell. Missing values are `None`;
/// `failure` names the first computation that failed.
#[derive(Debug, Clone, PartialEq)]
pub struct CellRecord {
    pub i: usize,
    pub j: usize,
    pub x1: f64,
    pub x2: f64,
    pub nu_a: Option<i64>,
    pub nu_b: Option<i64>,
    pub nu_total: Option<i64>,
    pub nu_s: Option<SpinChern>,
    pub spectral_gap: Option<f64>,
    pub min_s_a: Option<f64>,
    pub min_s_b: Option<f64>,
    pub ent_gap: Option<f64>,
    pub residual_a: Option<f64>,
    pub residual_b: Option<f64>,
    /// Largest plaquette flux or triangle solid angle met.
    pub max_angle: Option<f64>,
    pub reliable: bool,
    pub failure: Option<&'static str>,
    pub warnings: Vec<&'static str>,
}

impl CellRecord {
    fn empty(i: usize, j: usize, x1: f64, x2: f64) -> Self {
        CellRecord {
            i,
            j,
            x1,
            x2,
            nu_a: None,
            nu_b: None,
            nu_total: None,
            nu_s: None,
            spectral_gap: None,
            min_s_a: None,
            min_s_b: None,
            ent_gap: None,
            residual_a: None,
            residual_b: None,
            max_angle: None,
            reliable: false,
            failure: None,
            warnings: Vec::new(),
        }
    }

    pub fn value(&self, q: Quantity) -> Option<f64> {
        match q {
            Quantity::NuA => self.nu_a.map(|v| v as f64),
            Quantity::NuB => self.nu_b.map(|v| v as f64),
            Quantity::NuTotal => self.nu_total.map(|v| v as f64),
            Quantity::NuS => self.nu_s.map(|v| v.as_f64()),
            Quantity::SpectralGap => self.spectral_gap,
            Quantity::MinSA => self.min_s_a,
            Quantity::MinSB => self.min_s_b,
            Quantity::EntGap => self.ent_gap,
            Quantity::ResidualA => self.residual_a,
            Quantity::ResidualB => self.residual_b,
            Quantity::MaxAngle => self.max_angle,
        }
    }

    pub fn min_s(&self) -> Option<f64> {
        Some(self.min_s_a?.min(self.min_s_b?))
    }

    fn fail(&mut self, e: &Error) {
        self.failure.get_or_insert(e.code());
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    pub config: SweepConfig,
    /// Cells in raster order, `axis1` index fastest.
    pub cells: Vec<CellRecord>,
}

impl PhaseDiagram {
    pub fn cell(&self, i: usize, j: usize) -> &CellRecord {
        &self.cells[j * self.config.axis1.steps + i]
    }
}

pub fn evaluate_cell(config: &SweepConfig, i: usize, j: usize) -> CellRecord {
    let mut rec = CellRecord::empty(i, j, config.axis1.value(i), config.axis2.value(j));
    let model = match config.params_at(i, j) {
        Ok(p) => p.model(),
        Err(_) => {
            rec.failure = Some("invalid_parameter");
            return rec;
        }
    };
    if let Err(e) = model.validate() {
        rec.fail(&e);
        return rec;
    }
    let th = config.thresholds;
    let bands = BandField::compute(&model, config.grid);
    rec.spectral_gap = Some(bands.min_gap(2).0.max(0.0));
    match FrameField::from_bands(&bands, 2).and_then(|f| plaquette_fluxes(&f)) {
        Ok(fluxes) => {
            rec.nu_total = Some(chern_of_flux(pairwise_sum(&fluxes)));
            rec.max_angle = Some(fluxes.iter().fold(0.0, |m, f| m.max(f.abs())));
        }
        Err(e) => rec.fail(&e),
    }

    let path = path_for(model.kind());
    let [fa, fb] = match svector_fields(&bands, &config.partition, path) {
        Ok(f) => f,
        Err(e) => {
            rec.fail(&e);
            return rec;
        }
    };
    let (ma, mb) = (entanglement_measure(&fa), entanglement_measure(&fb));
    rec.min_s_a = Some(ma);
    rec.min_s_b = Some(mb);
    let gaps = [&fa, &fb].map(|f| EntanglementField::new(f, path).map(|e| e.gap()));
    match gaps {
        [Ok(a), Ok(b)] => rec.ent_gap = Some(a.min(b)),
        [Err(e), _] | [_, Err(e)] => rec.fail(&e),
    }
    if ma.min(mb) < th.entanglement_warning {
        rec.warnings.push(WARN_HIGH_ENTANGLEMENT);
    }
    if ma.min(mb) <= th.entanglement_floor {
        rec.fail(&Error::MaxEntangled { at: None, norm: ma.min(mb) });
        return rec;
    }

    let (wa, wb) = match (winding_number(&fa), winding_number(&fb)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            rec.fail(&e);
            return rec;
        }
    };
    rec.nu_a = Some(wa.value);
    rec.nu_b = Some(wb.value);
    rec.residual_a = Some(wa.residual);
    rec.residual_b = Some(wb.residual);
    let widest = wa.max_solid_angle.max(wb.max_solid_angle).max(rec.max_angle.unwrap_or(0.0));
    rec.max_angle = Some(widest);
    let quantized = wa.residual < th.residual && wb.residual < th.residual;
    if !quantized {
        rec.fail(&Error::Unreliable { residual: wa.residual.max(wb.residual) });
    } else if config.partition.kind() == PartitionKind::Spin {
        rec.nu_s = spin_chern(&wa, &wb).ok();
    }
    if widest > th.max_angle {
        rec.failure.get_or_insert(UNRESOLVED);
    }
    if let Some(total) = rec.nu_total {
        if wa.value + wb.value != total {
            rec.warnings.push(WARN_ADDITIVITY);
        }
    }
    rec.reliable = rec.failure.is_none();
    rec
}

/// Evaluates every raster cell. Cell failures are recorded, never raised.
pub fn run_sweep(config: &SweepConfig) -> Result<PhaseDiagram, CliError> {
    config.validate()?;
    let (n1, n2) = config.shape();
    let cells = (0..n1 * n2).into_par_iter().map(|c| evaluate_cell(config, c % n1, c / n1)).collect();
    Ok(PhaseDiagram { config: config.clone(), cells })
}
