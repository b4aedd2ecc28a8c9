use std::collections::BTreeMap;
use std::fmt;
use std::path::Path as FsPath;
use std::str::FromStr;

use serde::Deserialize;
use topoinv_bz::BzGrid;
use topoinv_invariants::{MIN_WINDING_GRID, RESIDUAL_TOL};
use topoinv_models::ModelKind;
use topoinv_observables::{PartitionKind, SubsystemPartition, ENTANGLEMENT_FLOOR};

use crate::params::{target_parameter, ModelParams};
use crate::CliError;

/// Per-cell quantities a sweep can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    NuA,
    NuB,
    NuTotal,
    NuS,
    SpectralGap,
    MinSA,
    MinSB,
    EntGap,
    ResidualA,
    ResidualB,
    MaxAngle,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Quantity::NuA,
        Quantity::NuB,
        Quantity::NuTotal,
        Quantity::NuS,
        Quantity::SpectralGap,
        Quantity::MinSA,
        Quantity::MinSB,
        Quantity::EntGap,
        Quantity::ResidualA,
        Quantity::ResidualB,
        Quantity::MaxAngle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::NuA => "nu_a",
            Quantity::NuB => "nu_b",
            Quantity::NuTotal => "nu_total",
            Quantity::NuS => "nu_s",
            Quantity::SpectralGap => "spectral_gap",
            Quantity::MinSA => "min_s_a",
            Quantity::MinSB => "min_s_b",
            Quantity::EntGap => "ent_gap",
            Quantity::ResidualA => "residual_a",
            Quantity::ResidualB => "residual_b",
            Quantity::MaxAngle => "max_angle",
        }
    }

    /// Topological integers, drawn with the diverging color map.
    pub fn is_invariant(&self) -> bool {
        matches!(self, Quantity::NuA | Quantity::NuB | Quantity::NuTotal | Quantity::NuS)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Quantity::ALL.into_iter().find(|q| q.name() == s).ok_or_else(|| {
            let names: Vec<_> = Quantity::ALL.iter().map(Quantity::name).collect();
            CliError::Config(format!("unknown quantity '{s}' (available: {})", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    fn validate(&self, which: &str) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(CliError::Config(format!("{which}: bounds must be finite")));
        }
        if self.steps == 0 || (self.steps == 1 && self.min != self.max) {
            return Err(CliError::Config(format!(
                "{which}: steps must be at least 2 (or 1 with min = max), got {}",
                self.steps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Winding results with `|raw − round(raw)|` at or above this are unreliable.
    pub residual: f64,
    /// `min|s|` at or below this is a hard failure.
    pub entanglement_floor: f64,
    /// `min|s|` below this raises the `high_entanglement` warning.
    pub entanglement_warning: f64,
    /// Largest plaquette flux or triangle solid angle for which the lattice
    /// integers count as resolved by the grid.
    pub max_angle: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            residual: RESIDUAL_TOL,
            entanglement_floor: ENTANGLEMENT_FLOOR,
            entanglement_warning: 0.1,
            max_angle: std::f64::consts::FRAC_PI_2,
        }
    }
}

/// A validated sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub model: ModelKind,
    pub fixed: BTreeMap<String, f64>,
    pub axis1: Axis,
    pub axis2: Axis,
    pub grid: BzGrid,
    pub partition: SubsystemPartition,
    pub outputs: Vec<Quantity>,
    pub thresholds: Thresholds,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: RawModel,
    axis1: RawAxis,
    axis2: RawAxis,
    #[serde(default)]
    grid: RawGrid,
    partition: Option<RawPartition>,
    outputs: Option<RawOutputs>,
    #[serde(default)]
    thresholds: RawThresholds,
}

#[derive(Deserialize)]
struct RawModel {
    name: String,
    #[serde(flatten)]
    params: BTreeMap<String, f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    param: String,
    min: f64,
    max: f64,
    steps: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    nx: usize,
    ny: usize,
}

impl Default for RawGrid {
    fn default() -> Self {
        RawGrid { nx: 128, ny: 128 }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartition {
    kind: String,
    a: Option<[usize; 2]>,
    b: Option<[usize; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutputs {
    quantities: Vec<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawThresholds {
    residual: Option<f64>,
    entanglement_floor: Option<f64>,
    entanglement_warning: Option<f64>,
    max_angle: Option<f64>,
}

/// Partition from its name: `spin`, `sublattice`, or `a0,a1:b0,b1`.
pub fn parse_partition(s: &str) -> Result<SubsystemPartition, CliError> {
    match s {
        "spin" => Ok(SubsystemPartition::spin()),
        "sublattice" => Ok(SubsystemPartition::sublattice()),
        custom => {
            let bad = || CliError::Config(format!("partition '{custom}' is not spin, sublattice or a0,a1:b0,b1"));
            let (a, b) = custom.split_once(':').ok_or_else(bad)?;
            let pair = |s: &str| -> Result<[usize; 2], CliError> {
                let v: Vec<usize> =
                    s.split(',').map(|m| m.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
                v.try_into().map_err(|_| bad())
            };
            Ok(SubsystemPartition::new(pair(a)?, pair(b)?)?)
        }
    }
}

pub fn default_partition(kind: ModelKind) -> SubsystemPartition {
    match kind {
        ModelKind::KaneMele => SubsystemPartition::spin(),
        ModelKind::StaggeredSc => SubsystemPartition::sublattice(),
    }
}

/// Grid accepted by every per-cell computation of the model.
pub fn check_grid(kind: ModelKind, nx: usize, ny: usize) -> Result<BzGrid, CliError> {
    if nx < MIN_WINDING_GRID || ny < MIN_WINDING_GRID {
        return Err(CliError::Config(format!(
            "grid {nx}x{ny} is below the {MIN_WINDING_GRID}x{MIN_WINDING_GRID} minimum"
        )));
    }
    if kind.is_bdg() && (nx % 2 != 0 || ny % 2 != 0) {
        return Err(CliError::Config(format!("{kind} needs even grid sizes, got {nx}x{ny}")));
    }
    Ok(BzGrid::new(nx, ny)?)
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let model: ModelKind = raw.model.name.parse().map_err(CliError::Config)?;
        let partition = match raw.partition {
            None => default_partition(model),
            Some(p) => match (p.kind.as_str(), p.a, p.b) {
                ("custom", Some(a), Some(b)) => SubsystemPartition::new(a, b)?,
                ("custom", _, _) => {
                    return Err(CliError::Config("custom partition needs both a and b".into()));
                }
                (kind, None, None) => parse_partition(kind)?,
                (kind, _, _) => {
                    return Err(CliError::Config(format!("partition kind '{kind}' takes no a/b lists")));
                }
            },
        };
        let outputs = match raw.outputs {
            None => Quantity::ALL
                .into_iter()
                .filter(|q| *q != Quantity::NuS || partition.kind() == PartitionKind::Spin)
                .collect(),
            Some(o) => o.quantities.iter().map(|q| q.parse()).collect::<Result<_, _>>()?,
        };
        let d = Thresholds::default();
        let thresholds = Thresholds {
            residual: raw.thresholds.residual.unwrap_or(d.residual),
            entanglement_floor: raw.thresholds.entanglement_floor.unwrap_or(d.entanglement_floor),
            entanglement_warning: raw.thresholds.entanglement_warning.unwrap_or(d.entanglement_warning),
            max_angle: raw.thresholds.max_angle.unwrap_or(d.max_angle),
        };
        let axis = |a: RawAxis| Axis { param: a.param, min: a.min, max: a.max, steps: a.steps };
        let config = SweepConfig {
            model,
            fixed: raw.model.params,
            axis1: axis(raw.axis1),
            axis2: axis(raw.axis2),
            grid: check_grid(model, raw.grid.nx, raw.grid.ny)?,
            partition,
            outputs,
            thresholds,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &FsPath) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.axis1.validate("axis1")?;
        self.axis2.validate("axis2")?;
        check_grid(self.model, self.grid.nx(), self.grid.ny())?;
        let target = |name: &str| {
            target_parameter(self.model, name)
                .ok_or_else(|| CliError::Config(format!("unknown parameter '{name}' for {}", self.model)))
        };
        let t1 = target(&self.axis1.param)?;
        let t2 = target(&self.axis2.param)?;
        if t1 == t2 {
            return Err(CliError::Config(format!(
                "axes '{}' and '{}' both set {t1}",
                self.axis1.param, self.axis2.param
            )));
        }
        for name in self.fixed.keys() {
            let t = target(name)?;
            if t != name {
                return Err(CliError::Config(format!("ratio '{name}' can only be used as an axis")));
            }
            if t == t1 || t == t2 {
                return Err(CliError::Config(format!("parameter '{name}' is both fixed and swept")));
            }
        }
        let mut seen = Vec::new();
        for q in &self.outputs {
            if seen.contains(q) {
                return Err(CliError::Config(format!("output '{q}' listed twice")));
            }
            seen.push(*q);
        }
        if self.outputs.contains(&Quantity::NuS) && self.partition.kind() != PartitionKind::Spin {
            return Err(CliError::Config("nu_s needs the spin partition".into()));
        }
        let th = &self.thresholds;
        if !(th.residual > 0.0 && th.residual < 0.5) {
            return Err(CliError::Config(format!("residual threshold {} outside (0, 0.5)", th.residual)));
        }
        if !(th.entanglement_floor >= ENTANGLEMENT_FLOOR && th.entanglement_floor <= th.entanglement_warning) {
            return Err(CliError::Config(format!(
                "need {ENTANGLEMENT_FLOOR:e} <= entanglement_floor <= entanglement_warning, got {} and {}",
                th.entanglement_floor, th.entanglement_warning
            )));
        }
        if !(th.max_angle > 0.0 && th.max_angle <= std::f64::consts::PI) {
            return Err(CliError::Config(format!("max_angle {} outside (0, pi]", th.max_angle)));
        }
        self.params_at(0, 0)?.model().validate()?;
        Ok(())
    }

    /// Parameters of raster cell `(i, j)`.
    pub fn params_at(&self, i: usize, j: usize) -> Result<ModelParams, CliError> {
        let mut p = ModelParams::defaults(self.model);
        for (name, value) in &self.fixed {
            p.set(name, *value)?;
        }
        // plain parameters first so ratios see the final denominator
        let mut axes = [(&self.axis1.param, self.axis1.value(i)), (&self.axis2.param, self.axis2.value(j))];
        axes.sort_by_key(|(name, _)| name.contains('/'));
        for (name, value) in axes {
            p.set(name, value)?;
        }
        Ok(p)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.axis1.steps, self.axis2.steps)
    }
}
