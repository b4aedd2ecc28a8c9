use std::collections::BTreeMap;

use topoinv_models::{KaneMeleParams, Model, ModelKind, StaggeredScParams};

use crate::CliError;

/// Parameter names and defaults of each model.
pub fn parameter_defaults(kind: ModelKind) -> &'static [(&'static str, f64)] {
    match kind {
        ModelKind::KaneMele => &[("t", 1.0), ("lv", 0.0), ("lso", 0.06), ("lr", 0.0)],
        ModelKind::StaggeredSc => &[("t", 1.0), ("mu", 0.0), ("delta", 0.0), ("pair", 1.0)],
    }
}

/// Ratio parameters usable as sweep axes: `(name, numerator, denominator)`.
pub fn ratio_parameters(kind: ModelKind) -> &'static [(&'static str, &'static str, &'static str)] {
    match kind {
        ModelKind::KaneMele => &[("lv/lso", "lv", "lso"), ("lr/lso", "lr", "lso")],
        ModelKind::StaggeredSc => &[],
    }
}

/// The plain parameter a (possibly ratio) name writes to.
pub fn target_parameter(kind: ModelKind, name: &str) -> Option<&'static str> {
    parameter_defaults(kind)
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, _)| *n)
        .or_else(|| ratio_parameters(kind).iter().find(|(n, _, _)| *n == name).map(|(_, num, _)| *num))
}

fn known_names(kind: ModelKind) -> String {
    let plain = parameter_defaults(kind).iter().map(|(n, _)| *n);
    let ratios = ratio_parameters(kind).iter().map(|(n, _, _)| *n);
    plain.chain(ratios).collect::<Vec<_>>().join(", ")
}

/// A full parameter assignment for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    kind: ModelKind,
    values: BTreeMap<&'static str, f64>,
}

impl ModelParams {
    pub fn defaults(kind: ModelKind) -> Self {
        ModelParams { kind, values: parameter_defaults(kind).iter().copied().collect() }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    /// Sets a plain parameter, or a ratio relative to the current denominator.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), CliError> {
        if !value.is_finite() {
            return Err(CliError::Config(format!("parameter {name} must be finite, got {value}")));
        }
        if let Some((key, _)) = parameter_defaults(self.kind).iter().find(|(n, _)| *n == name) {
            self.values.insert(key, value);
            return Ok(());
        }
        if let Some((_, num, den)) = ratio_parameters(self.kind).iter().find(|(n, _, _)| *n == name) {
            let scale = self.values[den];
            self.values.insert(num, value * scale);
            return Ok(());
        }
        Err(CliError::Config(format!(
            "unknown parameter '{name}' for {} (known: {})",
            self.kind,
            known_names(self.kind)
        )))
    }

    pub fn model(&self) -> Model {
        let v = |n: &str| self.values[n];
        match self.kind {
            ModelKind::KaneMele => {
                Model::KaneMele(KaneMeleParams { t: v("t"), lambda_v: v("lv"), lambda_so: v("lso"), lambda_r: v("lr") })
            }
            ModelKind::StaggeredSc => Model::StaggeredSc(StaggeredScParams {
                mu: v("mu"),
                delta_stagger: v("delta"),
                t: v("t"),
                delta_pair: v("pair"),
            }),
        }
    }
}
