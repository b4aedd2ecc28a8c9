//! Subsystem observables: ground-state correlation matrices, the vectors
//! `s_i(p)` built from them, and the entanglement measure `min_p |s_i(p)|`.

mod correlation;
mod field;
mod partition;

pub use correlation::{
    ground_correlations_insulator, ground_correlations_sc, insulator_svector, sc_svector, CorrelationMatrix,
};
pub use field::{
    correlation_field, entanglement_measure, hull_entanglement_measure, svector_field, svector_fields, SVectorField,
    ENTANGLEMENT_FLOOR,
};
pub use partition::{PartitionKind, Path, Subsystem, SubsystemPartition};
