use std::fmt;

use topoinv_bz::{Error, Result};

/// One of the two components of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// Which ground-state construction applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Path {
    /// Half-filled Bloch kernel; the two lowest bands are occupied.
    Insulator,
    /// BdG kernel; the negative-energy levels are occupied.
    Superconductor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    Spin,
    Sublattice,
    Custom,
}

/// Split of the four basis modes into two ordered pairs.
///
/// For the superconductor path each pair is `(c_p, c_{−p})` of one species.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsystemPartition {
    a: [usize; 2],
    b: [usize; 2],
    kind: PartitionKind,
}

impl SubsystemPartition {
    pub fn new(a: [usize; 2], b: [usize; 2]) -> Result<Self> {
        let mut seen = [false; 4];
        for m in a.iter().chain(b.iter()) {
            if *m > 3 || seen[*m] {
                return Err(Error::InvalidParameter(format!(
                    "partition {a:?}/{b:?} must use each of the modes 0..4 exactly once"
                )));
            }
            seen[*m] = true;
        }
        Ok(SubsystemPartition { a, b, kind: PartitionKind::Custom })
    }

    /// `(a↑, b↑)` against `(a↓, b↓)` in the Kane–Mele basis.
    pub fn spin() -> Self {
        SubsystemPartition { a: [0, 2], b: [1, 3], kind: PartitionKind::Spin }
    }

    /// First two modes against the last two.
    pub fn sublattice() -> Self {
        SubsystemPartition { a: [0, 1], b: [2, 3], kind: PartitionKind::Sublattice }
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn modes(&self, which: Subsystem) -> [usize; 2] {
        match which {
            Subsystem::A => self.a,
            Subsystem::B => self.b,
        }
    }

    pub fn label(&self, which: Subsystem) -> &'static str {
        match (self.kind, which) {
            (PartitionKind::Spin, Subsystem::A) => "up",
            (PartitionKind::Spin, Subsystem::B) => "down",
            (_, Subsystem::A) => "a",
            (_, Subsystem::B) => "b",
        }
    }
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionKind::Spin => "spin",
            PartitionKind::Sublattice => "sublattice",
            PartitionKind::Custom => "custom",
        })
    }
}
