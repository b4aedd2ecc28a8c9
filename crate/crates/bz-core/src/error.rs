use std::fmt;

/// Grid coordinates `(j, k)` of the point, plaquette or triangle where a
/// computation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridLoc {
    pub j: usize,
    pub k: usize,
}

impl GridLoc {
    pub fn new(j: usize, k: usize) -> Self {
        GridLoc { j, k }
    }
}

impl fmt::Display for GridLoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.j, self.k)
    }
}

fn loc_suffix(loc: &Option<GridLoc>) -> String {
    match loc {
        Some(l) => format!(" at grid point {l}"),
        None => String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("kernel is not Hermitian: entry ({row}, {col}) deviates from its conjugate partner by {deviation:.3e}")]
    NonHermitian { row: usize, col: usize, deviation: f64 },

    #[error("degenerate spherical triangle (antipodal vertices){}", loc_suffix(.at))]
    DegenerateTriangle { at: Option<GridLoc> },

    #[error("singular overlap matrix, |det| = {det:.3e}{}", loc_suffix(.at))]
    SingularOverlap { at: Option<GridLoc>, det: f64 },

    #[error("spectral gap closes, gap = {gap:.3e}{}", loc_suffix(.at))]
    GapClosure { at: Option<GridLoc>, gap: f64 },

    #[error("subsystem maximally entangled, |s| = {norm:.3e}{}", loc_suffix(.at))]
    MaxEntangled { at: Option<GridLoc>, norm: f64 },

    #[error("expected 2 negative BdG levels, found {negative}{}", loc_suffix(.at))]
    ParitySector { at: Option<GridLoc>, negative: usize },

    #[error("selected block couples to the remaining modes with strength {coupling:.3e}{}", loc_suffix(.at))]
    BlockCoupled { at: Option<GridLoc>, coupling: f64 },

    #[error("invariant is not quantized: residual {residual:.3e}")]
    Unreliable { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable token used in CSV output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonHermitian { .. } => "non_hermitian",
            Error::DegenerateTriangle { .. } => "degenerate_triangle",
            Error::SingularOverlap { .. } => "singular_overlap",
            Error::GapClosure { .. } => "gap_closed",
            Error::MaxEntangled { .. } => "max_entangled",
            Error::ParitySector { .. } => "parity_sector",
            Error::BlockCoupled { .. } => "block_coupled",
            Error::Unreliable { .. } => "unreliable",
            Error::InvalidParameter(_) => "invalid_parameter",
        }
    }

    /// True for failures of the numerics, false for rejected inputs.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::NonHermitian { .. } | Error::InvalidParameter(_) | Error::BlockCoupled { .. })
    }

    /// Fills in the grid location if the error does not carry one yet.
    pub fn located(self, loc: GridLoc) -> Self {
        let fill = |at: Option<GridLoc>| at.or(Some(loc));
        match self {
            Error::DegenerateTriangle { at } => Error::DegenerateTriangle { at: fill(at) },
            Error::SingularOverlap { at, det } => Error::SingularOverlap { at: fill(at), det },
            Error::GapClosure { at, gap } => Error::GapClosure { at: fill(at), gap },
            Error::MaxEntangled { at, norm } => Error::MaxEntangled { at: fill(at), norm },
            Error::ParitySector { at, negative } => Error::ParitySector { at: fill(at), negative },
            Error::BlockCoupled { at, coupling } => Error::BlockCoupled { at: fill(at), coupling },
            other => other,
        }
    }

    pub fn location(&self) -> Option<GridLoc> {
        match self {
            Error::DegenerateTriangle { at }
            | Error::SingularOverlap { at, .. }
            | Error::GapClosure { at, .. }
            | Error::MaxEntangled { at, .. }
            | Error::ParitySector { at, .. }
            | Error::BlockCoupled { at, .. } => *at,
            _ => None,
        }
    }
}
