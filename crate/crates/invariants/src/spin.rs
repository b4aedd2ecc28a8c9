use std::fmt;

use topoinv_bz::{Error, Result};

use crate::winding::WindingResult;

/// `ν_S = (ν↑ − ν↓)/2`, stored exactly as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinChern {
    twice: i64,
}

impl SpinChern {
    pub fn from_windings(up: i64, down: i64) -> Self {
        SpinChern { twice: up - down }
    }

    /// Numerator and denominator in lowest terms.
    pub fn ratio(&self) -> (i64, i64) {
        if self.twice % 2 == 0 {
            (self.twice / 2, 1)
        } else {
            (self.twice, 2)
        }
    }

    pub fn is_integer(&self) -> bool {
        self.twice % 2 == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// `ν_S mod 2` for integer values.
    pub fn z2(&self) -> Option<u8> {
        self.is_integer().then(|| (self.twice / 2).rem_euclid(2) as u8)
    }
}

impl fmt::Display for SpinChern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ratio() {
            (n, 1) => write!(f, "{n}"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

pub fn spin_chern(up: &WindingResult, down: &WindingResult) -> Result<SpinChern> {
    for w in [up, down] {
        if !w.is_reliable() {
            return Err(Error::Unreliable { residual: w.residual });
        }
    }
    Ok(SpinChern::from_windings(up.value, down.value))
}
