use thiserror::Error;

use crate::geom::Degeneracy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("points are not in general position: {0}")]
    NotGeneralPosition(Degeneracy),
    #[error("point {index} = ({x}, {y}) exceeds the coordinate limit")]
    CoordinateOutOfRange { index: usize, x: i64, y: i64 },
    #[error("{points} points but {colors} colors")]
    LengthMismatch { points: usize, colors: usize },
    #[error("budget exceeded: estimated {estimated} elementary checks, budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },
    #[error("members do not form an island: point {intruder} lies in their hull")]
    NotAnIsland { intruder: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no block separable with at most {k_max} halfplanes")]
    NotFound { k_max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Work limit for exhaustive routines, counted in elementary membership checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_checks: u128,
}

impl Budget {
    pub const DEFAULT_CHECKS: u128 = 100_000_000;

    pub fn new(max_checks: u128) -> Self {
        Budget { max_checks }
    }

    pub fn unlimited() -> Self {
        Budget { max_checks: u128::MAX }
    }

    /// Fails when a routine estimated to need `estimated` checks would overrun the limit.
    pub fn charge(&self, estimated: u128) -> Result<()> {
        if estimated > self.max_checks {
            Err(Error::BudgetExceeded { estimated, budget: self.max_checks })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_checks: Self::DEFAULT_CHECKS }
    }
}
