use thiserror::Error;

use crate::basis::{AlgebraKind, BasisSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {symbol} is not a basis symbol of {algebra}")]
    InvalidSymbol {
        symbol: BasisSymbol,
        algebra: AlgebraKind,
    },
    #[error("{symbol} lies outside the window |index| <= {bound}")]
    OutOfWindow { symbol: BasisSymbol, bound: i64 },
    #[error("window bound {got} is below the minimum {min}")]
    WindowTooSmall { got: i64, min: i64 },
    #[error("degree {degree} is out of range for window {bound}")]
    DegreeOutOfRange { degree: i64, bound: i64 },
    #[error("cannot project from {from} to {to}")]
    UnsupportedProjection { from: AlgebraKind, to: AlgebraKind },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("not a 2-cocycle: defect {defect} at ({x}, {y}, {z})")]
    NotCocycle {
        x: BasisSymbol,
        y: BasisSymbol,
        z: BasisSymbol,
        defect: String,
    },
    #[error("form is not homogeneous of degree {expected}")]
    WrongDegree { expected: i64 },
    #[error("automorphism parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i64),
    #[error("inner factors exp(k ad I_m) require m != 0; fold m = 0 into lambda")]
    ZeroInnerIndex,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
