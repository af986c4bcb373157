use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A basis vector of W, W~ or W(2,2).
///
/// The derived order is the fixed total order used for form storage and
/// matrix columns: every `L(m)` by index, then every `I(m)` by index, then
/// `C1`, then `C2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisSymbol {
    L(i64),
    I(i64),
    C1,
    C2,
}

impl BasisSymbol {
    /// Z-grading: `deg L(m) = deg I(m) = m`, central symbols sit in degree 0.
    pub fn degree(self) -> i64 {
        match self {
            BasisSymbol::L(m) | BasisSymbol::I(m) => m,
            BasisSymbol::C1 | BasisSymbol::C2 => 0,
        }
    }

    pub fn index(self) -> Option<i64> {
        match self {
            BasisSymbol::L(m) | BasisSymbol::I(m) => Some(m),
            BasisSymbol::C1 | BasisSymbol::C2 => None,
        }
    }

    pub fn is_central(self) -> bool {
        matches!(self, BasisSymbol::C1 | BasisSymbol::C2)
    }

    /// Text form inside `algebra`; W(2,2) prints its central symbol as `C`.
    pub fn to_text(self, algebra: AlgebraKind) -> String {
        match (self, algebra) {
            (BasisSymbol::C1, AlgebraKind::W22) => "C".to_string(),
            _ => self.to_string(),
        }
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::L(m) => write!(f, "L[{m}]"),
            BasisSymbol::I(m) => write!(f, "I[{m}]"),
            BasisSymbol::C1 => f.write_str("C1"),
            BasisSymbol::C2 => f.write_str("C2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    /// Witt algebra ⋉ its adjoint module; centerless.
    W,
    /// Universal central extension of W, with central `C1`, `C2`.
    WTilde,
    /// W~ with `C1 = C2`; the merged central symbol is stored as `C1`.
    W22,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 3] = [AlgebraKind::W, AlgebraKind::WTilde, AlgebraKind::W22];

    pub fn central_symbols(self) -> &'static [BasisSymbol] {
        match self {
            AlgebraKind::W => &[],
            AlgebraKind::WTilde => &[BasisSymbol::C1, BasisSymbol::C2],
            AlgebraKind::W22 => &[BasisSymbol::C1],
        }
    }

    pub fn contains(self, s: BasisSymbol) -> bool {
        !s.is_central() || self.central_symbols().contains(&s)
    }

    pub fn check(self, s: BasisSymbol) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::InvalidSymbol {
                symbol: s,
                algebra: self,
            })
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            AlgebraKind::W => "w",
            AlgebraKind::WTilde => "wtilde",
            AlgebraKind::W22 => "w22",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::W => "W",
            AlgebraKind::WTilde => "W~",
            AlgebraKind::W22 => "W(2,2)",
        })
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "w" => Ok(AlgebraKind::W),
            "wtilde" | "w~" => Ok(AlgebraKind::WTilde),
            "w22" | "w(2,2)" => Ok(AlgebraKind::W22),
            other => Err(Error::parse(0, format!("unknown algebra `{other}`"))),
        }
    }
}

/// Truncation of the graded basis to `|index| <= bound`, plus central symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window(i64);

impl Window {
    /// Smallest bound accepted by the linear solvers.
    pub const SOLVER_MIN: i64 = 2;

    pub fn new(bound: i64) -> Result<Self> {
        if bound < 1 {
            return Err(Error::WindowTooSmall { got: bound, min: 1 });
        }
        Ok(Window(bound))
    }

    pub fn at_least(bound: i64, min: i64) -> Result<Self> {
        if bound < min {
            return Err(Error::WindowTooSmall { got: bound, min });
        }
        Window::new(bound)
    }

    pub fn bound(self) -> i64 {
        self.0
    }

    pub fn require(self, min: i64) -> Result<Self> {
        Window::at_least(self.0, min)
    }

    pub fn contains_index(self, m: i64) -> bool {
        m.abs() <= self.0
    }

    /// Central symbols are always inside a window.
    pub fn contains(self, s: BasisSymbol) -> bool {
        s.index().is_none_or(|m| self.contains_index(m))
    }

    pub fn check(self, s: BasisSymbol) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::OutOfWindow {
                symbol: s,
                bound: self.0,
            })
        }
    }

    /// Every basis symbol of `algebra` inside the window, in the fixed order.
    pub fn symbols(self, algebra: AlgebraKind) -> Vec<BasisSymbol> {
        let n = self.0;
        (-n..=n)
            .map(BasisSymbol::L)
            .chain((-n..=n).map(BasisSymbol::I))
            .chain(algebra.central_symbols().iter().copied())
            .collect()
    }

    /// Window symbols of a single degree.
    pub fn symbols_of_degree(self, algebra: AlgebraKind, degree: i64) -> Vec<BasisSymbol> {
        self.symbols(algebra)
            .into_iter()
            .filter(|s| s.degree() == degree)
            .collect()
    }
}
