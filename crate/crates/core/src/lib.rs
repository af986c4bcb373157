//! Exact computations for the Lie algebra `W` spanned by `L_m`, `I_m`
//! (`[L_m, L_n] = (m-n) L_{m+n}`, `[L_m, I_n] = (m-n) I_{m+n}`, `[I_m, I_n] = 0`),
//! its universal central extension `W~` and the quotient `W(2,2)`.
//!
//! Infinite-dimensional statements are checked on finite index windows
//! `|m| <= N` with exact rational linear algebra: second cohomology,
//! derivations modulo inner derivations, and the automorphism group.

pub mod automorphisms;
pub mod basis;
pub mod bracket;
pub mod cohomology;
pub mod derivations;
pub mod element;
pub mod error;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod suite;

#[cfg(test)]
mod oracle;

pub use automorphisms::{AutomorphismNF, InnerWord, SigmaParams};
pub use basis::{AlgebraKind, BasisSymbol, Window};
pub use bracket::{bracket, bracket_basis, check_jacobi, project, JacobiReport};
pub use cohomology::BilinearFormWindow;
pub use derivations::{LinearMapWindow, Target};
pub use element::{Degree, Element};
pub use error::{Error, Result};
pub use linalg::{nullspace, rank, Infeasible, LinearSystem};
pub use report::{ReportDocument, ResultEntry, Status};
pub use scalar::Rational;
