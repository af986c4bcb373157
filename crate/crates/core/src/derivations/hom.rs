use std::collections::BTreeMap;

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::element::Element;
use crate::error::Result;
use crate::linalg::LinearSystem;
use crate::scalar::int;

use super::LinearMapWindow;

/// Which families of equations the solve imposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomConstraints {
    /// `[L_n, f(I_m)] = f([L_n, I_m])`.
    pub witt_equivariance: bool,
    /// `f([I_a, I_k]) = 0 = [I_a, f(I_k)]`.
    pub ideal_compatibility: bool,
}

impl Default for HomConstraints {
    fn default() -> Self {
        HomConstraints {
            witt_equivariance: true,
            ideal_compatibility: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HomReport {
    pub window: Window,
    pub unknowns: usize,
    pub equations: usize,
    pub dimension: usize,
    /// Each basis map sends `I_m` into the span of the `L_j`.
    pub basis: Vec<LinearMapWindow>,
}

/// Module maps `f: I → L` on a window, with both constraint families.
pub fn compute_hom_i_to_l(window: Window) -> Result<HomReport> {
    compute_hom_i_to_l_with(window, HomConstraints::default())
}

/// Unknowns `x[m][j]` with `f(I_m) = Σ_j x[m][j] L_j`, `|m|, |j| <= N`.
/// Equations are kept only when every index they mention lies in the window.
pub fn compute_hom_i_to_l_with(window: Window, constraints: HomConstraints) -> Result<HomReport> {
    let window = window.require(3)?;
    let n = window.bound();
    let size = (2 * n + 1) as usize;
    let col = |m: i64, j: i64| ((m + n) as usize) * size + (j + n) as usize;
    let inside = |k: i64| k.abs() <= n;
    let mut system = LinearSystem::new(size * size);

    if constraints.witt_equivariance {
        // Coefficient of L_t in [L_p, f(I_m)] - (p - m) f(I_{p+m}):
        // (2p - t) x[m][t-p] - (p - m) x[p+m][t].
        for p in -n..=n {
            for m in -n..=n {
                if !inside(p + m) {
                    continue;
                }
                for t in -n..=n {
                    if !inside(t - p) {
                        continue;
                    }
                    system.push_row([(col(m, t - p), int(2 * p - t)), (col(p + m, t), int(m - p))]);
                }
            }
        }
    }
    if constraints.ideal_compatibility {
        // [I_a, f(I_k)] = Σ_j (a - j) x[k][j] I_{a+j} must vanish.
        for a in -n..=n {
            for k in -n..=n {
                for j in -n..=n {
                    if inside(a + j) {
                        system.push_row([(col(k, j), int(a - j))]);
                    }
                }
            }
        }
    }

    let kernel = system.nullspace();
    let basis = kernel
        .iter()
        .map(|v| {
            let images: BTreeMap<i64, Element> = (-n..=n)
                .map(|m| {
                    let terms = (-n..=n).map(|j| (BasisSymbol::L(j), v[col(m, j)].clone()));
                    (m, Element::from_terms(terms))
                })
                .collect();
            LinearMapWindow::from_fn(AlgebraKind::W, window, (-n..=n).map(BasisSymbol::I), |s| {
                images[&s.degree()].clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomReport {
        window,
        unknowns: size * size,
        equations: system.nrows(),
        dimension: kernel.len(),
        basis,
    })
}
