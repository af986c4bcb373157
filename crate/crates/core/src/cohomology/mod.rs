//! 2-cocycles and 2-coboundaries of W, the windowed second cohomology, and
//! the invariant-form space `B^L(I)` of the adjoint module.

mod bgv;
mod form;
mod h2;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::bracket::{bracket, bracket_basis};
use crate::element::{Degree, Element};
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::scalar::{self, int, Rational};

pub use bgv::{bgv_equation, compute_bgv_window, BgvReport};
pub use form::{coboundary_of, make_alpha, make_beta, BilinearFormWindow, Functional};
pub use h2::{compute_h2_window, H2Report};

/// Left-hand side of the cocycle identity `ψ([x,y],z) + ψ([y,z],x) + ψ([z,x],y)`.
///
/// Every bracket and every evaluation must stay inside the form's window.
pub fn cocycle_defect(
    psi: &BilinearFormWindow,
    x: &Element,
    y: &Element,
    z: &Element,
) -> Result<Rational> {
    let algebra = psi.algebra();
    let xy = bracket(x, y, algebra)?;
    let yz = bracket(y, z, algebra)?;
    let zx = bracket(z, x, algebra)?;
    Ok(psi.eval(&xy, z)? + psi.eval(&yz, x)? + psi.eval(&zx, y)?)
}

/// Strictly increasing basis triples whose three brackets stay in the window,
/// optionally restricted to one total degree.
pub(crate) fn admissible_triples(
    algebra: AlgebraKind,
    window: Window,
    degree: Option<i64>,
) -> Vec<(BasisSymbol, BasisSymbol, BasisSymbol)> {
    let symbols = window.symbols(algebra);
    let inside = |s, t| bracket_basis(s, t, algebra).in_window(window);
    let mut out = Vec::new();
    for (a, &x) in symbols.iter().enumerate() {
        for (b, &y) in symbols.iter().enumerate().skip(a + 1) {
            if !inside(x, y) {
                continue;
            }
            for &z in &symbols[b + 1..] {
                if degree.is_some_and(|d| x.degree() + y.degree() + z.degree() != d) {
                    continue;
                }
                if inside(y, z) && inside(z, x) {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct CocycleCheck {
    pub triples_checked: usize,
    pub violations: Vec<((BasisSymbol, BasisSymbol, BasisSymbol), Rational)>,
}

impl CocycleCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the cocycle identity on every admissible triple of the window.
pub fn check_cocycle(psi: &BilinearFormWindow) -> CocycleCheck {
    let triples = admissible_triples(psi.algebra(), psi.window(), None);
    let mut violations = Vec::new();
    for &(x, y, z) in &triples {
        let d = cocycle_defect(psi, &x.into(), &y.into(), &z.into())
            .expect("admissible triples stay in the window");
        if !d.is_zero() {
            violations.push(((x, y, z), d));
        }
    }
    CocycleCheck {
        triples_checked: triples.len(),
        violations,
    }
}

/// A degree-0 cocycle written as `a·α + b·β + ψ_f + residual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleDecomposition {
    pub alpha_coeff: Rational,
    pub beta_coeff: Rational,
    /// Values `f(L_0)` and `f(I_0)` of the coboundary part.
    pub coboundary_function: Functional,
    pub residual: BilinearFormWindow,
}

impl CocycleDecomposition {
    pub fn reconstruct(&self) -> Result<BilinearFormWindow> {
        let window = self.residual.window();
        let psi_f = coboundary_of(AlgebraKind::W, window, &self.coboundary_function)?;
        Ok(self
            .residual
            .add_scaled(&self.alpha_coeff, &make_alpha(window))
            .add_scaled(&self.beta_coeff, &make_beta(window))
            .add_scaled(&int(1), &psi_f))
    }

    pub fn in_span(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Writes a degree-0 cocycle of W in terms of `α`, `β` and the coboundaries of
/// `L_0^*`, `I_0^*`.
///
/// The four coefficients are pinned by the values at `(L_1,L_-1)`,
/// `(L_1,I_-1)`, `(L_2,L_-2)`, `(L_2,I_-2)`; the residual is whatever that
/// combination misses, so it vanishes exactly when `ψ` is in the span.
pub fn decompose_cocycle(psi: &BilinearFormWindow) -> Result<CocycleDecomposition> {
    use BasisSymbol::{I, L};
    if psi.algebra() != AlgebraKind::W {
        return Err(Error::Unsupported(format!(
            "cocycle decomposition is defined for W, not {}",
            psi.algebra()
        )));
    }
    let window = psi.window().require(Window::SOLVER_MIN)?;
    if let Some(((x, y, z), d)) = check_cocycle(psi).violations.into_iter().next() {
        return Err(Error::NotCocycle {
            x,
            y,
            z,
            defect: scalar::format(&d),
        });
    }
    match psi.degree() {
        Degree::Zero | Degree::Homogeneous(0) => {}
        _ => return Err(Error::WrongDegree { expected: 0 }),
    }
    let alpha = make_alpha(window);
    let beta = make_beta(window);
    let cob = |u: BasisSymbol| coboundary_of(AlgebraKind::W, window, &[(u, int(1))].into());
    let generators = [alpha, beta, cob(L(0))?, cob(I(0))?];
    let anchors = [(L(1), L(-1)), (L(1), I(-1)), (L(2), L(-2)), (L(2), I(-2))];
    let mut system = LinearSystem::new(generators.len());
    let mut rhs = Vec::new();
    for (s, t) in anchors {
        system.push_row(
            generators
                .iter()
                .enumerate()
                .map(|(k, g)| (k, g.value_unchecked(s, t))),
        );
        rhs.push(psi.value_unchecked(s, t));
    }
    let coeffs = system.solve(&rhs).expect("anchor system is invertible");
    let mut residual = psi.clone();
    for (c, g) in coeffs.iter().zip(&generators) {
        residual = residual.add_scaled(&-c, g);
    }
    let mut f = Functional::new();
    for (u, c) in [(L(0), &coeffs[2]), (I(0), &coeffs[3])] {
        if !c.is_zero() {
            f.insert(u, c.clone());
        }
    }
    Ok(CocycleDecomposition {
        alpha_coeff: coeffs[0].clone(),
        beta_coeff: coeffs[1].clone(),
        coboundary_function: f,
        residual,
    })
}

/// Exact proof that a form is not a coboundary: weights `w_p` on window pairs
/// with `Σ w_p ψ_f(p) = 0` for every functional `f` but `Σ w_p ψ(p) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonCoboundaryCertificate {
    pub weights: Vec<((BasisSymbol, BasisSymbol), Rational)>,
}

impl NonCoboundaryCertificate {
    /// Re-checks the certificate from the bracket table, without the solver.
    pub fn verify(&self, psi: &BilinearFormWindow) -> bool {
        let algebra = psi.algebra();
        let mut on_functionals: BTreeMap<BasisSymbol, Rational> = BTreeMap::new();
        let mut on_psi = Rational::zero();
        for ((s, t), w) in &self.weights {
            for (u, c) in bracket_basis(*s, *t, algebra).terms() {
                *on_functionals.entry(u).or_insert_with(Rational::zero) += w * c;
            }
            on_psi += w * psi.value_unchecked(*s, *t);
        }
        on_functionals.values().all(Zero::is_zero) && !on_psi.is_zero()
    }
}

/// Finds `f` with `ψ = ψ_f` on every window pair whose bracket stays in the
/// window, or a certificate that none exists.
pub fn solve_coboundary(
    psi: &BilinearFormWindow,
) -> std::result::Result<Functional, NonCoboundaryCertificate> {
    let algebra = psi.algebra();
    let window = psi.window();
    let unknowns = window.symbols(algebra);
    let col: BTreeMap<BasisSymbol, usize> =
        unknowns.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let mut system = LinearSystem::new(unknowns.len());
    let mut rhs = Vec::new();
    let mut pairs = Vec::new();
    for (k, &s) in unknowns.iter().enumerate() {
        for &t in &unknowns[k + 1..] {
            let b = bracket_basis(s, t, algebra);
            if !b.in_window(window) {
                continue;
            }
            system.push_row(b.terms().map(|(u, c)| (col[&u], c.clone())));
            rhs.push(psi.value_unchecked(s, t));
            pairs.push((s, t));
        }
    }
    match system.solve(&rhs) {
        Ok(x) => Ok(unknowns
            .into_iter()
            .zip(x)
            .filter(|(_, v)| !v.is_zero())
            .collect()),
        Err(cert) => Err(NonCoboundaryCertificate {
            weights: cert
                .weights
                .into_iter()
                .map(|(row, w)| (pairs[row], w))
                .collect(),
        }),
    }
}
