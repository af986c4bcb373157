use std::collections::BTreeMap;

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::bracket::bracket_basis;
use crate::derivations::LinearMapWindow;
use crate::element::Element;
use crate::error::Result;
use crate::linalg::LinearSystem;
use crate::scalar::Rational;

use super::AutomorphismNF;

/// A pair where `f([x,y]) - [f(x), f(y)]` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketViolation {
    pub x: BasisSymbol,
    pub y: BasisSymbol,
    pub defect: Element,
}

#[derive(Debug, Clone, Default)]
pub struct HomomorphismCheck {
    pub pairs_checked: usize,
    /// Pairs whose bracket leaves the window; never truncated, only counted.
    pub skipped: usize,
    pub violations: Vec<BracketViolation>,
}

impl HomomorphismCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f([x,y]) = [f(x), f(y)]` on every domain pair whose bracket stays
/// in the domain.
pub fn verify_homomorphism(map: &LinearMapWindow) -> Result<HomomorphismCheck> {
    let algebra = map.algebra();
    let domain: Vec<BasisSymbol> = map.domain().collect();
    let mut check = HomomorphismCheck::default();
    for (i, &x) in domain.iter().enumerate() {
        for &y in &domain[i + 1..] {
            let xy = bracket_basis(x, y, algebra);
            if xy.symbols().any(|s| map.image(s).is_none()) {
                check.skipped += 1;
                continue;
            }
            check.pairs_checked += 1;
            let fx = map.apply(&x.into())?;
            let fy = map.apply(&y.into())?;
            let defect = map.apply(&xy)? - crate::bracket::bracket(&fx, &fy, algebra)?;
            if !defect.is_zero() {
                check.violations.push(BracketViolation { x, y, defect });
            }
        }
    }
    Ok(check)
}

/// A central completion of an automorphism of W to W~ or W(2,2):
/// `f~(s) = f(s) + corrections[s]` on non-central symbols and
/// `f~(C_i) = central_images[C_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralLift {
    pub central_images: BTreeMap<BasisSymbol, Element>,
    pub corrections: BTreeMap<BasisSymbol, Element>,
    /// Dimension of the affine family of admissible lifts on this window.
    pub free_dim: usize,
}

#[derive(Debug, Clone)]
pub struct AutomorphismReport {
    pub algebra: AlgebraKind,
    pub window: Window,
    pub check: HomomorphismCheck,
    /// `None` on W, and on a central extension when no central assignment works.
    pub lift: Option<CentralLift>,
}

impl AutomorphismReport {
    pub fn passed(&self) -> bool {
        self.check.passed() && (self.algebra == AlgebraKind::W || self.lift.is_some())
    }
}

/// Certifies `f` as a bracket homomorphism on the window. On a central
/// extension, first solves for central corrections and central images that
/// make the lifted map a homomorphism, then checks the lifted map.
pub fn verify_automorphism(
    f: &AutomorphismNF,
    algebra: AlgebraKind,
    window: Window,
) -> Result<AutomorphismReport> {
    let plain: Vec<BasisSymbol> = window
        .symbols(algebra)
        .into_iter()
        .filter(|s| !s.is_central())
        .collect();
    let centrals = algebra.central_symbols();
    let mut images: BTreeMap<BasisSymbol, Element> = BTreeMap::new();
    for &s in &plain {
        images.insert(s, f.image(s)?);
    }

    let lift = if centrals.is_empty() {
        None
    } else {
        solve_lift(&plain, centrals, &images, algebra)
    };

    let mut check = HomomorphismCheck::default();
    let lifted = |s: BasisSymbol| -> Element {
        match &lift {
            Some(l) if s.is_central() => l.central_images[&s].clone(),
            Some(l) => &images[&s] + &l.corrections[&s],
            None if s.is_central() => Element::basis(s),
            None => images[&s].clone(),
        }
    };
    let apply = |x: &Element| -> Element {
        let mut out = Element::zero();
        for (s, c) in x.terms() {
            out += &lifted(s).scale(c);
        }
        out
    };
    for (i, &x) in plain.iter().enumerate() {
        for &y in &plain[i + 1..] {
            let xy = bracket_basis(x, y, algebra);
            if !xy.in_window(window) {
                check.skipped += 1;
                continue;
            }
            check.pairs_checked += 1;
            let rhs = crate::bracket::bracket(&lifted(x), &lifted(y), algebra)?;
            let defect = apply(&xy) - rhs;
            if !defect.is_zero() {
                check.violations.push(BracketViolation { x, y, defect });
            }
        }
    }
    Ok(AutomorphismReport {
        algebra,
        window,
        check,
        lift,
    })
}

fn solve_lift(
    plain: &[BasisSymbol],
    centrals: &[BasisSymbol],
    images: &BTreeMap<BasisSymbol, Element>,
    algebra: AlgebraKind,
) -> Option<CentralLift> {
    let k = centrals.len();
    // Columns: (s, C_j) for each plain symbol, then (C_i, C_j).
    let sources: Vec<BasisSymbol> = plain.iter().chain(centrals).copied().collect();
    let index: BTreeMap<BasisSymbol, usize> =
        sources.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let col = |s: BasisSymbol, j: usize| index[&s] * k + j;
    let mut system = LinearSystem::new(sources.len() * k);
    let mut rhs: Vec<Rational> = Vec::new();
    for (i, &x) in plain.iter().enumerate() {
        for &y in &plain[i + 1..] {
            let xy = bracket_basis(x, y, algebra);
            if xy.symbols().any(|s| !index.contains_key(&s)) {
                continue;
            }
            let target = crate::bracket::bracket(&images[&x], &images[&y], algebra).ok()?;
            for (j, &cj) in centrals.iter().enumerate() {
                system.push_row(xy.terms().map(|(s, c)| (col(s, j), c.clone())));
                rhs.push(target.coeff(cj));
            }
        }
    }
    let x = system.solve(&rhs).ok()?;
    let free_dim = system.ncols() - system.rank();
    let central_part = |s: BasisSymbol| -> Element {
        Element::from_terms(
            centrals
                .iter()
                .enumerate()
                .map(|(j, &cj)| (cj, x[col(s, j)].clone())),
        )
    };
    Some(CentralLift {
        central_images: centrals.iter().map(|&c| (c, central_part(c))).collect(),
        corrections: plain.iter().map(|&s| (s, central_part(s))).collect(),
        free_dim,
    })
}
