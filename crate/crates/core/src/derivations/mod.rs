//! Derivations of W and W~, windowed derivation spaces modulo inner
//! derivations, and the vanishing of `Hom_W(I, L)`.

mod hom;
mod map;
mod space;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::bracket::{bracket, bracket_basis};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::scalar::{int, Rational};

pub use hom::{compute_hom_i_to_l, compute_hom_i_to_l_with, HomConstraints, HomReport};
pub use map::LinearMapWindow;
pub use space::{compute_der_space, DerivationSpaceReport};

/// Codomain of a derivation of W: the ideal `I` or the algebra itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    #[serde(rename = "i")]
    IValued,
    #[serde(rename = "algebra")]
    AlgebraValued,
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "i-valued" | "ideal" => Ok(Target::IValued),
            "algebra" | "algebra-valued" | "adjoint" => Ok(Target::AlgebraValued),
            other => Err(Error::parse(0, format!("unknown target `{other}`"))),
        }
    }
}

/// `D([x,y]) - [x, D(y)] + [y, D(x)]`; zero iff the pair obeys the derivation law.
///
/// For `I`-valued maps the module action is the bracket of W, and every
/// image must lie in `I`.
pub fn derivation_defect(
    d: &LinearMapWindow,
    x: &Element,
    y: &Element,
    target: Target,
) -> Result<Element> {
    let algebra = d.algebra();
    if target == Target::IValued {
        if algebra != AlgebraKind::W {
            return Err(Error::Unsupported(format!(
                "I-valued derivations are defined on W, not {algebra}"
            )));
        }
        if !d.is_i_valued() {
            return Err(Error::Unsupported("map has images outside I".into()));
        }
    }
    let xy = bracket(x, y, algebra)?;
    let mut out = d.apply(&xy)?;
    out -= &bracket(x, &d.apply(y)?, algebra)?;
    out += &bracket(y, &d.apply(x)?, algebra)?;
    Ok(out)
}

/// The outer derivation `D(L_m) = 0`, `D(I_m) = I_m` on the window; on W~ it
/// also fixes `C2` and kills `C1`.
pub fn make_outer_derivation(algebra: AlgebraKind, window: Window) -> Result<LinearMapWindow> {
    if algebra == AlgebraKind::W22 {
        return Err(Error::Unsupported(
            "D does not preserve the merged center of W(2,2)".into(),
        ));
    }
    LinearMapWindow::from_fn(algebra, window, window.symbols(algebra), |s| match s {
        BasisSymbol::I(_) | BasisSymbol::C2 => Element::basis(s),
        _ => Element::zero(),
    })
}

/// Exact proof that a map is not inner: weights on image coordinates `(s, u)`
/// that annihilate every `ad w` yet pair nontrivially with the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonInnerCertificate {
    pub weights: Vec<((BasisSymbol, BasisSymbol), Rational)>,
}

impl NonInnerCertificate {
    /// Re-checks against the bracket table over every window generator.
    pub fn verify(&self, d: &LinearMapWindow, target: Target) -> bool {
        let algebra = d.algebra();
        let pair = |img: &dyn Fn(BasisSymbol) -> Element| -> Rational {
            self.weights
                .iter()
                .map(|((s, u), w)| w * img(*s).coeff(*u))
                .sum()
        };
        let generators_vanish = inner_generators(algebra, d.window(), target)
            .into_iter()
            .all(|g| pair(&|s| bracket_basis(g, s, algebra)).is_zero());
        let on_d = pair(&|s| d.image(s).cloned().unwrap_or_default());
        generators_vanish && !on_d.is_zero()
    }
}

fn inner_generators(algebra: AlgebraKind, window: Window, target: Target) -> Vec<BasisSymbol> {
    window
        .symbols(algebra)
        .into_iter()
        .filter(|s| !s.is_central())
        .filter(|s| target == Target::AlgebraValued || matches!(s, BasisSymbol::I(_)))
        .collect()
}

/// Solves `ad w = D` on D's domain for `w` in the window (`w ∈ I` for
/// `I`-valued targets), or certifies that no such `w` exists.
pub fn solve_inner(
    d: &LinearMapWindow,
    target: Target,
) -> std::result::Result<Element, NonInnerCertificate> {
    let algebra = d.algebra();
    let gens = inner_generators(algebra, d.window(), target);
    let mut coords: BTreeMap<(BasisSymbol, BasisSymbol), Vec<(usize, Rational)>> = BTreeMap::new();
    for s in d.domain() {
        for (j, &g) in gens.iter().enumerate() {
            for (u, c) in bracket_basis(g, s, algebra).terms() {
                coords.entry((s, u)).or_default().push((j, c.clone()));
            }
        }
        for (u, _) in d.image(s).expect("domain symbol").terms() {
            coords.entry((s, u)).or_default();
        }
    }
    let mut system = LinearSystem::new(gens.len());
    let mut rhs = Vec::new();
    let keys: Vec<_> = coords.keys().copied().collect();
    for (key, row) in coords {
        system.push_row(row);
        rhs.push(d.image(key.0).expect("domain symbol").coeff(key.1));
    }
    match system.solve(&rhs) {
        Ok(x) => Ok(Element::from_terms(gens.into_iter().zip(x))),
        Err(cert) => Err(NonInnerCertificate {
            weights: cert
                .weights
                .into_iter()
                .map(|(row, w)| (keys[row], w))
                .collect(),
        }),
    }
}

/// Outcome of the degree-0 reduction for `W_0 = span{L_0, I_0}` acting on `C I_m`.
#[derive(Debug, Clone)]
pub struct W0ReductionReport {
    pub m: i64,
    /// Dimension of derivations `φ(L_0) = a I_m`, `φ(I_0) = b I_m`.
    pub solution_dim: usize,
    /// Every solution has `b = 0`.
    pub b_forced_zero: bool,
    /// For each basis solution: `(a, E_m)` with `φ = [·, E_m]` on `W_0`.
    pub witnesses: Vec<(Rational, Element)>,
    pub all_inner: bool,
}

/// `E_m = -(a/m) I_m`, the element whose inner derivation realises `φ(L_0) = a I_m`.
pub fn w0_inner_element(m: i64, a: &Rational) -> Result<Element> {
    if m == 0 {
        return Err(Error::Unsupported("the reduction needs m != 0".into()));
    }
    Ok(Element::i(m).scale(&(-a / int(m))))
}

/// Derivations from `W_0` into `C I_m` (`m ≠ 0`) are all inner.
pub fn verify_w0_reduction(m: i64) -> Result<W0ReductionReport> {
    if m == 0 {
        return Err(Error::Unsupported("the reduction needs m != 0".into()));
    }
    let w = AlgebraKind::W;
    let im = Element::i(m);
    let w0 = [Element::l(0), Element::i(0)];
    // Unknowns (a, b) with φ(L_0) = a I_m, φ(I_0) = b I_m.
    let phi_basis = |k: usize| -> [Element; 2] {
        let mut v = [Element::zero(), Element::zero()];
        v[k] = im.clone();
        v
    };
    let mut rows: BTreeMap<BasisSymbol, Vec<(usize, Rational)>> = BTreeMap::new();
    for (p, x) in w0.iter().enumerate() {
        for (q, y) in w0.iter().enumerate().skip(p + 1) {
            let xy = bracket(x, y, w)?;
            for k in 0..2 {
                let phi = phi_basis(k);
                let apply = |e: &Element| -> Element {
                    let mut out = Element::zero();
                    out += &phi[0].scale(&e.coeff(BasisSymbol::L(0)));
                    out += &phi[1].scale(&e.coeff(BasisSymbol::I(0)));
                    out
                };
                let mut defect = apply(&xy);
                defect -= &bracket(x, &phi[q], w)?;
                defect += &bracket(y, &phi[p], w)?;
                for (u, c) in defect.terms() {
                    rows.entry(u).or_default().push((k, c.clone()));
                }
            }
        }
    }
    let mut system = LinearSystem::new(2);
    for row in rows.into_values() {
        system.push_row(row);
    }
    let kernel = system.nullspace();
    let b_forced_zero = kernel.iter().all(|v| v[1].is_zero());
    let mut witnesses = Vec::new();
    let mut all_inner = true;
    for v in &kernel {
        let e = w0_inner_element(m, &v[0])?;
        let realised = bracket(&w0[0], &e, w)? == im.scale(&v[0])
            && bracket(&w0[1], &e, w)? == im.scale(&v[1]);
        all_inner &= realised;
        witnesses.push((v[0].clone(), e));
    }
    Ok(W0ReductionReport {
        m,
        solution_dim: kernel.len(),
        b_forced_zero,
        witnesses,
        all_inner,
    })
}
