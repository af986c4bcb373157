use std::collections::BTreeMap;

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::bracket::{bracket_basis, bracket_with};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{complement_basis, rank, LinearSystem};
use crate::scalar::Rational;

use super::{LinearMapWindow, Target};

/// Derivations of one degree on a window, modulo inner derivations.
#[derive(Debug, Clone)]
pub struct DerivationSpaceReport {
    pub algebra: AlgebraKind,
    pub target: Target,
    pub degree: i64,
    pub window: Window,
    pub unknowns: usize,
    pub equations: usize,
    pub derivation_dim: usize,
    pub inner_dim: usize,
    pub outer_dim: usize,
    pub derivation_basis: Vec<LinearMapWindow>,
    /// Canonical representatives of the outer classes.
    pub outer_basis: Vec<LinearMapWindow>,
}

/// Image symbols a degree-`degree` map may send `s` to.
fn image_symbols(
    algebra: AlgebraKind,
    target: Target,
    s: BasisSymbol,
    degree: i64,
) -> Vec<BasisSymbol> {
    let k = s.degree() + degree;
    let mut out = vec![];
    if target == Target::AlgebraValued {
        out.push(BasisSymbol::L(k));
    }
    out.push(BasisSymbol::I(k));
    if k == 0 && target == Target::AlgebraValued {
        out.extend_from_slice(algebra.central_symbols());
    }
    out
}

/// Sort key placing `L_1, L_-1, L_2, L_-2, …, L_0`, then the same for `I`,
/// then central symbols.
fn preference(s: BasisSymbol) -> (u8, i64, i64) {
    let by_index = |m: i64| if m == 0 { (i64::MAX, 0) } else { (m.abs(), -m) };
    match s {
        BasisSymbol::L(m) => (0, by_index(m).0, by_index(m).1),
        BasisSymbol::I(m) => (1, by_index(m).0, by_index(m).1),
        BasisSymbol::C1 => (2, 0, 0),
        BasisSymbol::C2 => (2, 1, 0),
    }
}

/// Solves the derivation law for maps of a fixed degree on a window.
///
/// Unknowns are the image coefficients of every window symbol with
/// `|index| <= N - |degree|`; the law is imposed on every domain pair whose
/// bracket stays in the domain. Inner derivations are `ad L_d` and `ad I_d`
/// (only `ad I_d` for `I`-valued maps) restricted to the domain.
pub fn compute_der_space(
    algebra: AlgebraKind,
    target: Target,
    degree: i64,
    window: Window,
) -> Result<DerivationSpaceReport> {
    let window = window.require(3)?;
    let n = window.bound();
    if degree.abs() > n - 2 {
        return Err(Error::DegreeOutOfRange { degree, bound: n });
    }
    if target == Target::IValued && algebra != AlgebraKind::W {
        return Err(Error::Unsupported(format!(
            "I-valued derivations are defined on W, not {algebra}"
        )));
    }
    let domain_window = Window::new(n - degree.abs())?;
    let mut domain = domain_window.symbols(algebra);
    domain.sort_by_key(|s| preference(*s));

    let mut cols: Vec<(BasisSymbol, BasisSymbol)> = Vec::new();
    for &s in &domain {
        for u in image_symbols(algebra, target, s, degree) {
            cols.push((s, u));
        }
    }
    let col: BTreeMap<(BasisSymbol, BasisSymbol), usize> =
        cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();

    let mut system = LinearSystem::new(cols.len());
    for (a, &x) in domain.iter().enumerate() {
        for &y in &domain[a + 1..] {
            let xy = bracket_basis(x, y, algebra);
            if !xy.in_window(domain_window) {
                continue;
            }
            // Output symbol -> (column -> coefficient).
            let mut rows: BTreeMap<BasisSymbol, Vec<(usize, Rational)>> = BTreeMap::new();
            for (v, c) in xy.terms() {
                for u in image_symbols(algebra, target, v, degree) {
                    rows.entry(u).or_default().push((col[&(v, u)], c.clone()));
                }
            }
            for (src, other, sign) in [(y, x, -1i64), (x, y, 1)] {
                // sign·[other, D(src)]
                for u in image_symbols(algebra, target, src, degree) {
                    for (w, e) in bracket_basis(other, u, algebra).terms() {
                        let v = if sign < 0 { -e } else { e.clone() };
                        rows.entry(w).or_default().push((col[&(src, u)], v));
                    }
                }
            }
            for row in rows.into_values() {
                system.push_row(row);
            }
        }
    }
    let derivations = system.nullspace();

    let generators: Vec<Element> = match target {
        Target::AlgebraValued => vec![Element::l(degree), Element::i(degree)],
        Target::IValued => vec![Element::i(degree)],
    };
    let inner: Vec<Vec<Rational>> = generators
        .iter()
        .map(|g| {
            cols.iter()
                .map(|&(s, u)| {
                    let img = bracket_with(g, &s.into(), |p, q| bracket_basis(p, q, algebra));
                    img.coeff(u)
                })
                .collect()
        })
        .filter(|v: &Vec<Rational>| v.iter().any(|x| *x != Rational::default()))
        .collect();
    let inner_dim = rank(&inner, cols.len());
    debug_assert!(inner
        .iter()
        .all(|v| system.apply(v).iter().all(|x| *x == Rational::default())));

    let order: Vec<usize> = (0..cols.len()).collect();
    let outer = complement_basis(&derivations, &inner, &order);

    let to_map = |v: &[Rational]| -> LinearMapWindow {
        let mut images: BTreeMap<BasisSymbol, Element> =
            domain.iter().map(|s| (*s, Element::zero())).collect();
        for (&(s, u), c) in cols.iter().zip(v) {
            images.get_mut(&s).expect("domain").add_term(u, c.clone());
        }
        LinearMapWindow::from_fn(algebra, window, domain.iter().copied(), |s| {
            images[&s].clone()
        })
        .expect("window-supported images")
    };

    Ok(DerivationSpaceReport {
        algebra,
        target,
        degree,
        window,
        unknowns: cols.len(),
        equations: system.nrows(),
        derivation_dim: derivations.len(),
        inner_dim,
        outer_dim: derivations.len() - inner_dim,
        derivation_basis: derivations.iter().map(|v| to_map(v)).collect(),
        outer_basis: outer.iter().map(|(_, v)| to_map(v)).collect(),
    })
}
