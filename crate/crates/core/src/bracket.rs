//! Bracket tables of W, W~ and W(2,2), the covering projections, and a
//! brute-force Jacobi checker.

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{int, virasoro_coefficient};

/// Bracket of two basis symbols. Both symbols must belong to `algebra`.
///
/// `[L_m, L_n] = (m-n) L_{m+n} + δ_{m+n,0} (m³-m)/12 C1` and
/// `[L_m, I_n] = (m-n) I_{m+n} + δ_{m+n,0} (m³-m)/12 C2`; W drops the central
/// terms and W(2,2) sends both to its single central symbol.
pub fn bracket_basis(x: BasisSymbol, y: BasisSymbol, algebra: AlgebraKind) -> Element {
    use BasisSymbol::*;
    match (x, y) {
        (L(m), L(n)) => {
            let mut out = Element::term(int(m - n), L(m + n));
            if m + n == 0 && algebra != AlgebraKind::W {
                out.add_term(C1, virasoro_coefficient(m));
            }
            out
        }
        (L(m), I(n)) => {
            let mut out = Element::term(int(m - n), I(m + n));
            let central = match algebra {
                AlgebraKind::W => None,
                AlgebraKind::WTilde => Some(C2),
                AlgebraKind::W22 => Some(C1),
            };
            if let (true, Some(c)) = (m + n == 0, central) {
                out.add_term(c, virasoro_coefficient(m));
            }
            out
        }
        (I(_), L(_)) => -bracket_basis(y, x, algebra),
        _ => Element::zero(),
    }
}

/// Bilinear extension of `bracket_basis`.
pub fn bracket(x: &Element, y: &Element, algebra: AlgebraKind) -> Result<Element> {
    x.validate(algebra)?;
    y.validate(algebra)?;
    Ok(bracket_with(x, y, |s, t| bracket_basis(s, t, algebra)))
}

pub(crate) fn bracket_with<F>(x: &Element, y: &Element, table: F) -> Element
where
    F: Fn(BasisSymbol, BasisSymbol) -> Element,
{
    let mut out = Element::zero();
    for (s, a) in x.terms() {
        for (t, b) in y.terms() {
            let st = table(s, t);
            if !st.is_zero() {
                out += &st.scale(&(a * b));
            }
        }
    }
    out
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]` under an arbitrary basis table.
pub fn jacobi_sum_with<F>(x: &Element, y: &Element, z: &Element, table: F) -> Element
where
    F: Fn(BasisSymbol, BasisSymbol) -> Element,
{
    let br = |a: &Element, b: &Element| bracket_with(a, b, &table);
    let mut out = br(&br(x, y), z);
    out += &br(&br(y, z), x);
    out += &br(&br(z, x), y);
    out
}

/// Applies the covering maps W~ → W(2,2) → W (and their composite W~ → W).
pub fn project(x: &Element, from: AlgebraKind, to: AlgebraKind) -> Result<Element> {
    use AlgebraKind::*;
    let merge = match (from, to) {
        (WTilde, W22) => true,
        (WTilde, W) | (W22, W) => false,
        _ => return Err(Error::UnsupportedProjection { from, to }),
    };
    x.validate(from)?;
    Ok(Element::from_terms(x.terms().filter_map(|(s, c)| {
        match (s.is_central(), merge) {
            (false, _) => Some((s, c.clone())),
            (true, true) => Some((BasisSymbol::C1, c.clone())),
            (true, false) => None,
        }
    })))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (BasisSymbol, BasisSymbol, BasisSymbol),
    pub value: Element,
}

#[derive(Debug, Clone)]
pub struct JacobiReport {
    pub symbols: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    /// Pairs where the table is not alternating.
    pub antisymmetry_violations: Vec<(BasisSymbol, BasisSymbol)>,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.antisymmetry_violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&JacobiViolation> {
        self.violations.first()
    }
}

/// Checks the Jacobi identity on every basis triple of the window.
///
/// Alternation is checked on all ordered pairs; given alternation the Jacobi
/// sum is alternating too, so strictly increasing triples cover every ordered
/// triple. Brackets are evaluated in the full algebra, never truncated.
pub fn check_jacobi(algebra: AlgebraKind, window: Window) -> JacobiReport {
    check_jacobi_with(&window.symbols(algebra), |s, t| {
        bracket_basis(s, t, algebra)
    })
}

pub fn check_jacobi_with<F>(symbols: &[BasisSymbol], table: F) -> JacobiReport
where
    F: Fn(BasisSymbol, BasisSymbol) -> Element,
{
    let mut report = JacobiReport {
        symbols: symbols.len(),
        pairs_checked: 0,
        triples_checked: 0,
        antisymmetry_violations: Vec::new(),
        violations: Vec::new(),
    };
    for &s in symbols {
        for &t in symbols {
            report.pairs_checked += 1;
            let sum = table(s, t) + table(t, s);
            if !sum.is_zero() || (s == t && !table(s, s).is_zero()) {
                report.antisymmetry_violations.push((s, t));
            }
        }
    }
    let elems: Vec<Element> = symbols.iter().map(|&s| Element::basis(s)).collect();
    for a in 0..symbols.len() {
        for b in a + 1..symbols.len() {
            let xy = table(symbols[a], symbols[b]);
            for c in b + 1..symbols.len() {
                report.triples_checked += 1;
                let (x, y, z) = (&elems[a], &elems[b], &elems[c]);
                let mut sum = bracket_with(&xy, z, &table);
                sum += &bracket_with(&bracket_with(y, z, &table), x, &table);
                sum += &bracket_with(&bracket_with(z, x, &table), y, &table);
                if !sum.is_zero() {
                    report.violations.push(JacobiViolation {
                        triple: (symbols[a], symbols[b], symbols[c]),
                        value: sum,
                    });
                }
            }
        }
    }
    report
}

/// Homogeneity of the bracket: `deg [x, y] = deg x + deg y` whenever nonzero.
pub fn bracket_respects_grading(x: BasisSymbol, y: BasisSymbol, algebra: AlgebraKind) -> bool {
    let b = bracket_basis(x, y, algebra);
    b.symbols().all(|s| s.degree() == x.degree() + y.degree()) || b.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn bracket_examples() {
        let w = AlgebraKind::W;
        assert_eq!(
            bracket(&Element::l(1), &Element::l(-1), w).unwrap(),
            Element::l(0).scale(&int(2))
        );
        assert_eq!(
            bracket(&Element::l(2), &Element::l(-2), AlgebraKind::WTilde).unwrap(),
            Element::l(0).scale(&int(4)) + Element::c1().scale(&ratio(1, 2))
        );
        assert!(bracket(&Element::i(3), &Element::i(5), w)
            .unwrap()
            .is_zero());
        assert_eq!(
            bracket(&Element::l(3), &Element::i(-3), AlgebraKind::W22).unwrap(),
            Element::i(0).scale(&int(6)) + Element::c1().scale(&int(2))
        );
    }

    #[test]
    fn invalid_symbols_are_rejected() {
        assert!(bracket(&Element::c2(), &Element::l(1), AlgebraKind::W22).is_err());
        assert!(bracket(&Element::c1(), &Element::l(1), AlgebraKind::W).is_err());
    }

    #[test]
    fn jacobi_holds_in_all_three_algebras() {
        let window = Window::new(5).unwrap();
        for algebra in AlgebraKind::ALL {
            let r = check_jacobi(algebra, window);
            assert!(r.passed(), "{algebra}: {:?}", r.first_violation());
            assert!(r.triples_checked > 0);
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        use BasisSymbol::L;
        // The true value is [L1, L2] = -L3; flip its sign.
        let table = |s: BasisSymbol, t: BasisSymbol| match (s, t) {
            (L(1), L(2)) => Element::l(3),
            (L(2), L(1)) => -Element::l(3),
            _ => bracket_basis(s, t, AlgebraKind::W),
        };
        let r = check_jacobi_with(&Window::new(3).unwrap().symbols(AlgebraKind::W), table);
        assert!(!r.passed());
        assert!(r.antisymmetry_violations.is_empty());
        // Hand expansion: [L3,L-3] + 5[L-1,L1] - 4[L-2,L2] = (6 - 10 + 16) L0.
        let hit = r
            .violations
            .iter()
            .find(|v| v.triple == (L(-3), L(1), L(2)))
            .expect("violation at {L1, L2, L-3}");
        assert_eq!(hit.value, Element::l(0).scale(&int(12)));
    }

    #[test]
    fn projection_examples() {
        let x = Element::c1().scale(&int(2)) + Element::c2() + Element::l(0);
        let y = project(&x, AlgebraKind::WTilde, AlgebraKind::W22).unwrap();
        assert_eq!(y, Element::c1().scale(&int(3)) + Element::l(0));
        assert_eq!(y.to_text(AlgebraKind::W22), "L[0] + 3*C");
        assert!(project(&Element::c1(), AlgebraKind::WTilde, AlgebraKind::W)
            .unwrap()
            .is_zero());
        let z = Element::l(3) - Element::i(2);
        assert_eq!(
            project(&z, AlgebraKind::WTilde, AlgebraKind::W22).unwrap(),
            z
        );
        assert!(project(&z, AlgebraKind::W, AlgebraKind::WTilde).is_err());
        assert!(project(&z, AlgebraKind::W22, AlgebraKind::W22).is_err());
    }
}
