use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::bracket::bracket_basis;
use crate::element::{Degree, Element};
use crate::error::{Error, Result};

/// A linear map defined on a set of window basis symbols.
///
/// The domain is exactly the key set of `images`; applying the map to a
/// symbol outside it is an error rather than a silent zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMapWindow {
    algebra: AlgebraKind,
    window: Window,
    images: BTreeMap<BasisSymbol, Element>,
}

impl LinearMapWindow {
    pub fn new(algebra: AlgebraKind, window: Window) -> Self {
        LinearMapWindow {
            algebra,
            window,
            images: BTreeMap::new(),
        }
    }

    /// Builds a map on `domain` from a per-symbol rule.
    pub fn from_fn<I, F>(algebra: AlgebraKind, window: Window, domain: I, f: F) -> Result<Self>
    where
        I: IntoIterator<Item = BasisSymbol>,
        F: Fn(BasisSymbol) -> Element,
    {
        let mut map = LinearMapWindow::new(algebra, window);
        for s in domain {
            map.set(s, f(s))?;
        }
        Ok(map)
    }

    /// Inner derivation `x ↦ [w, x]` on `domain`.
    pub fn ad(
        w: &Element,
        algebra: AlgebraKind,
        window: Window,
        domain: impl IntoIterator<Item = BasisSymbol>,
    ) -> Result<Self> {
        w.validate(algebra)?;
        let mut map = LinearMapWindow::new(algebra, window);
        for s in domain {
            let mut img = Element::zero();
            for (u, c) in w.terms() {
                img += &bracket_basis(u, s, algebra).scale(c);
            }
            map.set(s, img)?;
        }
        Ok(map)
    }

    pub fn algebra(&self) -> AlgebraKind {
        self.algebra
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn set(&mut self, s: BasisSymbol, image: Element) -> Result<()> {
        self.algebra.check(s)?;
        self.window.check(s)?;
        image.validate(self.algebra)?;
        image.check_window(self.window)?;
        self.images.insert(s, image);
        Ok(())
    }

    pub fn image(&self, s: BasisSymbol) -> Option<&Element> {
        self.images.get(&s)
    }

    pub fn domain(&self) -> impl Iterator<Item = BasisSymbol> + '_ {
        self.images.keys().copied()
    }

    pub fn images(&self) -> impl Iterator<Item = (BasisSymbol, &Element)> + '_ {
        self.images.iter().map(|(s, e)| (*s, e))
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (s, c) in x.terms() {
            let img = self.images.get(&s).ok_or(Error::OutOfWindow {
                symbol: s,
                bound: self.window.bound(),
            })?;
            out += &img.scale(c);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(Element::is_zero)
    }

    /// Degree shift `n` if every nonzero image of a degree-`m` symbol has degree `m + n`.
    pub fn degree(&self) -> Degree {
        let mut shifts = self.images.iter().flat_map(|(s, img)| {
            let d = s.degree();
            img.symbols().map(move |u| u.degree() - d)
        });
        let Some(first) = shifts.next() else {
            return Degree::Zero;
        };
        if shifts.all(|n| n == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Mixed
        }
    }

    /// Every image lies in the span of the `I_m`.
    pub fn is_i_valued(&self) -> bool {
        self.images
            .values()
            .all(|img| img.symbols().all(|u| matches!(u, BasisSymbol::I(_))))
    }

    /// Header `LINMAP <algebra> <N>` followed by `MAP s -> image` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("LINMAP {} {}\n", self.algebra.tag(), self.window.bound());
        for (s, img) in &self.images {
            let _ = writeln!(
                out,
                "MAP {} -> {}",
                s.to_text(self.algebra),
                img.to_text(self.algebra)
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing LINMAP header"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let [tag, alg, bound] = head.as_slice() else {
            return Err(Error::parse(0, "expected `LINMAP <algebra> <N>`"));
        };
        if *tag != "LINMAP" {
            return Err(Error::parse(0, "expected `LINMAP <algebra> <N>`"));
        }
        let algebra: AlgebraKind = alg.parse()?;
        let bound: i64 = bound
            .parse()
            .map_err(|_| Error::parse(0, "bad window bound"))?;
        let mut map = LinearMapWindow::new(algebra, Window::new(bound)?);
        for (n, line) in lines {
            let bad = |m: &str| Error::parse(n, format!("line {}: {m}", n + 1));
            let rest = line
                .strip_prefix("MAP")
                .ok_or_else(|| bad("expected `MAP s -> image`"))?;
            let (lhs, rhs) = rest.split_once("->").ok_or_else(|| bad("missing `->`"))?;
            let src = Element::parse(lhs, algebra)?;
            let s = match src.terms().collect::<Vec<_>>().as_slice() {
                [(s, c)] if *c == &crate::scalar::int(1) => *s,
                _ => return Err(bad("left side must be a single basis symbol")),
            };
            map.set(s, Element::parse(rhs, algebra)?)?;
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use BasisSymbol::{I, L};

    #[test]
    fn apply_outside_domain_is_an_error() {
        let w = Window::new(3).unwrap();
        let map =
            LinearMapWindow::from_fn(AlgebraKind::W, w, [L(0), I(1)], Element::basis).unwrap();
        assert_eq!(map.apply(&Element::i(1)).unwrap(), Element::i(1));
        assert!(map.apply(&Element::l(2)).is_err());
    }

    #[test]
    fn ad_degree_and_text() {
        let w = Window::new(3).unwrap();
        let map = LinearMapWindow::ad(
            &Element::i(1).scale(&int(2)),
            AlgebraKind::W,
            w,
            (-2..=2).map(L),
        )
        .unwrap();
        assert_eq!(map.degree(), Degree::Homogeneous(1));
        assert!(map.is_i_valued());
        let text = map.to_text();
        assert!(text.contains("MAP L[2] -> -2*I[3]"));
        assert_eq!(LinearMapWindow::parse(&text).unwrap(), map);
        let d = LinearMapWindow::parse("LINMAP w 4\nMAP L[2] -> 0\nMAP I[2] -> I[2]\n").unwrap();
        assert_eq!(d.apply(&Element::i(2)).unwrap(), Element::i(2));
        assert!(d.apply(&Element::l(2)).unwrap().is_zero());
        assert!(LinearMapWindow::parse("LINMAP w 4\nMAP 2*L[2] -> 0").is_err());
    }
}
