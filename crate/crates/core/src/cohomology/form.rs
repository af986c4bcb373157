use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::bracket::bracket_basis;
use crate::element::{Degree, Element};
use crate::error::{Error, Result};
use crate::scalar::{self, virasoro_coefficient, Rational};

/// Values of a linear functional on window basis symbols; absent symbols map to 0.
pub type Functional = BTreeMap<BasisSymbol, Rational>;

/// An antisymmetric bilinear form on the window of an algebra.
///
/// Only pairs `(s, t)` with `s < t` are stored; `ψ(t, s) = -ψ(s, t)` and
/// `ψ(s, s) = 0` are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearFormWindow {
    algebra: AlgebraKind,
    window: Window,
    values: BTreeMap<(BasisSymbol, BasisSymbol), Rational>,
}

impl BilinearFormWindow {
    pub fn zero(algebra: AlgebraKind, window: Window) -> Self {
        BilinearFormWindow {
            algebra,
            window,
            values: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> AlgebraKind {
        self.algebra
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn check(&self, s: BasisSymbol) -> Result<()> {
        self.algebra.check(s)?;
        self.window.check(s)
    }

    /// Sets `ψ(s, t) = v` (and so `ψ(t, s) = -v`).
    pub fn set(&mut self, s: BasisSymbol, t: BasisSymbol, v: Rational) -> Result<()> {
        self.check(s)?;
        self.check(t)?;
        if s == t {
            return if v.is_zero() {
                Ok(())
            } else {
                Err(Error::Unsupported(format!(
                    "alternating form cannot take a nonzero value on ({s}, {s})"
                )))
            };
        }
        let (key, v) = if s < t { ((s, t), v) } else { ((t, s), -v) };
        if v.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
        Ok(())
    }

    pub fn value(&self, s: BasisSymbol, t: BasisSymbol) -> Result<Rational> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.value_unchecked(s, t))
    }

    pub(crate) fn value_unchecked(&self, s: BasisSymbol, t: BasisSymbol) -> Rational {
        use std::cmp::Ordering::*;
        match s.cmp(&t) {
            Equal => Rational::zero(),
            Less => self.values.get(&(s, t)).cloned().unwrap_or_default(),
            Greater => -self.values.get(&(t, s)).cloned().unwrap_or_default(),
        }
    }

    /// Bilinear evaluation; any symbol outside the window is an error.
    pub fn eval(&self, x: &Element, y: &Element) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (s, a) in x.terms() {
            self.check(s)?;
            for (t, b) in y.terms() {
                self.check(t)?;
                acc += a * b * self.value_unchecked(s, t);
            }
        }
        Ok(acc)
    }

    /// Stored pairs `(s, t, ψ(s, t))` with `s < t` and nonzero value.
    pub fn pairs(&self) -> impl Iterator<Item = (BasisSymbol, BasisSymbol, &Rational)> + '_ {
        self.values.iter().map(|((s, t), v)| (*s, *t, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Degree of the support: `deg s + deg t` over nonzero pairs.
    pub fn degree(&self) -> Degree {
        let mut it = self.pairs().map(|(s, t, _)| s.degree() + t.degree());
        let Some(first) = it.next() else {
            return Degree::Zero;
        };
        if it.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Mixed
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = BilinearFormWindow::zero(self.algebra, self.window);
        if !c.is_zero() {
            out.values = self.values.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    /// `self + c·other`; both forms must live on the same algebra and window.
    pub fn add_scaled(&self, c: &Rational, other: &BilinearFormWindow) -> Self {
        assert_eq!(self.algebra, other.algebra);
        assert_eq!(self.window, other.window);
        let mut out = self.clone();
        for (k, v) in &other.values {
            let slot = out.values.entry(*k).or_insert_with(Rational::zero);
            *slot += v * c;
            if slot.is_zero() {
                out.values.remove(k);
            }
        }
        out
    }

    /// Header line `FORM <algebra> <N>` followed by `PAIR s t = v` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("FORM {} {}\n", self.algebra.tag(), self.window.bound());
        for (s, t, v) in self.pairs() {
            let _ = writeln!(
                out,
                "PAIR {} {} = {}",
                s.to_text(self.algebra),
                t.to_text(self.algebra),
                scalar::format(v)
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
            .ok_or_else(|| Error::parse(0, "missing FORM header"))?;
        let mut head = header.split_whitespace();
        if head.next() != Some("FORM") {
            return Err(Error::parse(0, "expected `FORM <algebra> <N>`"));
        }
        let algebra: AlgebraKind = head
            .next()
            .ok_or_else(|| Error::parse(0, "missing algebra"))?
            .parse()?;
        let bound: i64 = head
            .next()
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::parse(0, "missing window bound"))?;
        let mut form = BilinearFormWindow::zero(algebra, Window::new(bound)?);
        for (n, line) in lines {
            let bad = |m: &str| Error::parse(n, format!("line {}: {m}", n + 1));
            let rest = line
                .strip_prefix("PAIR")
                .ok_or_else(|| bad("expected `PAIR s t = v`"))?;
            let (syms, value) = rest.split_once('=').ok_or_else(|| bad("missing `=`"))?;
            let mut it = syms.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad("expected two symbols"));
            };
            let s = single_symbol(a, algebra).map_err(|_| bad("bad symbol"))?;
            let t = single_symbol(b, algebra).map_err(|_| bad("bad symbol"))?;
            let v = scalar::parse_at(value, n)?;
            form.set(s, t, v)?;
        }
        Ok(form)
    }
}

fn single_symbol(text: &str, algebra: AlgebraKind) -> Result<BasisSymbol> {
    let e = Element::parse(text, algebra)?;
    match e.terms().collect::<Vec<_>>().as_slice() {
        [(s, c)] if **c == Rational::from_integer(1.into()) => Ok(*s),
        _ => Err(Error::parse(0, format!("`{text}` is not a basis symbol"))),
    }
}

/// The Virasoro cocycle `α(L_m, L_n) = δ_{m+n,0} (m³-m)/12`, zero elsewhere.
pub fn make_alpha(window: Window) -> BilinearFormWindow {
    mixed_virasoro_form(window, BasisSymbol::L)
}

/// The mixed cocycle `β(L_m, I_n) = δ_{m+n,0} (m³-m)/12`, zero elsewhere.
pub fn make_beta(window: Window) -> BilinearFormWindow {
    mixed_virasoro_form(window, BasisSymbol::I)
}

fn mixed_virasoro_form(window: Window, partner: fn(i64) -> BasisSymbol) -> BilinearFormWindow {
    let mut form = BilinearFormWindow::zero(AlgebraKind::W, window);
    let n = window.bound();
    for m in -n..=n {
        let v = virasoro_coefficient(m);
        if !v.is_zero() {
            form.set(BasisSymbol::L(m), partner(-m), v)
                .expect("window symbols");
        }
    }
    form
}

/// `ψ_f(s, t) = f([s, t])` on every window pair whose bracket stays in the window.
///
/// Pairs whose bracket leaves the window are not stored; reading them as zero
/// is the same as extending `f` by zero outside the window.
pub fn coboundary_of(
    algebra: AlgebraKind,
    window: Window,
    f: &Functional,
) -> Result<BilinearFormWindow> {
    for s in f.keys() {
        algebra.check(*s)?;
        window.check(*s)?;
    }
    let mut form = BilinearFormWindow::zero(algebra, window);
    let symbols = window.symbols(algebra);
    for (k, &s) in symbols.iter().enumerate() {
        for &t in &symbols[k + 1..] {
            let b = bracket_basis(s, t, algebra);
            if !b.in_window(window) {
                continue;
            }
            let v: Rational = b
                .terms()
                .filter_map(|(u, c)| f.get(&u).map(|fu| c * fu))
                .sum();
            form.set(s, t, v)?;
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use BasisSymbol::{I, L};

    fn w(n: i64) -> Window {
        Window::new(n).unwrap()
    }

    #[test]
    fn alpha_beta_values() {
        let a = make_alpha(w(4));
        let b = make_beta(w(4));
        assert_eq!(a.value(L(2), L(-2)).unwrap(), ratio(1, 2));
        assert_eq!(a.value(L(-2), L(2)).unwrap(), ratio(-1, 2));
        assert_eq!(a.value(L(1), L(-1)).unwrap(), int(0));
        assert_eq!(b.value(L(3), I(-3)).unwrap(), int(2));
        assert_eq!(b.value(L(3), L(-3)).unwrap(), int(0));
        assert_eq!(b.value(I(-3), L(3)).unwrap(), int(-2));
        assert!(a.value(L(5), L(-5)).is_err());
    }

    #[test]
    fn coboundary_examples() {
        let f: Functional = [(L(0), int(1))].into();
        let psi = coboundary_of(AlgebraKind::W, w(4), &f).unwrap();
        assert_eq!(psi.value(L(3), L(-3)).unwrap(), int(6));
        let g: Functional = [(I(0), int(1))].into();
        let psi = coboundary_of(AlgebraKind::W, w(4), &g).unwrap();
        assert_eq!(psi.value(L(3), I(-3)).unwrap(), int(6));
        assert_eq!(psi.value(L(3), L(-3)).unwrap(), int(0));
        let z = coboundary_of(AlgebraKind::W, w(4), &Functional::new()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn text_round_trip() {
        let a = make_alpha(w(3)).add_scaled(&int(-2), &make_beta(w(3)));
        let text = a.to_text();
        assert!(text.starts_with("FORM w 3\n"));
        assert!(text.contains("PAIR L[-2] L[2] = -1/2"));
        assert_eq!(BilinearFormWindow::parse(&text).unwrap(), a);
        let flipped = "FORM w 3\nPAIR L[2] L[-2] = 1/2\n";
        let parsed = BilinearFormWindow::parse(flipped).unwrap();
        assert_eq!(parsed.value(L(-2), L(2)).unwrap(), ratio(-1, 2));
        assert!(BilinearFormWindow::parse("PAIR L[1] L[2] = 1").is_err());
        assert!(BilinearFormWindow::parse("FORM w 3\nPAIR L[1] L[1] = 1").is_err());
    }

    #[test]
    fn eval_rejects_out_of_window() {
        let a = make_alpha(w(3));
        assert!(a.eval(&Element::l(4), &Element::l(-4)).is_err());
        let x = Element::l(2).scale(&int(2)) + Element::l(3);
        let y = Element::l(-2);
        assert_eq!(a.eval(&x, &y).unwrap(), int(1));
    }
}
