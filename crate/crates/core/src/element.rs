use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::error::{Error, Result};
use crate::scalar::{self, Rational};

/// A finite linear combination of basis symbols with exact coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// coefficient-wise equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisSymbol, Rational>,
}

/// Result of asking for the degree of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero element, homogeneous of every degree.
    Zero,
    Homogeneous(i64),
    Mixed,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(s: BasisSymbol) -> Self {
        Element::term(Rational::one(), s)
    }

    pub fn term(c: Rational, s: BasisSymbol) -> Self {
        let mut e = Element::zero();
        e.add_term(s, c);
        e
    }

    pub fn l(m: i64) -> Self {
        Element::basis(BasisSymbol::L(m))
    }

    pub fn i(m: i64) -> Self {
        Element::basis(BasisSymbol::I(m))
    }

    pub fn c1() -> Self {
        Element::basis(BasisSymbol::C1)
    }

    pub fn c2() -> Self {
        Element::basis(BasisSymbol::C2)
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisSymbol, Rational)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (s, c) in terms {
            e.add_term(s, c);
        }
        e
    }

    pub fn add_term(&mut self, s: BasisSymbol, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn coeff(&self, s: BasisSymbol) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisSymbol, &Rational)> + '_ {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn symbols(&self) -> impl Iterator<Item = BasisSymbol> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(s, v)| (*s, v * c)).collect(),
        }
    }

    pub fn validate(&self, algebra: AlgebraKind) -> Result<()> {
        self.symbols().try_for_each(|s| algebra.check(s))
    }

    pub fn check_window(&self, window: Window) -> Result<()> {
        self.symbols().try_for_each(|s| window.check(s))
    }

    pub fn in_window(&self, window: Window) -> bool {
        self.symbols().all(|s| window.contains(s))
    }

    pub fn degree(&self) -> Degree {
        let mut degrees = self.symbols().map(BasisSymbol::degree);
        let Some(first) = degrees.next() else {
            return Degree::Zero;
        };
        if degrees.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Mixed
        }
    }

    /// Splits into negative-, zero- and positive-degree parts; they sum to `self`.
    pub fn triangular_split(&self) -> (Element, Element, Element) {
        let (mut neg, mut zero, mut pos) = (Element::zero(), Element::zero(), Element::zero());
        for (s, c) in self.terms() {
            let part = match s.degree().signum() {
                -1 => &mut neg,
                0 => &mut zero,
                _ => &mut pos,
            };
            part.terms.insert(s, c.clone());
        }
        (neg, zero, pos)
    }

    /// Text form inside `algebra` (W(2,2) prints its central symbol as `C`).
    pub fn to_text(&self, algebra: AlgebraKind) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (s, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&scalar::format(&mag));
                out.push('*');
            }
            out.push_str(&s.to_text(algebra));
        }
        out
    }

    /// Parses `2*L[3] - 1/2*I[-1] + C1`; `C` is accepted only for W(2,2).
    pub fn parse(text: &str, algebra: AlgebraKind) -> Result<Element> {
        Parser::new(text, algebra).parse_element()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(AlgebraKind::WTilde))
    }
}

impl From<BasisSymbol> for Element {
    fn from(s: BasisSymbol) -> Self {
        Element::basis(s)
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (s, c) in rhs.terms() {
            self.add_term(s, c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (s, c) in rhs.terms() {
            self.add_term(s, -c);
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Mul<&Element> for &Rational {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

impl Mul<Element> for Rational {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        rhs.scale(&self)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    algebra: AlgebraKind,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, algebra: AlgebraKind) -> Self {
        Parser {
            src,
            pos: 0,
            algebra,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn parse_element(mut self) -> Result<Element> {
        let mut out = Element::zero();
        self.skip_ws();
        if self.pos == self.src.len() {
            return Err(Error::parse(self.pos, "empty element"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                if first {
                    return Err(Error::parse(self.pos, "expected a term"));
                }
                break;
            }
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(Error::parse(self.pos, "expected `+` or `-` between terms"));
            };
            let (c, s) = self.parse_term()?;
            if let Some(s) = s {
                out.add_term(s, if negative { -c } else { c });
            } else if !c.is_zero() {
                return Err(Error::parse(self.pos, "bare scalar terms are not elements"));
            }
            first = false;
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Rational, Option<BasisSymbol>)> {
        self.skip_ws();
        let start = self.pos;
        if let Some(num) = self.digits() {
            let mut text = num.to_string();
            if self.eat('/') {
                let den = self
                    .digits()
                    .ok_or_else(|| Error::parse(self.pos, "expected denominator digits"))?;
                text.push('/');
                text.push_str(den);
            }
            let c = scalar::parse_at(&text, start)?;
            if self.eat('*') {
                let s = self.parse_symbol()?;
                Ok((c, Some(s)))
            } else {
                Ok((c, None))
            }
        } else {
            let s = self.parse_symbol()?;
            Ok((Rational::one(), Some(s)))
        }
    }

    fn parse_symbol(&mut self) -> Result<BasisSymbol> {
        self.skip_ws();
        let start = self.pos;
        let sym = match self.peek() {
            Some(k @ ('L' | 'I')) => {
                self.pos += 1;
                self.expect('[')?;
                self.skip_ws();
                let neg = self.eat('-');
                let d = self
                    .digits()
                    .ok_or_else(|| Error::parse(self.pos, "expected an integer index"))?;
                let m: i64 = d
                    .parse()
                    .map_err(|_| Error::parse(self.pos, "index out of range"))?;
                self.expect(']')?;
                let m = if neg { -m } else { m };
                if k == 'L' {
                    BasisSymbol::L(m)
                } else {
                    BasisSymbol::I(m)
                }
            }
            Some('C') => {
                self.pos += 1;
                match self.peek() {
                    Some('1') => {
                        self.pos += 1;
                        BasisSymbol::C1
                    }
                    Some('2') => {
                        self.pos += 1;
                        BasisSymbol::C2
                    }
                    _ if self.algebra == AlgebraKind::W22 => BasisSymbol::C1,
                    _ => {
                        return Err(Error::parse(
                            start,
                            format!("`C` is only valid in W(2,2), not {}", self.algebra),
                        ))
                    }
                }
            }
            _ => return Err(Error::parse(start, "expected L[m], I[m], C1, C2 or C")),
        };
        if !self.algebra.contains(sym) {
            return Err(Error::parse(
                start,
                format!("{sym} is not a basis symbol of {}", self.algebra),
            ));
        }
        Ok(sym)
    }
}
