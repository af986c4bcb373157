use std::fmt;

use crate::basis::BasisSymbol;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{parse_at, Rational};

use super::{InnerWord, SigmaParams};

/// `inner ∘ σ`: σ is applied first, the inner word last.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AutomorphismNF {
    pub inner: InnerWord,
    pub sigma: SigmaParams,
}

impl AutomorphismNF {
    pub fn new(inner: InnerWord, sigma: SigmaParams) -> Self {
        AutomorphismNF { inner, sigma }
    }

    pub fn identity() -> Self {
        AutomorphismNF::default()
    }

    pub fn from_sigma(sigma: SigmaParams) -> Self {
        AutomorphismNF::new(InnerWord::new(), sigma)
    }

    pub fn from_inner(inner: InnerWord) -> Self {
        AutomorphismNF::new(inner, SigmaParams::identity())
    }

    pub fn is_identity(&self) -> bool {
        self.inner.is_empty() && self.sigma.is_identity()
    }

    pub fn image(&self, s: BasisSymbol) -> Result<Element> {
        self.inner.apply(&self.sigma.image(s)?)
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.inner.apply(&self.sigma.apply(x)?)
    }

    /// Normal form of `self ∘ other`.
    pub fn compose(&self, other: &AutomorphismNF) -> AutomorphismNF {
        AutomorphismNF {
            inner: self.inner.merged(&other.inner.conjugated_by(&self.sigma)),
            sigma: self.sigma.compose(&other.sigma),
        }
    }

    pub fn inverse(&self) -> AutomorphismNF {
        let sigma = self.sigma.inverse();
        AutomorphismNF {
            inner: self.inner.inverse().conjugated_by(&sigma),
            sigma,
        }
    }

    /// Reads `inner{3:2, -1:1/2} sigma(e=-1, l=7, a=10, mu=21)`; either part
    /// may be omitted.
    pub fn parse(text: &str) -> Result<AutomorphismNF> {
        let calls = scan_calls(text)?;
        let mut nf = AutomorphismNF::identity();
        let mut seen_inner = false;
        let mut seen_sigma = false;
        for call in calls {
            match (call.name, call.open) {
                ("inner", '{') if !seen_inner && !seen_sigma => {
                    seen_inner = true;
                    for arg in &call.args {
                        let (m, k) = split_once(arg, ':')?;
                        let idx = parse_index(m)?;
                        if idx == 0 {
                            return Err(Error::parse(
                                m.1,
                                "inner index 0 is stored as the shear l",
                            ));
                        }
                        nf.inner.push(idx, parse_at(k.0, k.1)?)?;
                    }
                }
                ("sigma", '(') if !seen_sigma => {
                    seen_sigma = true;
                    let mut fields: [Option<Rational>; 4] = Default::default();
                    for arg in &call.args {
                        let (key, value) = split_once(arg, '=')?;
                        let slot = match key.0 {
                            "e" => 0,
                            "l" => 1,
                            "a" => 2,
                            "mu" => 3,
                            other => {
                                return Err(Error::parse(key.1, format!("unknown field `{other}`")))
                            }
                        };
                        if fields[slot].is_some() {
                            return Err(Error::parse(key.1, format!("repeated field `{}`", key.0)));
                        }
                        fields[slot] = Some(parse_at(value.0, value.1)?);
                    }
                    let [e, l, a, mu] = fields;
                    let e = match e {
                        None => 1,
                        Some(e) if e.is_integer() => i64::try_from(e.to_integer()).unwrap_or(0),
                        Some(_) => 0,
                    };
                    let id = SigmaParams::identity();
                    nf.sigma = SigmaParams::new(
                        e,
                        l.unwrap_or_else(|| id.lambda().clone()),
                        a.unwrap_or_else(|| id.a().clone()),
                        mu.unwrap_or_else(|| id.mu().clone()),
                    )?;
                }
                (name, _) => {
                    return Err(Error::parse(call.offset, format!("unexpected `{name}`")));
                }
            }
        }
        Ok(nf)
    }
}

impl fmt::Display for AutomorphismNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.inner, self.sigma)
    }
}

pub fn compose_nf(f: &AutomorphismNF, g: &AutomorphismNF) -> AutomorphismNF {
    f.compose(g)
}

/// One factor of a generator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// `pi(ε)`
    Pi(i64),
    /// `t(λ)`, the shear `σ_λ`
    Shear(Rational),
    /// `b(a, μ)`
    Scaling(Rational, Rational),
    /// `z(m, k)`, that is `exp(k ad I_m)`
    Inner(i64, Rational),
}

impl Generator {
    pub fn to_nf(&self) -> Result<AutomorphismNF> {
        Ok(match self {
            Generator::Pi(e) => AutomorphismNF::from_sigma(SigmaParams::pi(*e)?),
            Generator::Shear(l) => AutomorphismNF::from_sigma(SigmaParams::shear(l.clone())),
            Generator::Scaling(a, mu) => {
                AutomorphismNF::from_sigma(SigmaParams::scaling(a.clone(), mu.clone())?)
            }
            // exp(k ad I_0) is the shear σ_{-k}.
            Generator::Inner(0, k) => AutomorphismNF::from_sigma(SigmaParams::shear(-k)),
            Generator::Inner(m, k) => AutomorphismNF::from_inner(InnerWord::single(*m, k.clone())?),
        })
    }
}

/// Parses whitespace-separated tokens `pi(-1) t(1/2) b(2,3) z(3,2)`.
pub fn parse_word(text: &str) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for call in scan_calls(text)? {
        let arity = |n: usize| -> Result<()> {
            if call.open != '(' || call.args.len() != n {
                return Err(Error::parse(
                    call.offset,
                    format!("`{}` takes {n} argument(s)", call.name),
                ));
            }
            Ok(())
        };
        let q = |i: usize| parse_at(call.args[i].0, call.args[i].1);
        let g = match call.name {
            "pi" => {
                arity(1)?;
                let e = parse_index(call.args[0])?;
                if e != 1 && e != -1 {
                    return Err(Error::BadEpsilon(e));
                }
                Generator::Pi(e)
            }
            "t" => {
                arity(1)?;
                Generator::Shear(q(0)?)
            }
            "b" => {
                arity(2)?;
                Generator::Scaling(q(0)?, q(1)?)
            }
            "z" => {
                arity(2)?;
                Generator::Inner(parse_index(call.args[0])?, q(1)?)
            }
            other => {
                return Err(Error::parse(
                    call.offset,
                    format!("unknown generator `{other}`"),
                ));
            }
        };
        out.push(g);
    }
    if out.is_empty() {
        return Err(Error::parse(0, "empty word"));
    }
    Ok(out)
}

/// Normal form of the product `g_1 g_2 … g_r` (rightmost factor applied first).
pub fn normalize_word(word: &[Generator]) -> Result<AutomorphismNF> {
    let mut nf = AutomorphismNF::identity();
    for g in word {
        nf = nf.compose(&g.to_nf()?);
    }
    Ok(nf)
}

/// Accepts either normal-form text or a generator word.
pub fn parse_automorphism(text: &str) -> Result<AutomorphismNF> {
    let t = text.trim_start();
    if t.starts_with("inner") || t.starts_with("sigma") {
        AutomorphismNF::parse(text)
    } else {
        normalize_word(&parse_word(text)?)
    }
}

/// Text slice paired with its byte offset in the source.
type Span<'a> = (&'a str, usize);

struct Call<'a> {
    name: &'a str,
    open: char,
    args: Vec<Span<'a>>,
    offset: usize,
}

fn scan_calls(text: &str) -> Result<Vec<Call<'_>>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            return Ok(out);
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
            pos += 1;
        }
        if pos == start {
            return Err(Error::parse(pos, "expected a name"));
        }
        let name = &text[start..pos];
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let (open, close) = match bytes.get(pos) {
            Some(b'(') => ('(', ')'),
            Some(b'{') => ('{', '}'),
            _ => return Err(Error::parse(pos, format!("expected `(` after `{name}`"))),
        };
        let body_start = pos + 1;
        let body_end = text[body_start..]
            .find(close)
            .map(|i| body_start + i)
            .ok_or_else(|| Error::parse(pos, format!("missing `{close}`")))?;
        let mut args = Vec::new();
        let body = &text[body_start..body_end];
        if !body.trim().is_empty() {
            let mut at = body_start;
            for piece in body.split(',') {
                args.push(trimmed((piece, at)));
                at += piece.len() + 1;
            }
        }
        out.push(Call {
            name,
            open,
            args,
            offset: start,
        });
        pos = body_end + 1;
    }
}

fn trimmed((s, at): Span<'_>) -> Span<'_> {
    let lead = s.len() - s.trim_start().len();
    (s.trim(), at + lead)
}

fn split_once<'a>(span: &Span<'a>, sep: char) -> Result<(Span<'a>, Span<'a>)> {
    let (s, at) = *span;
    let i = s
        .find(sep)
        .ok_or_else(|| Error::parse(at, format!("expected `{sep}`")))?;
    Ok((trimmed((&s[..i], at)), trimmed((&s[i + 1..], at + i + 1))))
}

fn parse_index((s, at): Span<'_>) -> Result<i64> {
    s.parse::<i64>()
        .map_err(|_| Error::parse(at, format!("expected an integer, found `{s}`")))
}
