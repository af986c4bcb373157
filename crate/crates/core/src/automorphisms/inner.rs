use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::basis::{AlgebraKind, BasisSymbol};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{format, int, pow, Rational};

use super::SigmaParams;

/// Product of factors `exp(k_m ad I_m)`, `m ≠ 0`. The factors commute, so
/// the word is just the coefficient map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct InnerWord {
    factors: BTreeMap<i64, Rational>,
}

impl InnerWord {
    pub fn new() -> Self {
        InnerWord::default()
    }

    pub fn single(m: i64, k: Rational) -> Result<Self> {
        let mut w = InnerWord::new();
        w.push(m, k)?;
        Ok(w)
    }

    pub fn from_factors<I: IntoIterator<Item = (i64, Rational)>>(factors: I) -> Result<Self> {
        let mut w = InnerWord::new();
        for (m, k) in factors {
            w.push(m, k)?;
        }
        Ok(w)
    }

    /// Multiplies in `exp(k ad I_m)`.
    pub fn push(&mut self, m: i64, k: Rational) -> Result<()> {
        if m == 0 {
            return Err(Error::ZeroInnerIndex);
        }
        let slot = self.factors.entry(m).or_insert_with(Rational::zero);
        *slot += k;
        if slot.is_zero() {
            self.factors.remove(&m);
        }
        Ok(())
    }

    pub fn coefficient(&self, m: i64) -> Rational {
        self.factors.get(&m).cloned().unwrap_or_default()
    }

    pub fn factors(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.factors.iter().map(|(m, k)| (*m, k))
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn merged(&self, other: &InnerWord) -> InnerWord {
        let mut out = self.clone();
        for (m, k) in other.factors() {
            out.push(m, k.clone()).expect("nonzero index");
        }
        out
    }

    pub fn inverse(&self) -> InnerWord {
        InnerWord {
            factors: self.factors.iter().map(|(m, k)| (*m, -k)).collect(),
        }
    }

    /// `σ ∘ self ∘ σ⁻¹`, using `σ exp(k ad I_m) σ⁻¹ = exp(k aᵐ μ ad I_{εm})`.
    pub fn conjugated_by(&self, sigma: &SigmaParams) -> InnerWord {
        InnerWord {
            factors: self
                .factors
                .iter()
                .map(|(m, k)| (sigma.epsilon() * m, k * pow(sigma.a(), *m) * sigma.mu()))
                .collect(),
        }
    }

    /// `L_n ↦ L_n + Σ k_m (m - n) I_{m+n}`, `I_n ↦ I_n`.
    pub fn image(&self, s: BasisSymbol) -> Result<Element> {
        AlgebraKind::W.check(s)?;
        let mut out = Element::basis(s);
        if let BasisSymbol::L(n) = s {
            for (m, k) in self.factors() {
                out.add_term(BasisSymbol::I(m + n), k * int(m - n));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (s, c) in x.terms() {
            out += &self.image(s)?.scale(c);
        }
        Ok(out)
    }
}

impl fmt::Display for InnerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .rev()
            .map(|(m, k)| format!("{m}:{}", format(k)))
            .collect();
        write!(f, "inner{{{}}}", parts.join(", "))
    }
}

pub fn apply_inner(word: &InnerWord, x: &Element) -> Result<Element> {
    word.apply(x)
}
