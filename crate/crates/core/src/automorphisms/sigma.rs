use std::fmt;

use num_traits::{One, Zero};

use crate::basis::{AlgebraKind, BasisSymbol};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{format, int, pow, Rational};

/// Parameters of `σ(ε, λ, a, μ)`:
/// `L_n ↦ aⁿ ε L_{εn} + aⁿ λ n I_{εn}`, `I_n ↦ aⁿ μ I_{εn}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaParams {
    epsilon: i64,
    lambda: Rational,
    a: Rational,
    mu: Rational,
}

impl SigmaParams {
    pub fn new(epsilon: i64, lambda: Rational, a: Rational, mu: Rational) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::BadEpsilon(epsilon));
        }
        if a.is_zero() {
            return Err(Error::ZeroParameter("a"));
        }
        if mu.is_zero() {
            return Err(Error::ZeroParameter("mu"));
        }
        Ok(SigmaParams {
            epsilon,
            lambda,
            a,
            mu,
        })
    }

    pub fn identity() -> Self {
        SigmaParams {
            epsilon: 1,
            lambda: Rational::zero(),
            a: Rational::one(),
            mu: Rational::one(),
        }
    }

    /// `π_ε = σ(ε, 0, 1, 1)`.
    pub fn pi(epsilon: i64) -> Result<Self> {
        SigmaParams::new(epsilon, Rational::zero(), Rational::one(), Rational::one())
    }

    /// `σ_λ = σ(1, λ, 1, 1)`.
    pub fn shear(lambda: Rational) -> Self {
        SigmaParams {
            lambda,
            ..SigmaParams::identity()
        }
    }

    /// `σ_{a,μ} = σ(1, 0, a, μ)`.
    pub fn scaling(a: Rational, mu: Rational) -> Result<Self> {
        SigmaParams::new(1, Rational::zero(), a, mu)
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn is_identity(&self) -> bool {
        *self == SigmaParams::identity()
    }

    /// Image of a basis symbol of W.
    pub fn image(&self, s: BasisSymbol) -> Result<Element> {
        let e = self.epsilon;
        match s {
            BasisSymbol::L(n) => {
                let an = pow(&self.a, n);
                let mut out = Element::term(&an * int(e), BasisSymbol::L(e * n));
                out.add_term(BasisSymbol::I(e * n), &an * &self.lambda * int(n));
                Ok(out)
            }
            BasisSymbol::I(n) => Ok(Element::term(
                pow(&self.a, n) * &self.mu,
                BasisSymbol::I(e * n),
            )),
            other => Err(AlgebraKind::W.check(other).unwrap_err()),
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (s, c) in x.terms() {
            out += &self.image(s)?.scale(c);
        }
        Ok(out)
    }

    /// Parameters of `self ∘ other` (`other` applied first).
    pub fn compose(&self, other: &SigmaParams) -> SigmaParams {
        SigmaParams {
            epsilon: self.epsilon * other.epsilon,
            lambda: &self.lambda + &self.mu * &other.lambda,
            a: pow(&self.a, other.epsilon) * &other.a,
            mu: &self.mu * &other.mu,
        }
    }

    pub fn inverse(&self) -> SigmaParams {
        SigmaParams {
            epsilon: self.epsilon,
            lambda: -&self.lambda / &self.mu,
            a: pow(&self.a, -self.epsilon),
            mu: self.mu.recip(),
        }
    }
}

impl Default for SigmaParams {
    fn default() -> Self {
        SigmaParams::identity()
    }
}

impl fmt::Display for SigmaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma(e={}, l={}, a={}, mu={})",
            self.epsilon,
            format(&self.lambda),
            format(&self.a),
            format(&self.mu)
        )
    }
}

pub fn apply_sigma(p: &SigmaParams, x: &Element) -> Result<Element> {
    p.apply(x)
}

pub fn compose_sigma(p1: &SigmaParams, p2: &SigmaParams) -> SigmaParams {
    p1.compose(p2)
}

pub fn invert_sigma(p: &SigmaParams) -> SigmaParams {
    p.inverse()
}
