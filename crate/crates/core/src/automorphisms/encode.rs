use std::collections::BTreeMap;
use std::ops::Add;

use num_traits::Zero;

use crate::error::Result;
use crate::scalar::Rational;

use super::InnerWord;

/// A finitely supported sequence `(a_i)_{i ∈ Z}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CInftySeq {
    entries: BTreeMap<i64, Rational>,
}

impl CInftySeq {
    pub fn new() -> Self {
        CInftySeq::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (i64, Rational)>>(entries: I) -> Self {
        let mut seq = CInftySeq::new();
        for (i, v) in entries {
            seq.accumulate(i, v);
        }
        seq
    }

    pub fn accumulate(&mut self, i: i64, v: Rational) {
        let slot = self.entries.entry(i).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn get(&self, i: i64) -> Rational {
        self.entries.get(&i).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Add for &CInftySeq {
    type Output = CInftySeq;

    fn add(self, rhs: &CInftySeq) -> CInftySeq {
        let mut out = self.clone();
        for (i, v) in rhs.entries() {
            out.accumulate(i, v.clone());
        }
        out
    }
}

/// Encodes `exp(Σ k_m ad I_m) σ_λ`: `k_m` goes to slot `m` for `m < 0` and to
/// slot `m + 1` for `m > 0`; `λ` goes to slot 0.
pub fn encode_zt(inner: &InnerWord, lambda: &Rational) -> CInftySeq {
    let mut seq = CInftySeq::new();
    seq.accumulate(0, lambda.clone());
    for (m, k) in inner.factors() {
        seq.accumulate(if m < 0 { m } else { m + 1 }, k.clone());
    }
    seq
}

/// Inverse of [`encode_zt`]. Slot 1, which the encoding never fills, is read
/// as the index-0 factor `exp(v ad I_0) = σ_{-v}` and folded into `λ`.
pub fn decode_zt(seq: &CInftySeq) -> Result<(InnerWord, Rational)> {
    let mut inner = InnerWord::new();
    let mut lambda = Rational::zero();
    for (i, v) in seq.entries() {
        match i {
            0 => lambda += v,
            1 => lambda -= v,
            i if i < 0 => inner.push(i, v.clone())?,
            i => inner.push(i - 1, v.clone())?,
        }
    }
    Ok((inner, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{AutomorphismNF, SigmaParams};
    use crate::basis::BasisSymbol;
    use crate::element::Element;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn zt(inner: &InnerWord, lambda: &Rational) -> AutomorphismNF {
        AutomorphismNF::new(inner.clone(), SigmaParams::shear(lambda.clone()))
    }

    #[test]
    fn example() {
        let w = InnerWord::from_factors([(-2, int(5)), (3, int(7))]).unwrap();
        let seq = encode_zt(&w, &int(2));
        assert_eq!(
            seq,
            CInftySeq::from_entries([(-2, int(5)), (0, int(2)), (4, int(7))])
        );
        assert_eq!(decode_zt(&seq).unwrap(), (w, int(2)));
        assert!(encode_zt(&InnerWord::new(), &int(0)).is_zero());
    }

    #[test]
    fn slot_one_is_the_zero_direction() {
        let (w, l) = decode_zt(&CInftySeq::from_entries([(1, int(3))])).unwrap();
        assert!(w.is_empty());
        assert_eq!(l, int(-3));
    }

    fn inner_strategy() -> impl Strategy<Value = (InnerWord, Rational)> {
        let nz = (-6i64..=6).prop_filter("nonzero", |x| *x != 0);
        (
            prop::collection::vec((nz, -5i64..=5, 1i64..=3), 0..4),
            -5i64..=5,
            1i64..=3,
        )
            .prop_map(|(f, l, q)| {
                let w = InnerWord::from_factors(f.into_iter().map(|(m, p, q)| (m, ratio(p, q))))
                    .unwrap();
                (w, ratio(l, q))
            })
    }

    fn seq_strategy() -> impl Strategy<Value = CInftySeq> {
        prop::collection::vec((-6i64..=7, -5i64..=5), 0..5).prop_map(|v| {
            CInftySeq::from_entries(
                v.into_iter()
                    .filter(|(i, _)| *i != 1)
                    .map(|(i, x)| (i, int(x))),
            )
        })
    }

    proptest! {
        #[test]
        fn round_trips(x in inner_strategy(), s in seq_strategy()) {
            let seq = encode_zt(&x.0, &x.1);
            prop_assert_eq!(decode_zt(&seq).unwrap(), x);
            let (w, l) = decode_zt(&s).unwrap();
            prop_assert_eq!(encode_zt(&w, &l), s);
        }

        #[test]
        fn encode_is_additive(x in inner_strategy(), y in inner_strategy()) {
            let product = zt(&x.0, &x.1).compose(&zt(&y.0, &y.1));
            prop_assert!(product.sigma.epsilon() == 1);
            let expected = &encode_zt(&x.0, &x.1) + &encode_zt(&y.0, &y.1);
            prop_assert_eq!(encode_zt(&product.inner, product.sigma.lambda()), expected);
            // The group is abelian as maps.
            let other = zt(&y.0, &y.1).compose(&zt(&x.0, &x.1));
            for n in -6i64..=6 {
                let v: Element = BasisSymbol::L(n).into();
                prop_assert_eq!(product.apply(&v).unwrap(), other.apply(&v).unwrap());
            }
        }
    }
}
