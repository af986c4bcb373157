//! Exact sparse linear algebra over the rationals.
//!
//! Rows are cleared of denominators and eliminated over the integers with
//! content removal after every row operation, so no fractions appear until
//! the final back-substitution. Pivots are chosen per column by smallest
//! absolute value to limit coefficient growth.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

pub type SparseRow = Vec<(usize, Rational)>;

/// A homogeneous or inhomogeneous system given by sparse rational rows.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    ncols: usize,
    rows: Vec<SparseRow>,
}

/// Witness that `A x = b` has no solution: `Σ wᵢ Aᵢ = 0` but `Σ wᵢ bᵢ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasible {
    pub weights: Vec<(usize, Rational)>,
}

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(ncols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut sys = LinearSystem::new(ncols);
        for r in rows {
            sys.push_row(r.iter().cloned().enumerate());
        }
        sys
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Adds a row; repeated columns are summed and zeros dropped. All-zero
    /// rows are kept so row indices stay aligned with a right-hand side.
    pub fn push_row<I: IntoIterator<Item = (usize, Rational)>>(&mut self, entries: I) {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range {}", self.ncols);
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        self.rows
            .push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    pub fn rank(&self) -> usize {
        echelon(self.ncols, self.rows.iter().map(to_int_row)).len()
    }

    /// Basis of `{ x : A x = 0 }`. Each vector has a 1 in its own free column
    /// and 0 in every other free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let pivots = echelon(self.ncols, self.rows.iter().map(to_int_row));
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.ncols];
            for (c, _) in &pivots {
                v[*c] = true;
            }
            v
        };
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![Rational::zero(); self.ncols];
                x[free] = Rational::one();
                back_substitute(&pivots, &mut x, None);
                x
            })
            .collect()
    }

    /// One solution of `A x = b` (free variables set to zero), or a
    /// certificate of infeasibility.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>, Infeasible> {
        assert_eq!(
            rhs.len(),
            self.rows.len(),
            "rhs length must match row count"
        );
        let n = self.ncols;
        let augmented: Vec<IntRow> = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| {
                let mut row = r.clone();
                if !b.is_zero() {
                    row.push((n, b.clone()));
                }
                to_int_row(&row)
            })
            .collect();
        let pivots = echelon(n + 1, augmented.into_iter());
        if pivots.iter().any(|(c, _)| *c == n) {
            return Err(self.certificate(rhs));
        }
        let mut x = vec![Rational::zero(); n];
        back_substitute(&pivots, &mut x, Some(n));
        Ok(x)
    }

    pub fn is_consistent(&self, rhs: &[Rational]) -> bool {
        self.solve(rhs).is_ok()
    }

    /// Picks a row subset whose augmented rank exceeds its coefficient rank
    /// by one, then reads the dependency off the kernel of its transpose.
    fn certificate(&self, rhs: &[Rational]) -> Infeasible {
        let n = self.ncols;
        let mut basis = IncrementalEchelon::default();
        let mut chosen = Vec::new();
        for (i, (r, b)) in self.rows.iter().zip(rhs).enumerate() {
            let mut row = r.clone();
            if !b.is_zero() {
                row.push((n, b.clone()));
            }
            if basis.insert(to_int_row(&row)) {
                chosen.push(i);
            }
        }
        let mut transpose = LinearSystem::new(chosen.len());
        let mut by_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        for (j, &i) in chosen.iter().enumerate() {
            for (c, v) in &self.rows[i] {
                by_col[*c].push((j, v.clone()));
            }
        }
        for col in by_col {
            transpose.push_row(col);
        }
        let y = transpose
            .nullspace()
            .into_iter()
            .find(|y| {
                let s: Rational = y.iter().zip(&chosen).map(|(w, &i)| w * &rhs[i]).sum();
                !s.is_zero()
            })
            .expect("an inconsistent row subset has a separating dependency");
        Infeasible {
            weights: chosen
                .into_iter()
                .zip(y)
                .filter(|(_, w)| !w.is_zero())
                .collect(),
        }
    }

    /// Checks an infeasibility certificate against this system exactly.
    pub fn verify_certificate(&self, rhs: &[Rational], cert: &Infeasible) -> bool {
        let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut b = Rational::zero();
        for (i, w) in &cert.weights {
            for (c, v) in &self.rows[*i] {
                *combo.entry(*c).or_insert_with(Rational::zero) += w * v;
            }
            b += w * &rhs[*i];
        }
        combo.values().all(Zero::is_zero) && !b.is_zero()
    }

    /// `A x` as a dense vector.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(c, v)| v * &x[*c]).sum())
            .collect()
    }
}

/// Dense convenience wrapper: kernel basis of a rational matrix.
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    LinearSystem::from_dense(ncols, matrix).nullspace()
}

pub fn rank(matrix: &[Vec<Rational>], ncols: usize) -> usize {
    LinearSystem::from_dense(ncols, matrix).rank()
}

/// Reduced row echelon form of dense `rows`, scanning columns in `order`
/// (columns missing from `order` are never pivots). Returns `(pivot, row)`
/// with every pivot entry equal to 1.
pub fn rref(rows: &[Vec<Rational>], order: &[usize]) -> Vec<(usize, Vec<Rational>)> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
    for &c in order {
        let Some(p) = m.iter().position(|r| !r[c].is_zero()) else {
            continue;
        };
        let mut pivot = m.swap_remove(p);
        let lead = pivot[c].clone();
        for v in pivot.iter_mut() {
            *v /= &lead;
        }
        for r in m.iter_mut().chain(out.iter_mut().map(|(_, r)| r)) {
            if !r[c].is_zero() {
                let f = r[c].clone();
                for (x, y) in r.iter_mut().zip(&pivot) {
                    *x -= y * &f;
                }
            }
        }
        m.retain(|r| r.iter().any(|v| !v.is_zero()));
        out.push((c, pivot));
    }
    out
}

/// Canonical basis of `span(vectors)` modulo `span(subspace)`.
///
/// Each returned vector vanishes on the pivot columns of `subspace` (taken in
/// `order`) and the family is itself in reduced echelon form.
pub fn complement_basis(
    vectors: &[Vec<Rational>],
    subspace: &[Vec<Rational>],
    order: &[usize],
) -> Vec<(usize, Vec<Rational>)> {
    let sub = rref(subspace, order);
    let reduced: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            let mut v = v.clone();
            for (c, r) in &sub {
                if !v[*c].is_zero() {
                    let f = v[*c].clone();
                    for (x, y) in v.iter_mut().zip(r) {
                        *x -= y * &f;
                    }
                }
            }
            v
        })
        .collect();
    rref(&reduced, order)
}

/// Sparse integer row: sorted by column, nonzero entries, content 1.
#[derive(Debug, Clone)]
struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    fn lead(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    fn lead_value(&self) -> &BigInt {
        &self.0[0].1
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, v) in &self.0 {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for (_, v) in &mut self.0 {
                *v /= &g;
            }
        }
    }
}

fn to_int_row(row: &SparseRow) -> IntRow {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut entries: Vec<(usize, BigInt)> = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
        .collect();
    entries.sort_by_key(|(c, _)| *c);
    let mut r = IntRow(entries);
    r.make_primitive();
    r
}

/// `row ← (p/g)·row − (a/g)·pivot`, which cancels the shared lead column.
fn eliminate(row: &IntRow, pivot: &IntRow) -> IntRow {
    let p = pivot.lead_value();
    let a = row.lead_value();
    let g = p.gcd(a);
    let (ps, as_) = (p / &g, a / &g);
    let mut out = Vec::with_capacity(row.0.len() + pivot.0.len());
    let (mut i, mut j) = (1, 1);
    while i < row.0.len() || j < pivot.0.len() {
        let ci = row.0.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.0.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, &row.0[i - 1].1 * &ps)
        } else if cj < ci {
            j += 1;
            (cj, -(&pivot.0[j - 1].1 * &as_))
        } else {
            i += 1;
            j += 1;
            (ci, &row.0[i - 1].1 * &ps - &pivot.0[j - 1].1 * &as_)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    let mut r = IntRow(out);
    r.make_primitive();
    r
}

/// Column-wise elimination. Returns pivot rows keyed by pivot column, sorted.
fn echelon<I: Iterator<Item = IntRow>>(width: usize, rows: I) -> Vec<(usize, IntRow)> {
    let mut buckets: Vec<Vec<IntRow>> = vec![Vec::new(); width];
    for r in rows {
        if let Some(c) = r.lead() {
            buckets[c].push(r);
        }
    }
    let mut pivots = Vec::new();
    for col in 0..width {
        let mut candidates = std::mem::take(&mut buckets[col]);
        if candidates.is_empty() {
            continue;
        }
        let best = candidates
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lead_value()
                    .abs()
                    .cmp(&b.lead_value().abs())
                    .then(a.0.len().cmp(&b.0.len()))
            })
            .map(|(k, _)| k)
            .expect("nonempty");
        let pivot = candidates.swap_remove(best);
        for r in candidates {
            let reduced = eliminate(&r, &pivot);
            if let Some(c) = reduced.lead() {
                buckets[c].push(reduced);
            }
        }
        pivots.push((col, pivot));
    }
    pivots
}

/// Fills pivot variables from the bottom up; `rhs_col` marks the augmented column.
fn back_substitute(pivots: &[(usize, IntRow)], x: &mut [Rational], rhs_col: Option<usize>) {
    for (pc, row) in pivots.iter().rev() {
        let mut acc = Rational::zero();
        let mut lead = None;
        for (c, v) in &row.0 {
            if c == pc {
                lead = Some(v);
            } else if Some(*c) == rhs_col {
                acc += Rational::from_integer(v.clone());
            } else {
                acc -= &x[*c] * Rational::from_integer(v.clone());
            }
        }
        let lead = Rational::from_integer(lead.expect("pivot entry").clone());
        x[*pc] = acc / lead;
    }
}

/// Echelon basis grown one row at a time.
#[derive(Default)]
struct IncrementalEchelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl IncrementalEchelon {
    /// Returns true if the row was independent of the rows seen so far.
    fn insert(&mut self, mut row: IntRow) -> bool {
        while let Some(c) = row.lead() {
            match self.pivots.get(&c) {
                Some(p) => row = eliminate(&row, p),
                None => {
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::naive_rank;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn small_kernels() {
        let k = nullspace(&[vec![int(1), int(-1)]], 2);
        assert_eq!(k, vec![vec![int(1), int(1)]]);
        let id: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert!(nullspace(&id, 3).is_empty());
        assert_eq!(rank(&id, 3), 3);
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn solve_and_certify() {
        let sys = LinearSystem::from_dense(
            2,
            &[
                vec![int(1), int(1)],
                vec![int(2), int(2)],
                vec![int(1), int(-1)],
            ],
        );
        let x = sys.solve(&[int(3), int(6), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let b = [int(3), int(7), int(1)];
        let cert = sys.solve(&b).unwrap_err();
        assert!(sys.verify_certificate(&b, &cert));
    }

    #[test]
    fn complement_zeroes_subspace_pivots() {
        let sub = vec![vec![int(1), int(1), int(0)]];
        let vecs = vec![vec![int(2), int(3), int(1)], vec![int(1), int(1), int(0)]];
        let c = complement_basis(&vecs, &sub, &[0, 1, 2]);
        assert_eq!(c, vec![(1, vec![int(0), int(1), int(1)])]);
        let r = rref(&[vec![int(0), int(2)], vec![int(3), int(1)]], &[1, 0]);
        assert_eq!(
            r,
            vec![(1, vec![int(0), int(1)]), (0, vec![int(1), int(0)])]
        );
    }

    #[test]
    fn fractional_entries() {
        let sys = LinearSystem::from_dense(2, &[vec![ratio(1, 2), ratio(-1, 3)]]);
        let k = sys.nullspace();
        assert_eq!(k, vec![vec![ratio(2, 3), int(1)]]);
    }

    fn matrix_strategy() -> impl Strategy<Value = (usize, Vec<Vec<Rational>>)> {
        (1usize..7, 0usize..8).prop_flat_map(|(ncols, nrows)| {
            let entry = (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q));
            (
                Just(ncols),
                proptest::collection::vec(proptest::collection::vec(entry, ncols), nrows),
            )
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated((ncols, rows) in matrix_strategy()) {
            let sys = LinearSystem::from_dense(ncols, &rows);
            let kernel = sys.nullspace();
            for v in &kernel {
                prop_assert!(sys.apply(v).iter().all(Zero::is_zero));
            }
            let rank = sys.rank();
            prop_assert_eq!(rank + kernel.len(), ncols);
            prop_assert_eq!(rank, naive_rank(&rows, ncols));
            // Independence of the kernel basis.
            prop_assert_eq!(super::rank(&kernel, ncols), kernel.len());
        }

        #[test]
        fn solve_agrees_with_rank_test((ncols, rows) in matrix_strategy(), seed in proptest::collection::vec(-3i64..=3, 8)) {
            let sys = LinearSystem::from_dense(ncols, &rows);
            let b: Vec<Rational> = (0..rows.len()).map(|i| int(seed[i])).collect();
            let mut aug = rows.clone();
            for (r, v) in aug.iter_mut().zip(&b) {
                r.push(v.clone());
            }
            let consistent = naive_rank(&aug, ncols + 1) == naive_rank(&rows, ncols);
            match sys.solve(&b) {
                Ok(x) => {
                    prop_assert!(consistent);
                    prop_assert_eq!(sys.apply(&x), b);
                }
                Err(cert) => {
                    prop_assert!(!consistent);
                    prop_assert!(sys.verify_certificate(&b, &cert));
                }
            }
        }
    }
}
