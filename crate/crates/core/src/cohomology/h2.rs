use std::collections::BTreeMap;

use num_traits::Zero;

use crate::basis::{AlgebraKind, BasisSymbol, Window};
use crate::bracket::bracket_basis;
use crate::error::{Error, Result};
use crate::linalg::{complement_basis, LinearSystem};
use crate::scalar::{virasoro_coefficient, Rational};

use super::{admissible_triples, BilinearFormWindow};

/// Windowed second cohomology of one graded block.
#[derive(Debug, Clone)]
pub struct H2Report {
    pub algebra: AlgebraKind,
    pub window: Window,
    pub degree: i64,
    pub unknowns: usize,
    pub equations: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub h2_dim: usize,
    /// Canonical representatives of the quotient.
    pub basis: Vec<BilinearFormWindow>,
}

/// Solves the cocycle identity for forms of a fixed degree on the window and
/// divides out the coboundaries.
///
/// Unknowns are `ψ(s, t)` over window pairs with `deg s + deg t = degree`.
/// The identity is imposed only on triples whose brackets all stay in the
/// window. Representatives vanish at `(L_1, L_{d-1})` and `(L_1, I_{d-1})`
/// and are scaled so a pivot at `(L_2, X_{d-2})` carries the Virasoro value
/// `(2³-2)/12`; other pivots are scaled to 1.
pub fn compute_h2_window(algebra: AlgebraKind, window: Window, degree: i64) -> Result<H2Report> {
    use BasisSymbol::{I, L};
    if algebra != AlgebraKind::W {
        return Err(Error::Unsupported(format!(
            "second cohomology is computed for W only, not {algebra}"
        )));
    }
    let window = window.require(3)?;
    if !window.contains_index(degree) {
        return Err(Error::DegreeOutOfRange {
            degree,
            bound: window.bound(),
        });
    }

    let symbols = window.symbols(algebra);
    let mut pairs = Vec::new();
    for (k, &s) in symbols.iter().enumerate() {
        for &t in &symbols[k + 1..] {
            if s.degree() + t.degree() == degree {
                pairs.push((s, t));
            }
        }
    }
    let col: BTreeMap<(BasisSymbol, BasisSymbol), usize> =
        pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    // Oriented coordinate of ψ(s, t).
    let coord = |s: BasisSymbol, t: BasisSymbol| -> Option<(usize, bool)> {
        use std::cmp::Ordering::*;
        match s.cmp(&t) {
            Equal => None,
            Less => col.get(&(s, t)).map(|&c| (c, false)),
            Greater => col.get(&(t, s)).map(|&c| (c, true)),
        }
    };

    let triples = admissible_triples(algebra, window, Some(degree));
    if triples.is_empty() {
        return Err(Error::WindowTooSmall {
            got: window.bound(),
            min: 3,
        });
    }
    let mut system = LinearSystem::new(pairs.len());
    for &(x, y, z) in &triples {
        let mut row = Vec::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            for (u, k) in bracket_basis(a, b, algebra).terms() {
                if let Some((cidx, flip)) = coord(u, c) {
                    row.push((cidx, if flip { -k } else { k.clone() }));
                }
            }
        }
        system.push_row(row);
    }
    let cocycles = system.nullspace();

    let coboundaries: Vec<Vec<Rational>> = window
        .symbols_of_degree(algebra, degree)
        .into_iter()
        .map(|u| {
            pairs
                .iter()
                .map(|&(s, t)| bracket_basis(s, t, algebra).coeff(u))
                .collect()
        })
        .collect();
    let coboundary_dim = crate::linalg::rank(&coboundaries, pairs.len());
    debug_assert!(coboundaries
        .iter()
        .all(|b| system.apply(b).iter().all(Zero::is_zero)));

    let anchors = [(L(1), L(degree - 1)), (L(1), I(degree - 1))];
    let normalizers = [(L(2), L(degree - 2)), (L(2), I(degree - 2))];
    let preferred: Vec<usize> = anchors
        .iter()
        .chain(&normalizers)
        .filter_map(|&(s, t)| coord(s, t).map(|(c, _)| c))
        .collect();
    let order: Vec<usize> = preferred
        .iter()
        .copied()
        .chain((0..pairs.len()).filter(|c| !preferred.contains(c)))
        .collect();
    let reps = complement_basis(&cocycles, &coboundaries, &order);

    let basis = reps
        .into_iter()
        .map(|(pivot, mut v)| {
            for &(s, t) in &normalizers {
                if let Some((c, flip)) = coord(s, t) {
                    if c == pivot {
                        let target = virasoro_coefficient(2);
                        let scale = if flip { -target } else { target };
                        v.iter_mut().for_each(|x| *x *= &scale);
                    }
                }
            }
            let mut form = BilinearFormWindow::zero(algebra, window);
            for (&(s, t), val) in pairs.iter().zip(v) {
                form.set(s, t, val).expect("window pair");
            }
            form
        })
        .collect::<Vec<_>>();

    Ok(H2Report {
        algebra,
        window,
        degree,
        unknowns: pairs.len(),
        equations: triples.len(),
        cocycle_dim: cocycles.len(),
        coboundary_dim,
        h2_dim: cocycles.len() - coboundary_dim,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{check_cocycle, decompose_cocycle, make_alpha, make_beta};
    use crate::oracle::naive_rank;
    use crate::scalar::int;

    fn w(n: i64) -> Window {
        Window::new(n).unwrap()
    }

    /// Rebuilds the N=3 degree-0 system by hand from the bracket formulas and
    /// row-reduces it with the textbook oracle.
    #[test]
    fn n3_degree0_matches_oracle() {
        let n = 3i64;
        // Unknowns: A_m = ψ(L_m, L_-m) m=1..3, B_m = ψ(L_m, I_-m) m=-3..3,
        // C_m = ψ(I_m, I_-m) m=1..3.
        let idx_a = |m: i64| (m.abs() - 1) as usize;
        let idx_b = |m: i64| (3 + m + 3) as usize;
        let idx_c = |m: i64| (10 + m.abs() - 1) as usize;
        let ncols = 13;
        let sgn = |m: i64| if m > 0 { 1 } else { -1 };
        // ψ(X_p, Y_q) with p+q=0 as (column, sign).
        let psi = |x: char, p: i64, y: char, q: i64| -> Option<(usize, i64)> {
            assert_eq!(p + q, 0);
            match (x, y) {
                ('L', 'L') if p != 0 => Some((idx_a(p), sgn(p))),
                ('L', 'I') => Some((idx_b(p), 1)),
                ('I', 'L') => Some((idx_b(q), -1)),
                ('I', 'I') if p != 0 => Some((idx_c(p), sgn(p))),
                _ => None,
            }
        };
        // [X_p, Y_q] as (kind, index, coefficient).
        let br = |x: char, p: i64, y: char, q: i64| -> Option<(char, i64, i64)> {
            match (x, y) {
                ('L', 'L') => Some(('L', p + q, p - q)),
                ('L', 'I') => Some(('I', p + q, p - q)),
                ('I', 'L') => Some(('I', p + q, -(q - p))),
                _ => None,
            }
        };
        let mut rows = Vec::new();
        let syms: Vec<(char, i64)> = ['L', 'I']
            .iter()
            .flat_map(|&k| (-n..=n).map(move |m| (k, m)))
            .collect();
        for a in 0..syms.len() {
            for b in a + 1..syms.len() {
                for c in b + 1..syms.len() {
                    let t = [syms[a], syms[b], syms[c]];
                    if t.iter().map(|s| s.1).sum::<i64>() != 0 {
                        continue;
                    }
                    let pairs_ok = [(0, 1), (1, 2), (2, 0)]
                        .iter()
                        .all(|&(i, j)| (t[i].1 + t[j].1).abs() <= n);
                    if !pairs_ok {
                        continue;
                    }
                    let mut row = vec![int(0); ncols];
                    for &(i, j, k) in &[(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                        if let Some((kind, idx, coef)) = br(t[i].0, t[i].1, t[j].0, t[j].1) {
                            if let Some((col, s)) = psi(kind, idx, t[k].0, t[k].1) {
                                row[col] += int(coef * s);
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let rank = naive_rank(&rows, ncols);
        assert_eq!(ncols - rank, 4);

        let r = compute_h2_window(AlgebraKind::W, w(3), 0).unwrap();
        assert_eq!(r.unknowns, ncols);
        assert_eq!(r.cocycle_dim, 4);
        assert_eq!(r.coboundary_dim, 2);
        assert_eq!(r.h2_dim, 2);
    }

    #[test]
    fn degree0_representatives_are_alpha_and_beta() {
        let r = compute_h2_window(AlgebraKind::W, w(6), 0).unwrap();
        assert_eq!(r.h2_dim, 2);
        assert_eq!(r.basis, vec![make_alpha(w(6)), make_beta(w(6))]);
        for rep in &r.basis {
            assert!(check_cocycle(rep).passed());
            assert!(decompose_cocycle(rep).unwrap().in_span());
        }
    }

    #[test]
    fn nonzero_degrees_vanish() {
        for d in [-3, -2, -1, 1, 2, 3] {
            let r = compute_h2_window(AlgebraKind::W, w(6), d).unwrap();
            assert_eq!(r.h2_dim, 0, "degree {d}");
            assert_eq!(r.cocycle_dim, r.coboundary_dim);
            assert!(r.basis.is_empty());
        }
    }

    #[test]
    fn preconditions() {
        assert!(compute_h2_window(AlgebraKind::W, w(2), 0).is_err());
        assert!(compute_h2_window(AlgebraKind::WTilde, w(4), 0).is_err());
        assert!(compute_h2_window(AlgebraKind::W, w(4), 5).is_err());
    }
}
