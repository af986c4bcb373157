//! Test-only reference implementations, independent of `linalg`.

use num_traits::Zero;

use crate::scalar::Rational;

/// Textbook Gauss-Jordan rank over the rationals.
pub(crate) fn naive_rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &lead;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= y * &f;
                }
            }
        }
        r += 1;
    }
    r
}
