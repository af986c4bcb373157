use std::collections::BTreeMap;

use crate::basis::Window;
use crate::error::Result;
use crate::linalg::LinearSystem;
use crate::scalar::{int, Rational};

/// Space of antisymmetric forms `f` on the adjoint module `I` that are
/// invariant under the Witt action, restricted to a window.
#[derive(Debug, Clone)]
pub struct BgvReport {
    pub window: Window,
    pub unknowns: usize,
    pub equations: usize,
    pub dimension: usize,
    /// Each basis vector as values `f(I_j, I_k)` for `j < k`.
    pub basis: Vec<BTreeMap<(i64, i64), Rational>>,
}

/// The invariance relation for `L_i` on `(I_j, I_k)`:
/// `(i-j) f(I_{i+j}, I_k) + (k-i) f(I_{k+i}, I_j) = 0`, expressed in the
/// oriented unknowns `f(I_p, I_q)` with `p < q` (diagonal terms vanish).
pub fn bgv_equation(i: i64, j: i64, k: i64) -> BTreeMap<(i64, i64), Rational> {
    let mut row = BTreeMap::new();
    let mut add = |p: i64, q: i64, c: i64| {
        if p == q || c == 0 {
            return;
        }
        let (key, c) = if p < q { ((p, q), c) } else { ((q, p), -c) };
        *row.entry(key).or_insert_with(|| int(0)) += int(c);
    };
    add(i + j, k, i - j);
    add(k + i, j, k - i);
    row.retain(|_, v: &mut Rational| *v != int(0));
    row
}

pub fn compute_bgv_window(window: Window) -> Result<BgvReport> {
    let window = window.require(3)?;
    let n = window.bound();
    let keys: Vec<(i64, i64)> = (-n..=n)
        .flat_map(|j| (j + 1..=n).map(move |k| (j, k)))
        .collect();
    let col: BTreeMap<(i64, i64), usize> = keys.iter().enumerate().map(|(c, k)| (*k, c)).collect();
    let mut system = LinearSystem::new(keys.len());
    for i in -2 * n..=2 * n {
        for j in -n..=n {
            for k in -n..=n {
                if !(window.contains_index(i + j) && window.contains_index(i + k)) {
                    continue;
                }
                let eq = bgv_equation(i, j, k);
                if !eq.is_empty() {
                    system.push_row(eq.into_iter().map(|(key, v)| (col[&key], v)));
                }
            }
        }
    }
    let kernel = system.nullspace();
    Ok(BgvReport {
        window,
        unknowns: keys.len(),
        equations: system.nrows(),
        dimension: kernel.len(),
        basis: kernel
            .into_iter()
            .map(|v| {
                keys.iter()
                    .copied()
                    .zip(v)
                    .filter(|(_, x)| *x != int(0))
                    .collect()
            })
            .collect(),
    })
}
