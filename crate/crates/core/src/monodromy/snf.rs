//! Smith normal form and integer kernels by naive exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Nonzero invariant factors `d_1 | d_2 | ⋯`, all positive.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = to_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        a.swap(t, pi);
        a.iter_mut().for_each(|r| r.swap(t, pj));
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_abs_in_cross(&a, t);
                a.swap(t, pi);
                a.iter_mut().for_each(|r| r.swap(t, pj));
                continue;
            }
            // pivot must divide the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn min_abs_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    for (i, row) in a.iter().enumerate().skip(t) {
        if !row[t].is_zero() && row[t].abs() < best.2 {
            best = (i, t, row[t].abs());
        }
    }
    for (j, x) in a[t].iter().enumerate().skip(t) {
        if !x.is_zero() && x.abs() < best.2 {
            best = (t, j, x.abs());
        }
    }
    (best.0, best.1)
}

/// Rank and torsion coefficients (invariant factors greater than one).
pub fn rank_and_torsion(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let inv = smith_invariants(m);
    let torsion = inv.iter().filter(|d| !d.is_one()).cloned().collect();
    (inv.len(), torsion)
}

/// A ℤ-basis of `{x ∈ ℤ^cols : m x = 0}`, as the columns of the returned
/// matrix. Column operations reduce `[m; I]` until each row of `m` has at
/// most one nonzero entry among the unreduced columns; the identity block of
/// the columns whose `m`-part vanishes is the basis.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = to_rows(m);
    let id = IntMatrix::identity(cols);
    a.extend(to_rows(&id));
    let mut free: Vec<usize> = (0..cols).collect();
    for r in 0..rows {
        loop {
            let nz: Vec<usize> = free.iter().copied().filter(|&j| !a[r][j].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    free.retain(|&j| j != p);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| a[r][j].abs()).expect("nonempty");
            for &j in nz.iter().filter(|&&j| j != p) {
                let q = a[r][j].div_floor(&a[r][p]);
                for row in a.iter_mut() {
                    let d = &q * &row[p];
                    row[j] -= d;
                }
            }
        }
    }
    let mut k = IntMatrix::zeros(cols, free.len());
    for (c, &j) in free.iter().enumerate() {
        for i in 0..cols {
            k.set(i, c, a[rows + i][j].clone());
        }
    }
    k
}
