//! Smith normal form over the integers.
//!
//! Pivoting always picks the entry of smallest nonzero absolute value in the
//! remaining block, then clears its row and column completely before moving
//! on. Entries that the pivot fails to divide are folded into the pivot row,
//! which forces the divisibility chain as the diagonal is produced. The
//! procedure is deterministic, so `U` and `V` are reproducible for a given
//! input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `D = U * M * V` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// `min(rows, cols)` nonnegative entries, each dividing the next.
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        let Some((pi, pj)) = smallest_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;

            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }

            if clean {
                // Row and column cleared; enforce divisibility of the rest.
                let p = a[(t, t)].clone();
                let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &p).is_zero()));
                match bad_row {
                    None => break,
                    Some(i) => {
                        let one = BigInt::from(1);
                        a.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                }
            }

            // Re-pivot on the smallest entry of row t / column t.
            if let Some((pi, pj)) = smallest_in_cross(&a, t) {
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let diagonal = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition { u, d: a, v, diagonal }
}

fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smallest nonzero entry in row `t` or column `t` at or beyond the diagonal.
fn smallest_in_cross(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    let candidates = (t..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in candidates {
        let x = &a[(i, j)];
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| ax < *b) {
            best = Some(((i, j), ax));
        }
    }
    best.map(|(p, _)| p)
}

/// Inverse of a unimodular matrix.
///
/// Returns `None` when the matrix is not square or its determinant is not ±1.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    // Gauss-Jordan over Z on [M | I]; unimodularity keeps every pivot a unit
    // once the column has been reduced to a single gcd entry.
    let mut a = m.hcat(&IntMatrix::identity(n)).ok()?;
    for c in 0..n {
        // Euclid on column c below row c.
        loop {
            let pivot = (c..n)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by_key(|&i| a[(i, c)].abs())?;
            a.swap_rows(c, pivot);
            let mut done = true;
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, c)] / &a[(c, c)]);
                a.add_row_multiple(i, c, &q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(c, c)].abs() != BigInt::from(1) {
            return None;
        }
        if a[(c, c)].is_negative() {
            a.negate_row(c);
        }
        for i in 0..n {
            if i != c && !a[(i, c)].is_zero() {
                let q = -a[(i, c)].clone();
                a.add_row_multiple(i, c, &q);
            }
        }
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(a.select(&rows, &cols))
}
