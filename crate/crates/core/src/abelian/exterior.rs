use super::matrix::{bareiss_determinant, IntMatrix};
use crate::error::{Error, Result};

/// All `n`-element subsets of `0..k`, each sorted, in lexicographic order.
pub fn lex_subsets(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > k {
        return out;
    }
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let Some(i) = (0..n).rev().find(|&i| cur[i] < k - n + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Matrix of `n x n` minors of a square `k x k` matrix on lexicographically
/// ordered index sets; the action of `M` on the `n`-th exterior power.
///
/// Degree 0 gives the `1 x 1` identity.
pub fn exterior_power(m: &IntMatrix, n: usize) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::shape(format!(
            "exterior power needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let k = m.rows();
    if n > k {
        return Err(Error::DegreeOutOfRange { degree: n, max: k });
    }
    let subsets = lex_subsets(k, n);
    let size = subsets.len();
    let mut out = IntMatrix::zeros(size, size);
    for (a, rows) in subsets.iter().enumerate() {
        for (b, cols) in subsets.iter().enumerate() {
            let minor = m.select(rows, cols);
            out[(a, b)] = bareiss_determinant(n, minor.entries().to_vec());
        }
    }
    Ok(out)
}
