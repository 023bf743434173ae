//! Column Hermite normal form and integer linear system solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `A * W = H` with `W` unimodular and `H` in column echelon form.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub w: IntMatrix,
    /// Pivot row of each nonzero column of `H`, strictly increasing.
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// The nonzero columns of `H`: a basis of the column lattice of `A`.
    pub fn lattice_basis(&self) -> IntMatrix {
        let rows: Vec<usize> = (0..self.h.rows()).collect();
        let cols: Vec<usize> = (0..self.rank()).collect();
        self.h.select(&rows, &cols)
    }
}

pub fn hermite_column_form(a: &IntMatrix) -> HermiteForm {
    let (rows, cols) = a.shape();
    let mut h = a.clone();
    let mut w = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();
    let mut c = 0;

    for r in 0..rows {
        if c == cols {
            break;
        }
        // Euclid across columns c.. of row r.
        while let Some(p) = (c..cols)
            .filter(|&j| !h[(r, j)].is_zero())
            .min_by_key(|&j| h[(r, j)].abs())
        {
            h.swap_cols(c, p);
            w.swap_cols(c, p);
            let mut done = true;
            for j in c + 1..cols {
                if h[(r, j)].is_zero() {
                    continue;
                }
                let q = -(&h[(r, j)] / &h[(r, c)]);
                h.add_col_multiple(j, c, &q);
                w.add_col_multiple(j, c, &q);
                if !h[(r, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_col(c);
            w.negate_col(c);
        }
        // Reduce entries left of the pivot into [0, pivot).
        let p = h[(r, c)].clone();
        for j in 0..c {
            let q = -h[(r, j)].div_floor(&p);
            h.add_col_multiple(j, c, &q);
            w.add_col_multiple(j, c, &q);
        }
        pivot_rows.push(r);
        c += 1;
    }

    HermiteForm { h, w, pivot_rows }
}

/// Solves `A x = b` over the integers.
///
/// Returns `Ok(None)` when no integer solution exists. When solutions exist
/// the one returned has zero coordinates along the kernel directions of the
/// Hermite transform.
pub fn hermite_solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let hf = hermite_column_form(a);
    Ok(solve_with(&hf, b))
}

/// Solves using a precomputed Hermite form; handy when many right-hand sides
/// share one matrix.
pub fn solve_with(hf: &HermiteForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut residual = b.to_vec();
    let mut y = vec![BigInt::zero(); hf.h.cols()];
    for (j, &r) in hf.pivot_rows.iter().enumerate() {
        let (q, rem) = residual[r].div_rem(&hf.h[(r, j)]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for i in r..hf.h.rows() {
                let v = &hf.h[(i, j)] * &q;
                residual[i] -= v;
            }
        }
        y[j] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(hf.w.mul_vec(&y).expect("shape fixed by construction"))
}

/// Solves `A X = B` column by column; `None` as soon as one column has no
/// integer solution.
pub fn solve_columns(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    if a.rows() != b.rows() {
        return Err(Error::shape(format!(
            "cannot solve {}x{} system against {} rows",
            a.rows(),
            a.cols(),
            b.rows()
        )));
    }
    let hf = hermite_column_form(a);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve_with(&hf, &b.column(j)) {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    IntMatrix::from_columns(a.cols(), &cols).map(Some)
}
