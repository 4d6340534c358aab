//! Exact nullspace computation over the integers via fraction-free
//! Gaussian elimination.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Row-reduces `mat` (in place) with cross-multiplication updates, keeping
/// every entry an integer, and returns the pivot column of each echelon
/// row. Rows are divided by their content after each update to control
/// coefficient growth.
fn fraction_free_echelon(mat: &mut Vec<Vec<BigInt>>, cols: usize) -> Vec<usize> {
    let rows = mat.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Smallest-magnitude nonzero pivot for size control; ties broken by
        // row index, so the result is deterministic.
        let pivot_row = (r..rows)
            .filter(|&i| !mat[i][c].is_zero())
            .min_by(|&a, &b| mat[a][c].abs().cmp(&mat[b][c].abs()).then(a.cmp(&b)));
        let Some(pivot_row) = pivot_row else { continue };
        mat.swap(r, pivot_row);
        let pivot = mat[r][c].clone();
        for i in r + 1..rows {
            if mat[i][c].is_zero() {
                continue;
            }
            let factor = mat[i][c].clone();
            for j in c..cols {
                let scaled = &mat[i][j] * &pivot - &factor * &mat[r][j];
                mat[i][j] = scaled;
            }
            divide_by_content(&mut mat[i]);
        }
        pivot_cols.push(c);
        r += 1;
    }
    pivot_cols
}

fn divide_by_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// Basis of the right nullspace of an integer matrix. Each basis vector is
/// integer, divided by its content, with the first nonzero entry positive;
/// vectors are ordered by their free column.
pub fn nullspace(mut mat: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    debug_assert!(mat.iter().all(|row| row.len() == cols));
    let pivot_cols = fraction_free_echelon(&mut mat, cols);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (row, &c) in pivot_cols.iter().enumerate() {
            v[c] = Some(row);
        }
        v
    };

    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| pivot_set[*c].is_none()) {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (row, &pc) in pivot_cols.iter().enumerate().rev() {
            let mut acc = BigRational::zero();
            for c in pc + 1..cols {
                if !mat[row][c].is_zero() && !x[c].is_zero() {
                    acc += BigRational::from_integer(mat[row][c].clone()) * &x[c];
                }
            }
            x[pc] = -acc / BigRational::from_integer(mat[row][pc].clone());
        }
        basis.push(clear_denominators(&x));
    }
    basis
}

fn clear_denominators(x: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in x {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    divide_by_content(&mut out);
    if let Some(first) = out.iter().find(|v| !v.is_zero()) {
        if first.sign() == Sign::Minus {
            for v in out.iter_mut() {
                *v = -&*v;
            }
        }
    }
    out
}
