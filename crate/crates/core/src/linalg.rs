//! Dense exact linear algebra on row-major rational matrices.

use num::{One, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn transpose(a: &[Vec<Rational>], cols: usize) -> Matrix {
    let mut t = zeros(cols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

/// Row-reduces `a` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref(a: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Rational::one() / a[row][col].clone();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{x : a x = 0}` for an `rows x cols` matrix. One basis vector per
/// free column, with a 1 in that column.
pub fn null_space(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Matrix = a.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(a: &[Vec<Rational>], cols: usize) -> usize {
    let mut m: Matrix = a.to_vec();
    rref(&mut m, cols).len()
}

pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

/// `yᵀ a` for a row-major `a`.
pub fn vec_mat(y: &[Rational], a: &[Vec<Rational>], cols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); cols];
    for (yi, row) in y.iter().zip(a) {
        if yi.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row) {
            *o += yi * v;
        }
    }
    out
}

/// Linear combination `Σ coeffs[i] * basis[i]`.
pub fn combine(basis: &[Vec<Rational>], coeffs: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (b, c) in basis.iter().zip(coeffs) {
        for (o, v) in out.iter_mut().zip(b) {
            *o += c * v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn null_space_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = null_space(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
        assert_eq!(rank(&a, 4), 2);
    }

    #[test]
    fn full_rank_has_trivial_null_space() {
        let a = m(&[&[1, 0], &[0, 1]]);
        assert!(null_space(&a, 2).is_empty());
        assert_eq!(null_space(&[], 3).len(), 3);
    }

    #[test]
    fn left_multiplication() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(vec_mat(&[int(1), int(-1)], &a, 2), vec![int(-2), int(-2)]);
        assert_eq!(transpose(&a, 2), m(&[&[1, 3], &[2, 4]]));
    }
}
