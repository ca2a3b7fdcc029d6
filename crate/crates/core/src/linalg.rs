//! Exact nullspace over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Basis of `{ v : A v = 0 }` for a dense `rows × cols` matrix, one vector per
/// free column of the reduced row echelon form. The free variable of each
/// vector is set to 1.
pub fn nullspace(matrix: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = matrix.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = BigRational::one() / a[row][col].clone();
        for v in a[row].iter_mut().skip(col) {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    if !a[row][c].is_zero() {
                        let delta = &factor * &a[row][c];
                        a[r][c] -= delta;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..cols {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| integer(v)).collect())
            .collect()
    }

    fn apply(a: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
        a.iter()
            .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = nullspace(&a, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(apply(&a, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = mat(&[&[1, 0], &[0, 1]]);
        assert!(nullspace(&a, 2).is_empty());
    }

    #[test]
    fn empty_matrix_kernel_is_everything() {
        assert_eq!(nullspace(&[], 3).len(), 3);
    }
}
