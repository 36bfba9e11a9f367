//! Dense linear algebra: a symmetric eigensolver backed by the system LAPACK
//! and a small pivoted solver for factor-regression normal equations.

use crate::error::LinalgError;
use ndarray::{Array1, Array2};

extern "C" {
    // LAPACK divide-and-conquer symmetric eigensolver.
    fn dsyevd_(
        jobz: *const u8,
        uplo: *const u8,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        w: *mut f64,
        work: *mut f64,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues sorted descending and the matching orthonormal
/// eigenvectors as columns (column `h` pairs with eigenvalue `h`). Only the
/// symmetric part of the input is read.
pub fn symmetric_eigen(matrix: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>), LinalgError> {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    if n == 0 {
        return Ok((Array1::zeros(0), Array2::zeros((0, 0))));
    }

    // dsyevd destroys its input; hand it a copy. The buffer is written in
    // logical row-major order, which LAPACK reads as the transpose - harmless
    // for a symmetric matrix.
    let mut a: Vec<f64> = matrix.iter().copied().collect();
    let mut w = vec![0.0f64; n];
    let ni = n as i32;
    let mut info = 0i32;

    // workspace query
    let mut work_size = 0.0f64;
    let mut iwork_size = 0i32;
    let query = -1i32;
    unsafe {
        dsyevd_(
            b"V".as_ptr(),
            b"L".as_ptr(),
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            &mut work_size,
            &query,
            &mut iwork_size,
            &query,
            &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::Lapack(info));
    }

    let lwork = work_size as i32;
    let liwork = iwork_size;
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        dsyevd_(
            b"V".as_ptr(),
            b"L".as_ptr(),
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    if info != 0 {
        return Err(LinalgError::Lapack(info));
    }

    // LAPACK returns eigenvalues ascending with eigenvector c stored in
    // column-major column c, i.e. at a[c*n..(c+1)*n]. Reverse to descending.
    let eigenvalues = Array1::from_iter(w.iter().rev().copied());
    let eigenvectors = Array2::from_shape_fn((n, n), |(i, h)| a[(n - 1 - h) * n + i]);
    Ok((eigenvalues, eigenvectors))
}

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
///
/// Intended for the small k-by-k systems of the factor regressions; returns
/// `Singular` when a pivot collapses relative to the matrix scale.
pub fn solve(a: &Array2<f64>, b: &Array1<f64>) -> Result<Array1<f64>, LinalgError> {
    let k = a.nrows();
    assert_eq!(k, a.ncols(), "matrix must be square");
    assert_eq!(k, b.len(), "right-hand side length mismatch");
    if k == 0 {
        return Ok(Array1::zeros(0));
    }

    let scale = a.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(LinalgError::Singular);
    }
    let pivot_floor = scale * 1e-12;

    let mut m: Vec<f64> = a.iter().copied().collect(); // row-major
    let mut rhs: Vec<f64> = b.to_vec();

    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&r1, &r2| m[r1 * k + col].abs().total_cmp(&m[r2 * k + col].abs()))
            .unwrap();
        if m[pivot_row * k + col].abs() <= pivot_floor {
            return Err(LinalgError::Singular);
        }
        if pivot_row != col {
            for c in 0..k {
                m.swap(col * k + c, pivot_row * k + c);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = m[col * k + col];
        for row in col + 1..k {
            let factor = m[row * k + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in col..k {
                m[row * k + c] -= factor * m[col * k + c];
            }
            rhs[row] -= factor * rhs[col];
        }
    }

    let mut x = vec![0.0f64; k];
    for row in (0..k).rev() {
        let mut acc = rhs[row];
        for c in row + 1..k {
            acc -= m[row * k + c] * x[c];
        }
        x[row] = acc / m[row * k + row];
    }
    Ok(Array1::from_vec(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn eigen_of_two_by_two() {
        let a = array![[2.0, 1.0], [1.0, 2.0]];
        let (vals, vecs) = symmetric_eigen(&a).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        // reconstruction
        for i in 0..2 {
            for j in 0..2 {
                let r: f64 = (0..2).map(|h| vals[h] * vecs[[i, h]] * vecs[[j, h]]).sum();
                assert!((r - a[[i, j]]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn solve_small_system() {
        let a = array![[4.0, 1.0], [1.0, 3.0]];
        let b = array![1.0, 2.0];
        let x = solve(&a, &b).unwrap();
        assert!((4.0 * x[0] + x[1] - 1.0).abs() < 1e-12);
        assert!((x[0] + 3.0 * x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn solve_reports_singular() {
        let a = array![[1.0, 2.0], [2.0, 4.0]];
        let b = array![1.0, 2.0];
        assert_eq!(solve(&a, &b), Err(LinalgError::Singular));
    }
}
