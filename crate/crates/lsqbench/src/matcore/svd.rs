//! Singular value decomposition by one-sided Jacobi rotations.
//!
//! The working copy holds the input's columns as contiguous rows. Cyclic
//! sweeps apply plane rotations that orthogonalize column pairs; a sweep with
//! no rotation above the off-diagonal tolerance means convergence. One-sided
//! Jacobi is chosen for its high relative accuracy on small and
//! ill-conditioned matrices.

use crate::error::{Error, Result};
use crate::matcore::matrix::{dot_slices, Matrix, Vector};

/// Rotations stop once every normalized off-diagonal Gram entry
/// |a_pq| / sqrt(a_pp * a_qq) falls below this.
pub const JACOBI_TOL: f64 = 1e-14;

/// Hard cap on the number of cyclic sweeps.
pub const JACOBI_SWEEP_CAP: usize = 60;

/// Result of a singular value decomposition `a = u * diag(s) * vt` with
/// `u` of shape rows x k (orthonormal columns), `s` of length k sorted
/// non-increasing and non-negative, and `vt` of shape k x cols (orthonormal
/// rows), where k = min(rows, cols).
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: Matrix,
    pub s: Vector,
    pub vt: Matrix,
}

/// Decomposes `a`. Fails only if the rotation sweeps do not converge within
/// [`JACOBI_SWEEP_CAP`] sweeps.
pub fn svd(a: &Matrix) -> Result<SvdResult> {
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        // Wide input: decompose the transpose and swap the factors.
        let t = svd_tall(&a.transpose())?;
        Ok(SvdResult {
            u: t.vt.transpose(),
            s: t.s,
            vt: t.u.transpose(),
        })
    }
}

fn svd_tall(a: &Matrix) -> Result<SvdResult> {
    let n = a.rows();
    let d = a.cols();
    debug_assert!(n >= d);

    // Rows of `work` are the columns of `a`; rows of `vt_acc` accumulate the
    // right singular vectors.
    let mut work = a.transpose();
    let mut vt_acc = Matrix::identity(d);
    let mut norms_sq = vec![0.0; d];
    let mut converged = false;

    for _sweep in 0..JACOBI_SWEEP_CAP {
        for (j, nrm) in norms_sq.iter_mut().enumerate() {
            let r = work.row(j);
            *nrm = dot_slices(r, r);
        }
        let mut rotated = false;
        for p in 0..d.saturating_sub(1) {
            for q in (p + 1)..d {
                let app = norms_sq[p];
                let aqq = norms_sq[q];
                let apq = dot_slices(work.row(p), work.row(q));
                if apq * apq <= JACOBI_TOL * JACOBI_TOL * app * aqq {
                    continue;
                }
                rotated = true;

                // Rotation angle that zeroes the (p, q) Gram entry.
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;

                rotate_rows(&mut work, p, q, c, s);
                rotate_rows(&mut vt_acc, p, q, c, s);
                norms_sq[p] = app - t * apq;
                norms_sq[q] = aqq + t * apq;
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }

    if !converged {
        let mut worst: f64 = 0.0;
        for p in 0..d.saturating_sub(1) {
            for q in (p + 1)..d {
                let app = dot_slices(work.row(p), work.row(p));
                let aqq = dot_slices(work.row(q), work.row(q));
                if app == 0.0 || aqq == 0.0 {
                    continue;
                }
                let apq = dot_slices(work.row(p), work.row(q));
                worst = worst.max(apq.abs() / (app * aqq).sqrt());
            }
        }
        return Err(Error::SvdNonConvergence {
            sweeps: JACOBI_SWEEP_CAP,
            worst_ratio: worst,
        });
    }

    // Extract singular values and order everything by descending magnitude.
    let mut sigma: Vec<f64> = (0..d)
        .map(|j| {
            let r = work.row(j);
            dot_slices(r, r).sqrt()
        })
        .collect();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).expect("norms are finite"));

    let mut vt = Matrix::zeros(d, a.cols());
    for (new_row, &old_row) in order.iter().enumerate() {
        vt.row_mut(new_row).copy_from_slice(vt_acc.row(old_row));
    }
    sigma = order.iter().map(|&j| sigma[j]).collect();

    // Left singular vectors: normalized working rows, written as columns.
    // Numerically zero singular values leave junk directions behind, so those
    // columns are replaced by an orthonormal completion of the basis.
    let zero_tol = f64::EPSILON * (n.max(d) as f64) * sigma[0];
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(d);
    for (rank_pos, &old_row) in order.iter().enumerate() {
        if sigma[rank_pos] > zero_tol {
            let s_inv = 1.0 / sigma[rank_pos];
            u_cols.push(work.row(old_row).iter().map(|v| v * s_inv).collect());
        } else {
            u_cols.push(Vec::new()); // completed below
        }
    }
    complete_orthonormal_columns(&mut u_cols, n);

    let mut u = Matrix::zeros(n, d);
    for (j, col) in u_cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            u.set(i, j, v);
        }
    }

    Ok(SvdResult {
        u,
        s: Vector::new(sigma),
        vt,
    })
}

fn rotate_rows(m: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    debug_assert!(p < q);
    let cols = m.cols();
    let (head, tail) = m.data_mut().split_at_mut(q * cols);
    let row_p = &mut head[p * cols..(p + 1) * cols];
    let row_q = &mut tail[..cols];
    for (wp, wq) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let x = *wp;
        let y = *wq;
        *wp = c * x - s * y;
        *wq = s * x + c * y;
    }
}

/// Fills the empty slots of `cols` with unit vectors orthogonal to every
/// filled column, via Gram-Schmidt against coordinate basis candidates.
fn complete_orthonormal_columns(cols: &mut [Vec<f64>], n: usize) {
    let needs_fill: Vec<usize> = (0..cols.len()).filter(|&j| cols[j].is_empty()).collect();
    let mut next_candidate = 0;
    for j in needs_fill {
        let mut accepted = None;
        while next_candidate < n {
            let mut v = vec![0.0; n];
            v[next_candidate] = 1.0;
            next_candidate += 1;
            for _pass in 0..2 {
                for other in cols.iter().filter(|c| !c.is_empty()) {
                    let proj = dot_slices(&v, other);
                    for (vi, oi) in v.iter_mut().zip(other) {
                        *vi -= proj * oi;
                    }
                }
            }
            let nrm = dot_slices(&v, &v).sqrt();
            if nrm > 0.1 {
                for vi in v.iter_mut() {
                    *vi /= nrm;
                }
                accepted = Some(v);
                break;
            }
        }
        cols[j] = accepted.expect("fewer than n orthonormal columns always leave room");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::matrix::Matrix;
    use crate::matcore::rng::{gaussian_matrix, Rng};

    fn reconstruction(r: &SvdResult) -> Matrix {
        let k = r.s.len();
        let mut scaled = r.u.clone();
        for j in 0..k {
            for i in 0..scaled.rows() {
                scaled.set(i, j, scaled.get(i, j) * r.s.get(j));
            }
        }
        scaled.mat_mul(&r.vt).unwrap()
    }

    fn assert_svd_invariants(a: &Matrix, r: &SvdResult) {
        let k = a.rows().min(a.cols());
        assert_eq!(r.s.len(), k);
        for j in 0..k {
            assert!(r.s.get(j) >= 0.0);
            if j > 0 {
                assert!(r.s.get(j - 1) >= r.s.get(j), "not sorted at {j}");
            }
        }
        let utu = r.u.transpose().mat_mul(&r.u).unwrap();
        let u_res = utu.sub(&Matrix::identity(k)).unwrap().frobenius_norm();
        assert!(u_res <= 1e-10 * k as f64, "u orthonormality residual {u_res}");
        let vvt = r.vt.mat_mul(&r.vt.transpose()).unwrap();
        let v_res = vvt.sub(&Matrix::identity(k)).unwrap().frobenius_norm();
        assert!(v_res <= 1e-10 * k as f64, "vt orthonormality residual {v_res}");
        let rec = reconstruction(r).sub(a).unwrap().frobenius_norm();
        assert!(
            rec <= 1e-8 * (1.0 + a.frobenius_norm()),
            "reconstruction residual {rec}"
        );
    }

    #[test]
    fn diagonal_with_negative_entry() {
        let a = Matrix::from_rows(&[&[3.0, 0.0], &[0.0, -2.0]]);
        let r = svd(&a).unwrap();
        assert!((r.s.get(0) - 3.0).abs() <= 1e-14);
        assert!((r.s.get(1) - 2.0).abs() <= 1e-14);
        assert_svd_invariants(&a, &r);
    }

    #[test]
    fn permutation_matrix_has_unit_spectrum() {
        let a = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = svd(&a).unwrap();
        assert!((r.s.get(0) - 1.0).abs() <= 1e-14);
        assert!((r.s.get(1) - 1.0).abs() <= 1e-14);
        assert_svd_invariants(&a, &r);
    }

    #[test]
    fn random_tall_reconstructs_tightly() {
        let mut rng = Rng::from_seed(99);
        let a = gaussian_matrix(8, 5, &mut rng);
        let r = svd(&a).unwrap();
        let rel = reconstruction(&r).sub(&a).unwrap().frobenius_norm() / a.frobenius_norm();
        assert!(rel <= 1e-10, "relative residual {rel}");
        assert_svd_invariants(&a, &r);
    }

    #[test]
    fn wide_matrix_goes_through_transpose_route() {
        let mut rng = Rng::from_seed(100);
        let a = gaussian_matrix(3, 7, &mut rng);
        let r = svd(&a).unwrap();
        assert_eq!(r.u.rows(), 3);
        assert_eq!(r.u.cols(), 3);
        assert_eq!(r.vt.rows(), 3);
        assert_eq!(r.vt.cols(), 7);
        assert_svd_invariants(&a, &r);
    }

    #[test]
    fn rank_deficient_duplicate_columns() {
        let mut rng = Rng::from_seed(101);
        let base = gaussian_matrix(6, 3, &mut rng);
        let mut a = Matrix::zeros(6, 4);
        for i in 0..6 {
            for j in 0..3 {
                a.set(i, j, base.get(i, j));
            }
            a.set(i, 3, base.get(i, 0)); // duplicate of column 0
        }
        let r = svd(&a).unwrap();
        let zero_tol = f64::EPSILON * 6.0 * r.s.get(0);
        assert!(r.s.get(3) <= zero_tol, "smallest should truncate to zero");
        assert_svd_invariants(&a, &r);
    }

    #[test]
    fn zero_matrix_decomposes() {
        let a = Matrix::zeros(4, 3);
        let r = svd(&a).unwrap();
        for j in 0..3 {
            assert_eq!(r.s.get(j), 0.0);
        }
        assert_svd_invariants(&a, &r);
    }

    #[test]
    fn one_by_one() {
        let a = Matrix::from_rows(&[&[-5.0]]);
        let r = svd(&a).unwrap();
        assert!((r.s.get(0) - 5.0).abs() <= 1e-15);
        assert_svd_invariants(&a, &r);
    }

    #[test]
    fn four_way_invariants_across_shapes() {
        let mut rng = Rng::from_seed(555);
        for &(rows, cols) in &[(5, 5), (12, 4), (4, 12), (30, 7), (9, 2)] {
            let a = gaussian_matrix(rows, cols, &mut rng);
            let r = svd(&a).unwrap();
            assert_svd_invariants(&a, &r);
        }
    }

    #[test]
    fn ill_conditioned_spectrum_recovered_with_high_relative_accuracy() {
        // Build a matrix with known singular values 1, 1e-3, 1e-6 from
        // rotations, then check relative recovery.
        let mut rng = Rng::from_seed(321);
        let g1 = gaussian_matrix(9, 3, &mut rng);
        let (q1, _) = crate::matcore::qr::householder_qr(&g1).unwrap();
        let g2 = gaussian_matrix(3, 3, &mut rng);
        let (q2, _) = crate::matcore::qr::householder_qr(&g2).unwrap();
        let sv = [1.0, 1e-3, 1e-6];
        let mut scaled = q1.clone();
        for (j, &s) in sv.iter().enumerate() {
            for i in 0..9 {
                scaled.set(i, j, scaled.get(i, j) * s);
            }
        }
        let a = scaled.mat_mul(&q2.transpose()).unwrap();
        let r = svd(&a).unwrap();
        for (j, &s) in sv.iter().enumerate() {
            let rel = (r.s.get(j) - s).abs() / s;
            assert!(rel <= 1e-10, "singular value {j} relative error {rel}");
        }
    }
}
