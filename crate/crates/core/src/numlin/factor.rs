//! Factorizations: Hermitian eigendecomposition (cyclic Jacobi), SVD,
//! pseudo-inverse, PSD square roots, coisometric completion, LU solves.
//!
//! Everything here is pure sequential f64 arithmetic, so results are
//! bit-reproducible for identical inputs.

use num_complex::Complex64;

use super::matrix::CMatrix;
use super::Tolerances;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Hermitian eigendecomposition: m = V diag(w) V* with unitary V and the
/// eigenvalues sorted descending. The phase of each eigenvector column is
/// fixed so its first significant component is real positive.
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

pub fn hermitian_eig(m: &CMatrix, tol: &Tolerances) -> Result<HermitianEig> {
    m.check_finite()?;
    if !m.is_square() {
        return Err(Error::NotHermitian {
            deviation: f64::INFINITY,
        });
    }
    let dev = m.hermitian_deviation();
    if dev > tol.residual_tol {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let sym = m.hermitian_part();
    Ok(jacobi_hermitian(&sym))
}

// Cyclic Jacobi with complex rotations. For each off-diagonal pivot the
// 2x2 block is phase-rotated to a real symmetric block and annihilated by
// a real Givens rotation.
fn jacobi_hermitian(input: &CMatrix) -> HermitianEig {
    let n = input.rows();
    if n == 0 {
        return HermitianEig {
            eigenvalues: vec![],
            eigenvectors: CMatrix::zeros(0, 0),
        };
    }
    let mut a = input.clone();
    let mut v = CMatrix::identity(n);
    let scale = input.norm_fro().max(1e-300);
    let stop = 1e-15 * scale;

    for _sweep in 0..120 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-18 * scale {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // unit phase of a_pq
                let u = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J differs from the identity only in the (p,q) plane:
                // J[p][p]=c, J[p][q]=s, J[q][p]=-s*conj(u), J[q][q]=c*conj(u)
                let uc = u.conj();
                // rows: A <- J* A
                for k in 0..n {
                    let rp = a[(p, k)];
                    let rq = a[(q, k)];
                    a[(p, k)] = rp * c - rq * (u * s);
                    a[(q, k)] = rp * s + rq * (u * c);
                }
                // cols: A <- A J
                for k in 0..n {
                    let cp = a[(k, p)];
                    let cq = a[(k, q)];
                    a[(k, p)] = cp * c - cq * (uc * s);
                    a[(k, q)] = cp * s + cq * (uc * c);
                }
                // accumulate V <- V J
                for k in 0..n {
                    let cp = v[(k, p)];
                    let cq = v[(k, q)];
                    v[(k, p)] = cp * c - cq * (uc * s);
                    v[(k, q)] = cp * s + cq * (uc * c);
                }
                // clean the annihilated pair
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    fix_column_phases(&mut vectors);
    HermitianEig {
        eigenvalues,
        eigenvectors: vectors,
    }
}

// First component of each column with magnitude above a relative floor is
// rotated to the positive real axis. Keeps coordinates reproducible.
fn fix_column_phases(v: &mut CMatrix) {
    let n = v.rows();
    for j in 0..v.cols() {
        let colmax = (0..n).map(|i| v[(i, j)].norm()).fold(0.0, f64::max);
        if colmax == 0.0 {
            continue;
        }
        for i in 0..n {
            let z = v[(i, j)];
            if z.norm() > 1e-8 * colmax {
                let phase = z.conj() / z.norm();
                for k in 0..n {
                    v[(k, j)] = v[(k, j)] * phase;
                }
                break;
            }
        }
    }
}

/// Thin singular value decomposition, m = sum_i s_i u_i v_i*, with the
/// singular values descending. Computed from the Hermitian eigenproblem of
/// the augmented matrix [[0, m], [m*, 0]], which resolves small singular
/// values to absolute eps accuracy.
pub struct Svd {
    pub singular_values: Vec<f64>,
    /// rows x k, columns are left singular vectors.
    pub u: CMatrix,
    /// cols x k, columns are right singular vectors.
    pub v: CMatrix,
}

pub fn svd(m: &CMatrix) -> Result<Svd> {
    m.check_finite()?;
    let (rows, cols) = (m.rows(), m.cols());
    let k = rows.min(cols);
    if k == 0 {
        return Ok(Svd {
            singular_values: vec![],
            u: CMatrix::zeros(rows, 0),
            v: CMatrix::zeros(cols, 0),
        });
    }
    let dim = rows + cols;
    let mut aug = CMatrix::zeros(dim, dim);
    for i in 0..rows {
        for j in 0..cols {
            aug[(i, rows + j)] = m[(i, j)];
            aug[(rows + j, i)] = m[(i, j)].conj();
        }
    }
    let eig = jacobi_hermitian(&aug);
    // The top-k eigenvalues are the singular values; eigenvectors split as
    // (u; v)/sqrt(2) blocks.
    let mut singular_values = Vec::with_capacity(k);
    let mut u = CMatrix::zeros(rows, k);
    let mut v = CMatrix::zeros(cols, k);
    for idx in 0..k {
        singular_values.push(eig.eigenvalues[idx].max(0.0));
        let mut unorm = 0.0;
        let mut vnorm = 0.0;
        for i in 0..rows {
            unorm += eig.eigenvectors[(i, idx)].norm_sqr();
        }
        for j in 0..cols {
            vnorm += eig.eigenvectors[(rows + j, idx)].norm_sqr();
        }
        let us = if unorm > 0.0 { 1.0 / unorm.sqrt() } else { 0.0 };
        let vs = if vnorm > 0.0 { 1.0 / vnorm.sqrt() } else { 0.0 };
        for i in 0..rows {
            u[(i, idx)] = eig.eigenvectors[(i, idx)] * us;
        }
        for j in 0..cols {
            v[(j, idx)] = eig.eigenvectors[(rows + j, idx)] * vs;
        }
    }
    fix_column_phases(&mut u);
    // re-derive v so that m v_i = s_i u_i holds with the fixed phases
    let madj = m.adjoint();
    for idx in 0..k {
        let s = singular_values[idx];
        if s > 1e-14 * singular_values[0].max(1e-300) {
            let ucol: Vec<Complex64> = (0..rows).map(|i| u[(i, idx)]).collect();
            let w = madj.apply(&ucol);
            for j in 0..cols {
                v[(j, idx)] = w[j] / s;
            }
        }
    }
    Ok(Svd {
        singular_values,
        u,
        v,
    })
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    svd(m).map(|s| s.singular_values[0]).unwrap_or(f64::NAN)
}

/// Moore-Penrose pseudo-inverse with relative rank cutoff.
pub fn pinv(m: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    m.check_finite()?;
    if m.is_empty() {
        return Ok(CMatrix::zeros(m.cols(), m.rows()));
    }
    let dec = svd(m)?;
    let smax = dec.singular_values.first().copied().unwrap_or(0.0);
    let cutoff = tol.rank_tol * smax;
    let mut out = CMatrix::zeros(m.cols(), m.rows());
    for (idx, &s) in dec.singular_values.iter().enumerate() {
        if s <= cutoff || s == 0.0 {
            continue;
        }
        let inv = 1.0 / s;
        for i in 0..m.cols() {
            let vi = dec.v[(i, idx)];
            for j in 0..m.rows() {
                out[(i, j)] += vi * dec.u[(j, idx)].conj() * inv;
            }
        }
    }
    Ok(out)
}

/// Numerical rank under the relative singular-value cutoff.
pub fn rank(m: &CMatrix, tol: &Tolerances) -> usize {
    if m.is_empty() {
        return 0;
    }
    let dec = match svd(m) {
        Ok(d) => d,
        Err(_) => return 0,
    };
    let smax = dec.singular_values.first().copied().unwrap_or(0.0);
    dec.singular_values
        .iter()
        .filter(|&&s| s > tol.rank_tol * smax && s > 0.0)
        .count()
}

/// Verdict of a positive-semidefiniteness test with the minimal eigenvalue
/// as witness.
#[derive(Debug, Clone, Copy)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

/// PSD test: true iff the minimal eigenvalue is at least
/// `-psd_tol * max(1, ||m||)`.
pub fn is_psd(m: &CMatrix, tol: &Tolerances) -> Result<PsdVerdict> {
    let eig = hermitian_eig(m, tol)?;
    let min_eigenvalue = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let scale = eig.eigenvalues.first().copied().unwrap_or(0.0).abs().max(1.0);
    Ok(PsdVerdict {
        is_psd: min_eigenvalue >= -tol.psd_tol * scale,
        min_eigenvalue,
    })
}

/// Factor a PSD matrix as factor* . factor with factor of shape r x n,
/// r the numerical rank. Eigen-route: rows of the factor are scaled
/// eigenvectors, so rank deficiency is handled exactly.
pub fn psd_factor(m: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let verdict = is_psd(m, tol)?;
    if !verdict.is_psd {
        return Err(Error::NotPsd {
            min_eigenvalue: verdict.min_eigenvalue,
        });
    }
    let eig = hermitian_eig(m, tol)?;
    let n = m.rows();
    let wmax = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let cutoff = tol.rank_tol * wmax;
    let kept: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i] > cutoff && eig.eigenvalues[i] > 0.0)
        .collect();
    let mut factor = CMatrix::zeros(kept.len(), n);
    for (row, &idx) in kept.iter().enumerate() {
        let s = eig.eigenvalues[idx].sqrt();
        for j in 0..n {
            // factor = diag(sqrt(w)) V*, so factor* factor = V diag(w) V*
            factor[(row, j)] = eig.eigenvectors[(j, idx)].conj() * s;
        }
    }
    Ok(factor)
}

/// Hermitian square root of a PSD matrix (negative eigenvalues within the
/// PSD tolerance are clamped to zero).
pub fn psd_sqrt(m: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let verdict = is_psd(m, tol)?;
    if !verdict.is_psd {
        return Err(Error::NotPsd {
            min_eigenvalue: verdict.min_eigenvalue,
        });
    }
    let eig = hermitian_eig(m, tol)?;
    let n = m.rows();
    let mut out = CMatrix::zeros(n, n);
    for idx in 0..n {
        let w = eig.eigenvalues[idx].max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            let vi = eig.eigenvectors[(i, idx)];
            for j in 0..n {
                out[(i, j)] += vi * eig.eigenvectors[(j, idx)].conj() * w;
            }
        }
    }
    Ok(out)
}

/// Result of completing a contraction to a coisometry.
pub struct CoisometryCompletion {
    /// [t | b] with completion . completion* = I.
    pub completion: CMatrix,
    /// number of appended columns (= rank of the defect I - t t*).
    pub added_cols: usize,
}

/// Complete a contraction t (k x h) to a coisometry [t | b] by appending
/// the minimal number of columns: b = V_g diag(sqrt(w_g)) over the defect
/// eigenvalues above the rank cutoff.
pub fn complete_to_coisometry(t: &CMatrix, tol: &Tolerances) -> Result<CoisometryCompletion> {
    t.check_finite()?;
    let norm = operator_norm(t);
    if norm > 1.0 + tol.residual_tol {
        return Err(Error::NotContraction { norm });
    }
    let k = t.rows();
    let defect = &CMatrix::identity(k) - &t.matmul(&t.adjoint());
    let eig = hermitian_eig(&defect, tol)?;
    let cutoff = tol.rank_tol * eig.eigenvalues.first().copied().unwrap_or(0.0).max(1.0);
    let kept: Vec<usize> = (0..k)
        .filter(|&i| eig.eigenvalues[i] > cutoff)
        .collect();
    let g = kept.len();
    let mut b = CMatrix::zeros(k, g);
    for (col, &idx) in kept.iter().enumerate() {
        let s = eig.eigenvalues[idx].max(0.0).sqrt();
        for i in 0..k {
            b[(i, col)] = eig.eigenvectors[(i, idx)] * s;
        }
    }
    Ok(CoisometryCompletion {
        completion: t.hstack(&b),
        added_cols: g,
    })
}

/// Solve a x = rhs (multiple right-hand sides) by LU with partial pivoting.
pub fn solve(a: &CMatrix, rhs: &CMatrix) -> Result<CMatrix> {
    a.check_finite()?;
    rhs.check_finite()?;
    assert!(a.is_square(), "solve requires a square matrix");
    assert_eq!(a.rows(), rhs.rows(), "solve shape mismatch");
    let n = a.rows();
    let mut lu = a.clone();
    let mut x = rhs.clone();
    let scale = a.max_abs().max(1e-300);
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lu[(col, col)].norm();
        for r in (col + 1)..n {
            let mag = lu[(r, col)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag <= 1e-14 * scale {
            return Err(Error::SingularResolvent {
                condition: f64::INFINITY,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = tmp;
            }
            for j in 0..x.cols() {
                let tmp = x[(col, j)];
                x[(col, j)] = x[(pivot_row, j)];
                x[(pivot_row, j)] = tmp;
            }
        }
        let piv = lu[(col, col)];
        for r in (col + 1)..n {
            let f = lu[(r, col)] / piv;
            if f == ZERO {
                continue;
            }
            for j in (col + 1)..n {
                let v = lu[(col, j)];
                lu[(r, j)] -= f * v;
            }
            for j in 0..x.cols() {
                let v = x[(col, j)];
                x[(r, j)] -= f * v;
            }
            lu[(r, col)] = ZERO;
        }
    }
    for col in (0..n).rev() {
        let piv = lu[(col, col)];
        for j in 0..x.cols() {
            let mut acc = x[(col, j)];
            for k in (col + 1)..n {
                acc -= lu[(col, k)] * x[(k, j)];
            }
            x[(col, j)] = acc / piv;
        }
    }
    Ok(x)
}

/// Inverse via LU.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    solve(a, &CMatrix::identity(a.rows()))
}

/// Condition number (largest/smallest singular value); infinite when
/// numerically singular.
pub fn condition_number(a: &CMatrix, tol: &Tolerances) -> f64 {
    match svd(a) {
        Ok(dec) => {
            let smax = dec.singular_values.first().copied().unwrap_or(0.0);
            let smin = dec.singular_values.last().copied().unwrap_or(0.0);
            if smin <= tol.rank_tol * smax {
                f64::INFINITY
            } else {
                smax / smin
            }
        }
        Err(_) => f64::NAN,
    }
}

/// Columns of an orthonormal basis of the range of m (left singular
/// vectors above the rank cutoff).
pub fn range_basis(m: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let dec = svd(m)?;
    let smax = dec.singular_values.first().copied().unwrap_or(0.0);
    let kept: Vec<usize> = dec
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s > tol.rank_tol * smax && s > 0.0)
        .map(|(i, _)| i)
        .collect();
    Ok(CMatrix::from_fn(m.rows(), kept.len(), |i, j| {
        dec.u[(i, kept[j])]
    }))
}

/// Columns of an orthonormal basis of (ker m)^perp (right singular vectors
/// above the rank cutoff).
pub fn cokernel_basis(m: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let dec = svd(m)?;
    let smax = dec.singular_values.first().copied().unwrap_or(0.0);
    let kept: Vec<usize> = dec
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s > tol.rank_tol * smax && s > 0.0)
        .map(|(i, _)| i)
        .collect();
    Ok(CMatrix::from_fn(m.cols(), kept.len(), |i, j| {
        dec.v[(i, kept[j])]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        })
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
        let a = random_matrix(rng, n, n);
        a.hermitian_part()
    }

    #[test]
    fn eig_identity() {
        let eig = hermitian_eig(&CMatrix::identity(3), &Tolerances::default()).unwrap();
        for w in &eig.eigenvalues {
            assert!((w - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_pauli_x() {
        let m = CMatrix::from_rows_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let eig = hermitian_eig(&m, &Tolerances::default()).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_hermitian(&mut rng, 6);
        let eig = hermitian_eig(&m, &Tolerances::default()).unwrap();
        let v = &eig.eigenvectors;
        let rec = &v.matmul(&CMatrix::diag_real(&eig.eigenvalues)) * &v.adjoint();
        assert!((&rec - &m).norm_fro() < 1e-12 * m.norm_fro().max(1.0));
        let vtv = &v.adjoint() * v;
        assert!((&vtv - &CMatrix::identity(6)).norm_fro() < 1e-12);
    }

    #[test]
    fn eig_rejects_nonhermitian() {
        let m = CMatrix::from_rows_real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            hermitian_eig(&m, &Tolerances::default()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eig_rejects_nan() {
        // from_fn does not validate entries, unlike from_vec
        let m = CMatrix::from_fn(1, 1, |_, _| c(f64::NAN, 0.0));
        assert!(matches!(
            hermitian_eig(&m, &Tolerances::default()),
            Err(Error::NotFinite)
        ));
    }

    #[test]
    fn svd_of_random_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(r, cn) in &[(4usize, 6usize), (6, 4), (5, 5), (1, 3)] {
            let m = random_matrix(&mut rng, r, cn);
            let dec = svd(&m).unwrap();
            let k = r.min(cn);
            let mut rec = CMatrix::zeros(r, cn);
            for idx in 0..k {
                let s = dec.singular_values[idx];
                for i in 0..r {
                    for j in 0..cn {
                        rec[(i, j)] += dec.u[(i, idx)] * dec.v[(j, idx)].conj() * s;
                    }
                }
            }
            assert!(
                (&rec - &m).norm_fro() < 1e-12 * m.norm_fro().max(1.0),
                "svd reconstruction failed for {}x{}",
                r,
                cn
            );
        }
    }

    #[test]
    fn pinv_diagonal() {
        let tol = Tolerances::default();
        let m = CMatrix::diag_real(&[2.0, 0.0]);
        let p = pinv(&m, &tol).unwrap();
        assert!((p[(0, 0)] - c(0.5, 0.0)).norm() < 1e-14);
        assert!(p[(1, 1)].norm() < 1e-14);
    }

    #[test]
    fn pinv_of_unitary_is_adjoint() {
        let tol = Tolerances::default();
        // a simple unitary: phase times permutation
        let m = CMatrix::from_fn(2, 2, |i, j| {
            if (i + 1) % 2 == j {
                c(0.0, 1.0)
            } else {
                ZERO
            }
        });
        let p = pinv(&m, &tol).unwrap();
        assert!((&p - &m.adjoint()).norm_fro() < 1e-13);
    }

    #[test]
    fn pinv_satisfies_penrose() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 4, 6);
        let p = pinv(&m, &tol).unwrap();
        let mpm = &m.matmul(&p) * &m;
        let pmp = &p.matmul(&m) * &p;
        assert!((&mpm - &m).norm_fro() < 1e-10);
        assert!((&pmp - &p).norm_fro() < 1e-10);
        let mp = m.matmul(&p);
        let pm = p.matmul(&m);
        assert!((&mp - &mp.adjoint()).norm_fro() < 1e-10);
        assert!((&pm - &pm.adjoint()).norm_fro() < 1e-10);
    }

    #[test]
    fn psd_verdicts() {
        let tol = Tolerances::default();
        assert!(is_psd(&CMatrix::diag_real(&[0.0, 5.0 / 32.0]), &tol)
            .unwrap()
            .is_psd);
        let v = is_psd(&CMatrix::from_rows_real(&[&[1.0, 2.0], &[2.0, 1.0]]), &tol).unwrap();
        assert!(!v.is_psd);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-12);
        assert!(is_psd(&CMatrix::zeros(3, 3), &tol).unwrap().is_psd);
    }

    #[test]
    fn psd_factor_examples() {
        let tol = Tolerances::default();
        let m = CMatrix::diag_real(&[0.0, 5.0 / 32.0]);
        let f = psd_factor(&m, &tol).unwrap();
        assert_eq!(f.rows(), 1);
        assert!(f[(0, 0)].norm() < 1e-14);
        assert!((f[(0, 1)].norm() - (5.0f64 / 32.0).sqrt()).abs() < 1e-14);

        let id = CMatrix::identity(4);
        assert_eq!(psd_factor(&id, &tol).unwrap().rows(), 4);

        // rank-1 vv*
        let v = CMatrix::from_vec(3, 1, vec![c(1.0, 0.5), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let vv = v.matmul(&v.adjoint());
        let f = psd_factor(&vv, &tol).unwrap();
        assert_eq!(f.rows(), 1);
        let rec = &f.adjoint() * &f;
        assert!((&rec - &vv).norm_fro() < 1e-12 * vv.norm_fro());

        assert!(matches!(
            psd_factor(&CMatrix::from_rows_real(&[&[1.0, 2.0], &[2.0, 1.0]]), &tol),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn coisometry_completion_cases() {
        let tol = Tolerances::default();
        // already a coisometry: unitary 2x2
        let u = CMatrix::from_rows_real(&[&[0.6, 0.8], &[-0.8, 0.6]]);
        let comp = complete_to_coisometry(&u, &tol).unwrap();
        assert_eq!(comp.added_cols, 0);
        assert_eq!(comp.completion, u);

        // zero matrix: full defect
        let z = CMatrix::zeros(2, 3);
        let comp = complete_to_coisometry(&z, &tol).unwrap();
        assert_eq!(comp.added_cols, 2);
        let b = comp.completion.submatrix(0, 3, 2, 2);
        assert!((&b.matmul(&b.adjoint()) - &CMatrix::identity(2)).norm_fro() < 1e-12);

        // diag(1/2): defect square root sqrt(3)/2
        let t = CMatrix::diag_real(&[0.5]);
        let comp = complete_to_coisometry(&t, &tol).unwrap();
        assert_eq!(comp.added_cols, 1);
        assert!((comp.completion[(0, 1)].norm() - 3.0f64.sqrt() / 2.0).abs() < 1e-14);

        assert!(matches!(
            complete_to_coisometry(&CMatrix::diag_real(&[2.0]), &tol),
            Err(Error::NotContraction { .. })
        ));
    }

    #[test]
    fn coisometry_completion_random_contractions() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let raw = random_matrix(&mut rng, 3, 4);
            let t = raw.scale_real(0.99 / operator_norm(&raw));
            let comp = complete_to_coisometry(&t, &tol).unwrap();
            let uu = comp.completion.matmul(&comp.completion.adjoint());
            assert!((&uu - &CMatrix::identity(3)).norm_fro() < 1e-10);
        }
    }

    #[test]
    fn solve_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 5, 5);
        let inv = inverse(&a).unwrap();
        assert!((&a.matmul(&inv) - &CMatrix::identity(5)).norm_fro() < 1e-11);
        assert!(matches!(
            solve(&CMatrix::zeros(2, 2), &CMatrix::identity(2)),
            Err(Error::SingularResolvent { .. })
        ));
    }

    #[test]
    fn pinv_involution_on_full_rank() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matrix(&mut rng, 4, 4);
        let pp = pinv(&pinv(&m, &tol).unwrap(), &tol).unwrap();
        assert!((&pp - &m).norm_fro() < 1e-10 * m.norm_fro());
    }
}
