//! Contractively included subspaces presented as range spaces.
//!
//! A contraction C: C_space -> ambient carries the range norm
//! ||x|| = inf { ||y|| : Cy = x }, realized through the pseudo-inverse:
//! the minimal preimage is C^+ x, orthogonal to ker C. Everything here
//! works on orthonormal coordinates of the ambient space.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numlin::{self, CMatrix, Tolerances};
use crate::rkhs::{OperatorData, OpSpace};

/// A contraction into an ambient space together with its cached Gram
/// operator C C*, pseudo-inverse, and minimal-preimage projector.
#[derive(Debug, Clone)]
pub struct RangeSpace {
    c_op: OperatorData,
    gram: CMatrix,
    pinv: CMatrix,
    preimage_projector: CMatrix,
    tol: Tolerances,
}

impl RangeSpace {
    pub fn new(c_op: OperatorData, tol: &Tolerances) -> Result<Self> {
        let norm = c_op.norm();
        if norm > 1.0 + tol.residual_tol {
            return Err(Error::NotContraction { norm });
        }
        let gram = c_op.gram();
        let pinv = numlin::pinv(&c_op.onb, tol)?;
        let preimage_projector = pinv.matmul(&c_op.onb);
        Ok(RangeSpace {
            c_op,
            gram,
            pinv,
            preimage_projector,
            tol: *tol,
        })
    }

    pub fn ambient(&self) -> &OpSpace {
        &self.c_op.codomain
    }

    pub fn domain(&self) -> &OpSpace {
        &self.c_op.domain
    }

    pub fn c_op(&self) -> &OperatorData {
        &self.c_op
    }

    /// C C* on the ambient space; ranges and range norms are functions of
    /// this operator alone.
    pub fn gram_op(&self) -> &CMatrix {
        &self.gram
    }

    pub fn pinv_c(&self) -> &CMatrix {
        &self.pinv
    }

    /// Projection onto (ker C)^perp in the presenting space.
    pub fn preimage_projector(&self) -> &CMatrix {
        &self.preimage_projector
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Numerical dimension of the range.
    pub fn dim(&self) -> usize {
        numlin::rank(&self.c_op.onb, &self.tol)
    }

    /// Minimal preimage of an ambient vector, or NotInRange.
    pub fn minimal_preimage(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let y = self.pinv.apply(x);
        let back = self.c_op.onb.apply(&y);
        let mut res2 = 0.0;
        let mut x2 = 0.0;
        for i in 0..x.len() {
            res2 += (back[i] - x[i]).norm_sqr();
            x2 += x[i].norm_sqr();
        }
        let residual = res2.sqrt() / x2.sqrt().max(1e-300);
        if x2 > 0.0 && residual > self.tol.residual_tol {
            return Err(Error::NotInRange { residual });
        }
        Ok(y)
    }

    /// Range norm ||C^+ x|| after the membership check.
    pub fn range_norm(&self, x: &[Complex64]) -> Result<f64> {
        let y = self.minimal_preimage(x)?;
        Ok(y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
    }
}

/// Verdict of the range-equality test R_{C1} = R_{C2}.
#[derive(Debug, Clone, Copy)]
pub struct SameRangeVerdict {
    pub equal: bool,
    pub gram_residual: f64,
}

/// Ranges (with norms) coincide iff the Gram operators coincide.
pub fn same_range(rs1: &RangeSpace, rs2: &RangeSpace) -> Result<SameRangeVerdict> {
    if rs1.ambient() != rs2.ambient() {
        return Err(Error::SpaceMismatch(
            "range spaces live in different ambients".into(),
        ));
    }
    let residual = numlin::operator_norm(&(&rs1.gram - &rs2.gram));
    let scale = numlin::operator_norm(&rs1.gram).max(numlin::operator_norm(&rs2.gram));
    let equal = residual <= rs1.tol.residual_tol * scale.max(1e-3);
    Ok(SameRangeVerdict {
        equal,
        gram_residual: residual,
    })
}

/// Minimal-norm solution of the Douglas factorization problem.
#[derive(Debug)]
pub struct DouglasSolution {
    /// the contraction D with T C1 = C2 D
    pub d: OperatorData,
    /// || T C1 - C2 D ||
    pub factor_residual: f64,
    /// min eigenvalue of C2 C2* - T C1 C1* T* (the certified condition)
    pub condition_witness: f64,
}

/// Solve T C1 = C2 D for a contraction D, which exists iff
/// T C1 C1* T* <= C2 C2*. The minimal solution is D = C2^+ T C1, zero on
/// the orthogonal complement of ker C2 preimages.
pub fn douglas_solve(
    t: &OperatorData,
    rs1: &RangeSpace,
    rs2: &RangeSpace,
) -> Result<DouglasSolution> {
    if &t.domain != rs1.ambient() || &t.codomain != rs2.ambient() {
        return Err(Error::SpaceMismatch(
            "operator does not map ambient(rs1) to ambient(rs2)".into(),
        ));
    }
    let tol = rs1.tol;
    let tg = t.onb.matmul(&rs1.gram).matmul(&t.onb.adjoint());
    let slack = &rs2.gram - &tg;
    let verdict = numlin::is_psd(&slack, &tol)?;
    if !verdict.is_psd {
        return Err(Error::DouglasFails {
            min_eigenvalue: verdict.min_eigenvalue,
        });
    }
    let tc1 = t.onb.matmul(&rs1.c_op.onb);
    let d_mat = rs2.pinv.matmul(&tc1);
    let factor_residual = numlin::operator_norm(&(&rs2.c_op.onb.matmul(&d_mat) - &tc1));
    let d = OperatorData::new(rs1.c_op.domain.clone(), rs2.c_op.domain.clone(), d_mat)?;
    Ok(DouglasSolution {
        d,
        factor_residual,
        condition_witness: verdict.min_eigenvalue,
    })
}

/// For a violated Douglas condition, exhibit an ambient direction along
/// which T expands the range norm: the eigenvector of the most negative
/// eigenvalue of C2 C2* - T C1 C1* T*.
pub fn douglas_violation_witness(
    t: &OperatorData,
    rs1: &RangeSpace,
    rs2: &RangeSpace,
) -> Result<Option<Vec<Complex64>>> {
    let tol = rs1.tol;
    let tg = t.onb.matmul(&rs1.gram).matmul(&t.onb.adjoint());
    let slack = &rs2.gram - &tg;
    let eig = numlin::hermitian_eig(&slack, &tol)?;
    let n = slack.rows();
    match eig.eigenvalues.last() {
        Some(&w) if w < -tol.psd_tol * numlin::operator_norm(&slack).max(1.0) => {
            Ok(Some(eig.eigenvectors.column(n - 1)))
        }
        _ => Ok(None),
    }
}

/// The complementary space: the range of (I - C C*)^{1/2}.
pub fn complementary(rs: &RangeSpace) -> Result<RangeSpace> {
    let n = rs.gram.rows();
    let defect = &CMatrix::identity(n) - &rs.gram;
    let sqrt = numlin::psd_sqrt(&defect, &rs.tol)?;
    let c = OperatorData::new(rs.ambient().clone(), rs.ambient().clone(), sqrt)?;
    RangeSpace::new(c, &rs.tol)
}

/// The canonical decomposition x = x' + x'' with x' = C C* x in the range
/// and x'' = (I - C C*) x in the complementary space, together with both
/// subspace norms. Satisfies ||x||^2 = ||x'||_range^2 + ||x''||_comp^2.
#[derive(Debug, Clone)]
pub struct ComplementDecomposition {
    pub x_range: Vec<Complex64>,
    pub x_comp: Vec<Complex64>,
    pub range_norm: f64,
    pub comp_norm: f64,
    pub pythagoras_residual: f64,
}

pub fn complement_decompose(rs: &RangeSpace, x: &[Complex64]) -> Result<ComplementDecomposition> {
    if x.len() != rs.ambient().total_dim() {
        return Err(Error::SpaceMismatch(
            "vector length does not match the ambient space".into(),
        ));
    }
    let cstar_x = rs.c_op.onb.adjoint().apply(x);
    let x_range = rs.c_op.onb.apply(&cstar_x);
    let x_comp: Vec<Complex64> = x
        .iter()
        .zip(&x_range)
        .map(|(a, b)| a - b)
        .collect();
    // ||x'||_range = ||C* x||: C* x is the minimal preimage of C C* x
    let range_norm = cstar_x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    // ||x''||_comp = ||(I - C C*)^{1/2} x||
    let comp = complementary(rs)?;
    let sx = comp.c_op.onb.apply(x);
    let comp_norm = sx.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let x_norm_sqr: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    let pythagoras_residual =
        (x_norm_sqr - range_norm * range_norm - comp_norm * comp_norm).abs();
    Ok(ComplementDecomposition {
        x_range,
        x_comp,
        range_norm,
        comp_norm,
        pythagoras_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn euclid_op(mat: CMatrix) -> OperatorData {
        OperatorData::new(
            OpSpace::Euclidean(mat.cols()),
            OpSpace::Euclidean(mat.rows()),
            mat,
        )
        .unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        })
    }

    fn random_contraction(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> OperatorData {
        let raw = random_matrix(rng, rows, cols);
        let norm = numlin::operator_norm(&raw);
        euclid_op(raw.scale_real(0.95 / norm))
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect()
    }

    #[test]
    fn range_norm_unitary_and_scaled() {
        let tol = Tolerances::default();
        let u = euclid_op(CMatrix::from_rows_real(&[&[0.6, 0.8], &[-0.8, 0.6]]));
        let rs = RangeSpace::new(u, &tol).unwrap();
        let x = vec![c(1.0, 2.0), c(-0.5, 0.0)];
        let nx: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((rs.range_norm(&x).unwrap() - nx).abs() < 1e-12);

        let half = euclid_op(CMatrix::identity(2).scale_real(0.5));
        let rs = RangeSpace::new(half, &tol).unwrap();
        assert!((rs.range_norm(&x).unwrap() - 2.0 * nx).abs() < 1e-12);
    }

    #[test]
    fn range_norm_rejects_outside_vectors() {
        let tol = Tolerances::default();
        // rank-1 contraction in C^2
        let m = CMatrix::from_rows_real(&[&[0.7, 0.0], &[0.0, 0.0]]);
        let rs = RangeSpace::new(euclid_op(m), &tol).unwrap();
        let err = rs.range_norm(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(err, Err(Error::NotInRange { .. })));
    }

    #[test]
    fn contraction_requirement() {
        let tol = Tolerances::default();
        let big = euclid_op(CMatrix::identity(2).scale_real(1.5));
        assert!(matches!(
            RangeSpace::new(big, &tol),
            Err(Error::NotContraction { .. })
        ));
    }

    #[test]
    fn same_range_under_coisometry_and_scaling() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c1 = random_contraction(&mut rng, 3, 3);
        // coisometry from a bigger space: orthonormal rows 3x5
        let raw = random_matrix(&mut rng, 3, 5);
        let gram_inv_half = {
            let g = raw.matmul(&raw.adjoint());
            let eig = numlin::hermitian_eig(&g, &tol).unwrap();
            let mut m = CMatrix::zeros(3, 3);
            for idx in 0..3 {
                let w = eig.eigenvalues[idx].powf(-0.5);
                for i in 0..3 {
                    for j in 0..3 {
                        m[(i, j)] += eig.eigenvectors[(i, idx)]
                            * eig.eigenvectors[(j, idx)].conj()
                            * w;
                    }
                }
            }
            m
        };
        let v = gram_inv_half.matmul(&raw); // orthonormal rows
        let c2 = euclid_op(c1.onb.matmul(&v));
        let rs1 = RangeSpace::new(c1.clone(), &tol).unwrap();
        let rs2 = RangeSpace::new(c2, &tol).unwrap();
        assert!(same_range(&rs1, &rs2).unwrap().equal);

        let halved = euclid_op(c1.onb.scale_real(0.5));
        let rs3 = RangeSpace::new(halved, &tol).unwrap();
        assert!(!same_range(&rs1, &rs3).unwrap().equal);
    }

    #[test]
    fn same_range_polar_form() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cop = random_contraction(&mut rng, 4, 2);
        let rs1 = RangeSpace::new(cop.clone(), &tol).unwrap();
        // (C C*)^{1/2} has the same Gram
        let sqrt = numlin::psd_sqrt(&cop.gram(), &tol).unwrap();
        let rs2 = RangeSpace::new(euclid_op(sqrt), &tol).unwrap();
        let v = same_range(&rs1, &rs2).unwrap();
        assert!(v.equal, "gram residual {}", v.gram_residual);
    }

    #[test]
    fn same_range_norms_agree_on_members() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // squaring C in (C C*)^{1/2} halves the working digits, so keep the
        // fixture away from rank deficiency
        let cop = loop {
            let cand = random_contraction(&mut rng, 4, 3);
            let sv = numlin::svd(&cand.onb).unwrap().singular_values;
            if *sv.last().unwrap() > 0.1 * sv[0] {
                break cand;
            }
        };
        let rs1 = RangeSpace::new(cop.clone(), &tol).unwrap();
        let sqrt = numlin::psd_sqrt(&cop.gram(), &tol).unwrap();
        let rs2 = RangeSpace::new(euclid_op(sqrt), &tol).unwrap();
        for _ in 0..5 {
            let y = random_vec(&mut rng, 3);
            let x = cop.onb.apply(&y);
            let n1 = rs1.range_norm(&x).unwrap();
            let n2 = rs2.range_norm(&x).unwrap();
            assert!((n1 - n2).abs() < 1e-9 * n1.max(1.0));
        }
    }

    #[test]
    fn ambient_norm_below_range_norm() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let cop = random_contraction(&mut rng, 4, 3);
            let rs = RangeSpace::new(cop.clone(), &tol).unwrap();
            let y = random_vec(&mut rng, 3);
            let x = cop.onb.apply(&y);
            let ambient: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let range = rs.range_norm(&x).unwrap();
            assert!(ambient <= range + 1e-10);
        }
    }

    #[test]
    fn douglas_identity_and_failure() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let cop = random_contraction(&mut rng, 3, 4);
        let rs = RangeSpace::new(cop, &tol).unwrap();
        let t = euclid_op(CMatrix::identity(3));
        let sol = douglas_solve(&t, &rs, &rs).unwrap();
        // D is the projection onto (ker C)^perp
        assert!((&sol.d.onb - rs.preimage_projector()).norm_fro() < 1e-10);
        assert!(sol.factor_residual < 1e-10);
        assert!(sol.d.norm() <= 1.0 + 1e-10);

        // T = 2I against C = I/2 in one dimension: 4 * 1/4 <= 1/4 fails
        let half = RangeSpace::new(euclid_op(CMatrix::diag_real(&[0.5])), &tol).unwrap();
        let t2 = euclid_op(CMatrix::diag_real(&[2.0]));
        assert!(matches!(
            douglas_solve(&t2, &half, &half),
            Err(Error::DouglasFails { .. })
        ));
        assert!(douglas_violation_witness(&t2, &half, &half)
            .unwrap()
            .is_some());
    }

    #[test]
    fn douglas_agrees_with_psd_condition_both_directions() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut succeeded = 0;
        let mut failed = 0;
        for _ in 0..30 {
            let c1 = random_contraction(&mut rng, 3, 3);
            let c2 = random_contraction(&mut rng, 3, 3);
            let t = random_contraction(&mut rng, 3, 3);
            let rs1 = RangeSpace::new(c1, &tol).unwrap();
            let rs2 = RangeSpace::new(c2, &tol).unwrap();
            match douglas_solve(&t, &rs1, &rs2) {
                Ok(sol) => {
                    succeeded += 1;
                    assert!(sol.d.norm() <= 1.0 + 1e-8);
                    assert!(sol.factor_residual < 1e-8);
                }
                Err(Error::DouglasFails { .. }) => {
                    failed += 1;
                    // the witness direction expands the range norm
                    let w = douglas_violation_witness(&t, &rs1, &rs2).unwrap().unwrap();
                    let g1 = rs1.gram_op();
                    let tg = t.onb.matmul(g1).matmul(&t.onb.adjoint());
                    let qt: f64 = {
                        let tw = tg.apply(&w);
                        w.iter().zip(&tw).map(|(a, b)| (b * a.conj()).re).sum()
                    };
                    let q2: f64 = {
                        let gw = rs2.gram_op().apply(&w);
                        w.iter().zip(&gw).map(|(a, b)| (b * a.conj()).re).sum()
                    };
                    assert!(qt > q2);
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        // both branches exercised
        assert!(succeeded > 0 && failed > 0, "{succeeded} / {failed}");
    }

    #[test]
    fn complementary_of_unitary_zero_and_projection() {
        let tol = Tolerances::default();
        let u = euclid_op(CMatrix::from_rows_real(&[&[0.6, 0.8], &[-0.8, 0.6]]));
        let comp = complementary(&RangeSpace::new(u, &tol).unwrap()).unwrap();
        assert_eq!(comp.dim(), 0);

        let zero = euclid_op(CMatrix::zeros(3, 2));
        let comp = complementary(&RangeSpace::new(zero, &tol).unwrap()).unwrap();
        assert_eq!(comp.dim(), 3);
        assert!((&comp.c_op().onb - &CMatrix::identity(3)).norm_fro() < 1e-12);

        // orthogonal projection: complementary = orthocomplement with ambient norm
        let p = euclid_op(CMatrix::diag_real(&[1.0, 0.0, 1.0]));
        let comp = complementary(&RangeSpace::new(p, &tol).unwrap()).unwrap();
        let expect = CMatrix::diag_real(&[0.0, 1.0, 0.0]);
        assert!((&comp.c_op().onb - &expect).norm_fro() < 1e-12);
    }

    #[test]
    fn complement_decompose_cases() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let x = random_vec(&mut rng, 2);

        let u = euclid_op(CMatrix::from_rows_real(&[&[0.0, 1.0], &[1.0, 0.0]]));
        let rs = RangeSpace::new(u, &tol).unwrap();
        let d = complement_decompose(&rs, &x).unwrap();
        assert!(d.x_comp.iter().all(|z| z.norm() < 1e-12));
        let nx: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((d.range_norm - nx).abs() < 1e-12);

        let zero = euclid_op(CMatrix::zeros(2, 2));
        let rs = RangeSpace::new(zero, &tol).unwrap();
        let d = complement_decompose(&rs, &x).unwrap();
        assert!(d.x_range.iter().all(|z| z.norm() < 1e-12));

        for _ in 0..10 {
            let cop = random_contraction(&mut rng, 3, 2);
            let rs = RangeSpace::new(cop, &tol).unwrap();
            let x = random_vec(&mut rng, 3);
            let d = complement_decompose(&rs, &x).unwrap();
            assert!(d.pythagoras_residual < 1e-9);
            // decomposition parts recombine
            for i in 0..3 {
                assert!((d.x_range[i] + d.x_comp[i] - x[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn decomposition_minimizes_over_alternative_splits() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let cop = random_contraction(&mut rng, 4, 4);
        let rs = RangeSpace::new(cop.clone(), &tol).unwrap();
        let comp = complementary(&rs).unwrap();
        let x = random_vec(&mut rng, 4);
        let d = complement_decompose(&rs, &x).unwrap();
        let x_norm_sqr: f64 = x.iter().map(|z| z.norm_sqr()).sum();

        // shift mass along directions in both ranges: w = C C* (I - C C*) v
        let gram = rs.gram_op();
        let defect = &CMatrix::identity(4) - gram;
        for _ in 0..50 {
            let v = random_vec(&mut rng, 4);
            let w = gram.apply(&defect.apply(&v));
            let eps = rng.gen::<f64>() * 2.0 - 1.0;
            let y_range: Vec<Complex64> = d
                .x_range
                .iter()
                .zip(&w)
                .map(|(a, b)| a + b * eps)
                .collect();
            let y_comp: Vec<Complex64> = d
                .x_comp
                .iter()
                .zip(&w)
                .map(|(a, b)| a - b * eps)
                .collect();
            let n1 = match rs.range_norm(&y_range) {
                Ok(n) => n,
                Err(_) => continue,
            };
            let n2 = match comp.range_norm(&y_comp) {
                Ok(n) => n,
                Err(_) => continue,
            };
            assert!(n1 * n1 + n2 * n2 >= x_norm_sqr - 1e-8);
        }
    }

    #[test]
    fn property_a_inequality_spot_check() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let cop = random_contraction(&mut rng, 3, 3);
        let rs = RangeSpace::new(cop.clone(), &tol).unwrap();
        let comp = complementary(&rs).unwrap();
        for _ in 0..10 {
            let xp = cop.onb.apply(&random_vec(&mut rng, 3));
            let xpp = comp.c_op().onb.apply(&random_vec(&mut rng, 3));
            let sum: Vec<Complex64> = xp.iter().zip(&xpp).map(|(a, b)| a + b).collect();
            let lhs: f64 = sum.iter().map(|z| z.norm_sqr()).sum();
            let n1 = rs.range_norm(&xp).unwrap();
            let n2 = comp.range_norm(&xpp).unwrap();
            assert!(lhs <= n1 * n1 + n2 * n2 + 1e-9);
        }
    }
}
