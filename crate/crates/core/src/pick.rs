//! Pick decomposition of a kernel at a base point.
//!
//! A kernel K is a Pick kernel at λ_0 when the matrix
//! F[i][j] = 1 - δ(λ_i) conj(δ(λ_j)) / K(λ_i, λ_j) is positive
//! semidefinite, where δ = k_{λ_0} / ||k_{λ_0}||. The factorization
//! F = B* B produces the vectors β(λ_i) (columns of B) with
//! F[i][j] = <β(λ_j), β(λ_i)> and ||β(λ)|| < 1, and the row functionals
//! B(λ) ξ = <ξ, β(λ)> assemble into the contractive multiplier operator
//! from B (x) H(K) to H(K) that drives the invariant-subspace theory.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numlin::{self, CMatrix, Tolerances};
use crate::rkhs::{
    self, pointwise_operator, KernelData, OperatorData, Point, SpaceDescriptor, VecElement,
};

/// Outcome of the Pick positivity test.
#[derive(Debug, Clone)]
pub struct PickVerdict {
    pub is_pick: bool,
    /// minimal eigenvalue of F, the witness
    pub min_eigenvalue: f64,
    /// the Pick matrix F
    pub beta_gram: CMatrix,
    /// max diagonal entry of F; < 1 means ||β(λ)|| < 1 throughout
    pub max_diag: f64,
}

/// Assemble F[i][j] = 1 - δ(λ_i) conj(δ(λ_j)) / K(λ_i, λ_j).
pub fn pick_matrix(kernel: &KernelData, base_index: usize) -> CMatrix {
    let delta = kernel.delta(base_index);
    let one = Complex64::new(1.0, 0.0);
    CMatrix::from_fn(kernel.n_points(), kernel.n_points(), |i, j| {
        one - delta[i] * delta[j].conj() / kernel.value(i, j)
    })
}

pub fn check_pick(kernel: &KernelData, base_index: usize, tol: &Tolerances) -> Result<PickVerdict> {
    if base_index >= kernel.n_points() {
        return Err(Error::Shape(format!(
            "base index {} out of range for {} points",
            base_index,
            kernel.n_points()
        )));
    }
    let f = pick_matrix(kernel, base_index);
    let verdict = numlin::is_psd(&f, tol)?;
    let max_diag = (0..f.rows()).map(|i| f[(i, i)].re).fold(f64::MIN, f64::max);
    Ok(PickVerdict {
        is_pick: verdict.is_psd && max_diag < 1.0,
        min_eigenvalue: verdict.min_eigenvalue,
        beta_gram: f,
        max_diag,
    })
}

/// The Pick test at every base point; disagreement across bases is a
/// numerical warning surfaced by the CLI.
pub fn check_pick_all_bases(kernel: &KernelData, tol: &Tolerances) -> Result<Vec<PickVerdict>> {
    (0..kernel.n_points())
        .map(|b| check_pick(kernel, b, tol))
        .collect()
}

/// The materialized Pick factorization: δ, F, the minimal β vectors and
/// optionally a user-supplied ambient (non-minimal) β.
#[derive(Debug, Clone)]
pub struct PickDecomposition {
    kernel: KernelData,
    base_index: usize,
    delta: Vec<Complex64>,
    beta_gram: CMatrix,
    /// minimal factor, dim_b x n, column i = β(λ_i)
    beta_minimal: CMatrix,
    /// optional ambient β consistent with the same Gram
    beta_ambient: Option<CMatrix>,
    dim_b: usize,
    f_min_eig: f64,
}

pub fn decompose(
    kernel: &KernelData,
    base_index: usize,
    tol: &Tolerances,
) -> Result<PickDecomposition> {
    let verdict = check_pick(kernel, base_index, tol)?;
    if !verdict.is_pick {
        return Err(Error::NotPick {
            min_eigenvalue: verdict.min_eigenvalue,
        });
    }
    let beta = numlin::psd_factor(&verdict.beta_gram, tol)?;
    let dim_b = beta.rows();
    Ok(PickDecomposition {
        kernel: kernel.clone(),
        base_index,
        delta: kernel.delta(base_index),
        beta_gram: verdict.beta_gram,
        beta_minimal: beta,
        beta_ambient: None,
        dim_b,
        f_min_eig: verdict.min_eigenvalue,
    })
}

impl PickDecomposition {
    pub fn kernel(&self) -> &KernelData {
        &self.kernel
    }

    pub fn base_index(&self) -> usize {
        self.base_index
    }

    pub fn delta(&self) -> &[Complex64] {
        &self.delta
    }

    pub fn beta_gram(&self) -> &CMatrix {
        &self.beta_gram
    }

    pub fn f_min_eig(&self) -> f64 {
        self.f_min_eig
    }

    /// Minimal span dimension of {β(λ)}.
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Effective β matrix: the ambient one when supplied, else minimal.
    pub fn beta(&self) -> &CMatrix {
        self.beta_ambient.as_ref().unwrap_or(&self.beta_minimal)
    }

    pub fn beta_minimal(&self) -> &CMatrix {
        &self.beta_minimal
    }

    /// Dimension of the effective coefficient space B.
    pub fn dim_b_effective(&self) -> usize {
        self.beta().rows()
    }

    /// β(λ_i) as a column.
    pub fn beta_at(&self, i: usize) -> Vec<Complex64> {
        self.beta().column(i)
    }

    /// Supply an explicit (possibly non-minimal) β; it must reproduce the
    /// same Gram: β* β = F.
    pub fn with_ambient_beta(mut self, beta: CMatrix) -> Result<Self> {
        if beta.cols() != self.kernel.n_points() {
            return Err(Error::Shape(
                "ambient beta needs one column per point".into(),
            ));
        }
        let gram = beta.adjoint().matmul(&beta);
        let dev = (&gram - &self.beta_gram).norm_fro();
        let tol = self.kernel.tolerances().residual_tol;
        if dev > tol * self.beta_gram.norm_fro().max(1.0) {
            return Err(Error::SpaceMismatch(format!(
                "ambient beta Gram deviates from the Pick matrix by {dev:.3e}"
            )));
        }
        self.beta_ambient = Some(beta);
        Ok(self)
    }

    /// Enlarge B by appending zero coordinates to every β(λ); the Gram is
    /// unchanged and the new directions are orthogonal to all β(λ).
    pub fn with_enlarged_ambient(self, extra: usize) -> Result<Self> {
        let base = self.beta().clone();
        let enlarged = base.vstack(&CMatrix::zeros(extra, base.cols()));
        self.with_ambient_beta(enlarged)
    }

    /// True when δ is identically 1 (kernel normalized at the base point).
    pub fn is_normalized(&self) -> bool {
        self.kernel.is_normalized(self.base_index)
    }

    /// The function δ as an element of H(K).
    pub fn delta_element(&self) -> VecElement {
        VecElement::new(
            SpaceDescriptor::scalar(self.kernel.n_points()),
            self.delta.clone(),
        )
        .expect("delta has one value per point")
    }

    /// The multiplier operator from B (x) H(K) to H(K): in value
    /// coordinates it contracts the B slot against β(λ_i) pointwise.
    pub fn b_operator(&self) -> OperatorData {
        let n = self.kernel.n_points();
        let r = self.dim_b_effective();
        let dom = SpaceDescriptor::new(vec![r], n, 1);
        let cod = SpaceDescriptor::scalar(n);
        let blocks: Vec<CMatrix> = (0..n)
            .map(|i| {
                let col = self.beta_at(i);
                CMatrix::from_fn(1, r, |_, s| col[s].conj())
            })
            .collect();
        pointwise_operator(&self.kernel, &dom, &cod, &blocks)
            .expect("B blocks are shaped 1 x dim_b by construction")
    }

    /// Rank-one orthogonal projection onto the span of δ, in orthonormal
    /// coordinates.
    pub fn delta_projection(&self) -> OperatorData {
        let coords = rkhs::to_onb(&self.kernel, &self.delta_element())
            .expect("delta lives over its own kernel");
        let norm_sqr: f64 = coords.iter().map(|z| z.norm_sqr()).sum();
        let n = self.kernel.n_points();
        let mat = CMatrix::from_fn(n, n, |i, j| coords[i] * coords[j].conj() / norm_sqr);
        OperatorData::new(
            rkhs::OpSpace::Rkhs(SpaceDescriptor::scalar(n)),
            rkhs::OpSpace::Rkhs(SpaceDescriptor::scalar(n)),
            mat,
        )
        .expect("projection is n x n")
    }

    /// β(λ_j) (x) k_{λ_j} as an element of B (x) H(K).
    pub fn beta_section(&self, j: usize) -> VecElement {
        let n = self.kernel.n_points();
        let r = self.dim_b_effective();
        let beta_j = self.beta_at(j);
        let desc = SpaceDescriptor::new(vec![r], n, 1);
        let mut values = Vec::with_capacity(n * r);
        for i in 0..n {
            let kij = self.kernel.value(i, j);
            for b in &beta_j {
                values.push(b * kij);
            }
        }
        VecElement::new(desc, values).expect("section dims match")
    }
}

/// ||(I - B B*) - π||: the δ-projection identity residual.
pub fn delta_projection_check(p: &PickDecomposition) -> f64 {
    let b = p.b_operator();
    let n = p.kernel().n_points();
    let defect = &CMatrix::identity(n) - &b.gram();
    let pi = p.delta_projection();
    numlin::operator_norm(&(&defect - &pi.onb))
}

/// The normalized kernel K'(μ, λ) = K(μ, λ) / (δ(μ) conj(δ(λ))) together
/// with the diagonal unitary Ω(f) = f/δ implementing H(K) -> H(K').
///
/// The denominator is read as δ(μ) conj(δ(λ)): the unique Hermitian
/// reading of the normalization.
#[derive(Debug, Clone)]
pub struct NormalizedKernel {
    pub kprime: KernelData,
    /// δ values; Ω divides the value at λ_i by omega_diag[i]
    pub omega_diag: Vec<Complex64>,
    pub base_index: usize,
}

pub fn normalize(p: &PickDecomposition) -> Result<NormalizedKernel> {
    let n = p.kernel().n_points();
    let delta = p.delta();
    for (i, d) in delta.iter().enumerate() {
        if d.norm() < 1e-300 {
            return Err(Error::ZeroDelta { index: i });
        }
    }
    let gram = CMatrix::from_fn(n, n, |i, j| {
        p.kernel().value(i, j) / (delta[i] * delta[j].conj())
    });
    let points: Vec<Point> = p.kernel().points().to_vec();
    let kprime = KernelData::new(points, gram, p.kernel().tolerances())?;
    Ok(NormalizedKernel {
        kprime,
        omega_diag: delta.to_vec(),
        base_index: p.base_index(),
    })
}

impl NormalizedKernel {
    /// Ω(f) = f/δ, pointwise in value coordinates.
    pub fn apply_omega(&self, f: &VecElement) -> VecElement {
        self.map_values(f, false)
    }

    /// Ω^{-1}(g) = g·δ.
    pub fn apply_omega_inv(&self, f: &VecElement) -> VecElement {
        self.map_values(f, true)
    }

    fn map_values(&self, f: &VecElement, inverse: bool) -> VecElement {
        let inner = f.space.inner_dim();
        let mut values = f.values.clone();
        for i in 0..f.space.n_points {
            let d = if inverse {
                self.omega_diag[i]
            } else {
                Complex64::new(1.0, 0.0) / self.omega_diag[i]
            };
            for t in 0..inner {
                values[i * inner + t] *= d;
            }
        }
        VecElement {
            space: f.space.clone(),
            values,
        }
    }
}

/// Residual of the identity (1 - B(μ) B(λ)*) K(μ, λ) = δ(μ) conj(δ(λ)),
/// computed from the factored β rather than from F directly.
pub fn pick_identity_residual(p: &PickDecomposition) -> f64 {
    let n = p.kernel().n_points();
    let beta = p.beta();
    let mut max = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut inner = Complex64::new(0.0, 0.0);
            for s in 0..beta.rows() {
                // B(μ) B(λ)* = <β(λ), β(μ)> at μ = λ_i, λ = λ_j
                inner += beta[(s, i)].conj() * beta[(s, j)];
            }
            let lhs = (Complex64::new(1.0, 0.0) - inner) * p.kernel().value(i, j);
            let rhs = p.delta()[i] * p.delta()[j].conj();
            max = max.max((lhs - rhs).norm());
        }
    }
    max
}
