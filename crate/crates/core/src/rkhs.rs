//! Finite-sample model of a reproducing kernel Hilbert space and its tensor
//! spaces.
//!
//! A kernel on n points is its n x n Gram matrix K, kept strictly positive
//! definite so the kernel sections form a basis. Elements of tensor spaces
//! (aux factors) (x) H(K) (x) C^coeff are stored in *value coordinates*:
//! point-major blocks, each block holding the value of the function at that
//! point with aux factors first, coefficient index last, row-major. The
//! inner product carries the Gram weight K^{-1} on the point index.
//!
//! Operators are stored in *orthonormal coordinates*, where adjoints are
//! plain conjugate transposes. The fixed orthonormal basis comes from the
//! Hermitian eigendecomposition of K with descending eigenvalues and a
//! deterministic phase convention, so coordinates are reproducible across
//! runs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlin::{self, CMatrix, Tolerances};

/// A sample point: a complex coordinate vector (possibly empty for
/// explicit kernels) plus a display label.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: Vec<Complex64>,
    pub label: String,
}

impl Point {
    pub fn scalar(z: Complex64) -> Self {
        Point {
            coords: vec![z],
            label: format!("{z}"),
        }
    }

    pub fn vector(coords: Vec<Complex64>) -> Self {
        let label = format!(
            "({})",
            coords
                .iter()
                .map(|z| z.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        Point { coords, label }
    }

    pub fn labeled(label: &str) -> Self {
        Point {
            coords: vec![],
            label: label.to_string(),
        }
    }

    fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Kernel families with entrywise closed forms.
#[derive(Debug, Clone)]
pub enum KernelFamily {
    /// 1/(1 - z w̄) on the unit disk.
    Szego,
    /// 1/(1 - <z, w>) on the unit ball of C^m.
    DruryArveson,
    /// sum_k a_k (z w̄)^k with positive coefficients, a_0 > 0.
    PowerSeries(Vec<f64>),
    /// 1/(1 - (z w̄ + z² w̄²)/2), the two-summand example kernel.
    Example52,
    /// Explicit Gram matrix; points may be opaque labels.
    Explicit(CMatrix),
}

/// Finite point set together with its strictly positive definite Gram
/// matrix, plus the cached eigendecomposition that fixes the orthonormal
/// basis of H(K).
#[derive(Debug, Clone)]
pub struct KernelData {
    points: Vec<Point>,
    gram: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
    gram_inv: CMatrix,
    tol: Tolerances,
}

impl KernelData {
    /// Validate and cache. Rejects non-Hermitian, numerically singular, or
    /// zero-entry Gram matrices.
    pub fn new(points: Vec<Point>, gram: CMatrix, tol: &Tolerances) -> Result<Self> {
        tol.validate()?;
        gram.check_finite()?;
        if !gram.is_square() || gram.rows() != points.len() || points.is_empty() {
            return Err(Error::Shape(format!(
                "gram is {}x{} for {} points",
                gram.rows(),
                gram.cols(),
                points.len()
            )));
        }
        let dev = gram.hermitian_deviation();
        if dev > tol.residual_tol {
            return Err(Error::NotHermitian { deviation: dev });
        }
        for i in 0..gram.rows() {
            for j in 0..gram.cols() {
                if gram[(i, j)].norm() == 0.0 {
                    return Err(Error::ZeroKernelEntry { row: i, col: j });
                }
            }
        }
        let eig = numlin::hermitian_eig(&gram, tol)?;
        let scale = numlin::operator_norm(&gram);
        let min_eig = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min_eig <= tol.psd_tol * scale {
            return Err(Error::SingularKernel {
                min_eigenvalue: min_eig,
            });
        }
        // K^{-1} through LU, independent of the eigen route used for the ONB
        let gram_inv = numlin::inverse(&gram)?;
        Ok(KernelData {
            points,
            gram,
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
            gram_inv,
            tol: *tol,
        })
    }

    pub fn from_family(family: &KernelFamily, points: Vec<Point>, tol: &Tolerances) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::Shape("empty point set".into()));
        }
        match family {
            KernelFamily::Explicit(gram) => return Self::new(points, gram.clone(), tol),
            KernelFamily::PowerSeries(coeffs) => {
                if coeffs.is_empty() || coeffs[0] <= 0.0 || coeffs.iter().any(|&c| c < 0.0) {
                    return Err(Error::DomainViolation(
                        "power series coefficients must be nonnegative with a_0 > 0".into(),
                    ));
                }
            }
            _ => {}
        }
        // family kernels need coordinates and pairwise distinct points
        for p in &points {
            if p.coords.is_empty() {
                return Err(Error::DomainViolation(
                    "family kernels require coordinate points".into(),
                ));
            }
        }
        let dim = points[0].coords.len();
        if points.iter().any(|p| p.coords.len() != dim) {
            return Err(Error::DomainViolation(
                "points must share the same coordinate dimension".into(),
            ));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let dist: f64 = points[i]
                    .coords
                    .iter()
                    .zip(&points[j].coords)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                if dist < 1e-12 {
                    return Err(Error::DomainViolation(format!(
                        "points {} and {} coincide",
                        points[i].label, points[j].label
                    )));
                }
            }
        }
        let scalar_only = matches!(
            family,
            KernelFamily::Szego | KernelFamily::PowerSeries(_) | KernelFamily::Example52
        );
        if scalar_only && dim != 1 {
            return Err(Error::DomainViolation(
                "this kernel family takes scalar points".into(),
            ));
        }
        if matches!(family, KernelFamily::Szego | KernelFamily::DruryArveson) {
            for p in &points {
                if p.norm_sqr() >= 1.0 {
                    return Err(Error::DomainViolation(format!(
                        "point {} lies outside the open unit ball",
                        p.label
                    )));
                }
            }
        }
        let pairing = |i: usize, j: usize| -> Complex64 {
            points[i]
                .coords
                .iter()
                .zip(&points[j].coords)
                .map(|(a, b)| a * b.conj())
                .sum()
        };
        let one = Complex64::new(1.0, 0.0);
        let gram = match family {
            KernelFamily::Szego | KernelFamily::DruryArveson => {
                CMatrix::from_fn(n, n, |i, j| one / (one - pairing(i, j)))
            }
            KernelFamily::PowerSeries(coeffs) => CMatrix::from_fn(n, n, |i, j| {
                let x = pairing(i, j);
                let mut acc = Complex64::new(0.0, 0.0);
                let mut xk = one;
                for &c in coeffs {
                    acc += xk * c;
                    xk *= x;
                }
                acc
            }),
            KernelFamily::Example52 => CMatrix::from_fn(n, n, |i, j| {
                let x = pairing(i, j);
                one / (one - (x + x * x) * 0.5)
            }),
            KernelFamily::Explicit(_) => unreachable!(),
        };
        Self::new(points, gram, tol)
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &CMatrix {
        &self.gram_inv
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.gram[(i, j)]
    }

    /// K(λ_i, λ_base) / sqrt(K(λ_base, λ_base)).
    pub fn delta(&self, base: usize) -> Vec<Complex64> {
        let norm = self.gram[(base, base)].re.sqrt();
        (0..self.n_points())
            .map(|i| self.gram[(i, base)] / norm)
            .collect()
    }

    /// true iff K(λ_i, base) = 1 for every i (so delta is identically 1).
    pub fn is_normalized(&self, base: usize) -> bool {
        let one = Complex64::new(1.0, 0.0);
        (0..self.n_points()).all(|i| (self.gram[(i, base)] - one).norm() <= self.tol.residual_tol)
    }

    pub fn normalization_deviation(&self, base: usize) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        (0..self.n_points())
            .map(|i| (self.gram[(i, base)] - one).norm())
            .fold(0.0, f64::max)
    }

    // value -> onb on the point index: c = diag(w^{-1/2}) V* v
    fn point_to_onb(&self, block: &[Complex64], out: &mut [Complex64]) {
        let n = self.n_points();
        for (row, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for q in 0..n {
                acc += self.eigenvectors[(q, row)].conj() * block[q];
            }
            *o = acc / self.eigenvalues[row].sqrt();
        }
    }

    fn point_from_onb(&self, coords: &[Complex64], out: &mut [Complex64]) {
        let n = self.n_points();
        for (row, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for q in 0..n {
                acc += self.eigenvectors[(row, q)] * coords[q] * self.eigenvalues[q].sqrt();
            }
            *o = acc;
        }
    }

    /// Matrix of the value -> orthonormal coordinate map on a tensor space.
    pub fn onb_matrix(&self, desc: &SpaceDescriptor) -> CMatrix {
        let s = CMatrix::from_fn(self.n_points(), self.n_points(), |i, j| {
            self.eigenvectors[(j, i)].conj() / self.eigenvalues[i].sqrt()
        });
        s.kron(&CMatrix::identity(desc.inner_dim()))
    }

    /// Matrix of the orthonormal -> value coordinate map on a tensor space.
    pub fn onb_matrix_inv(&self, desc: &SpaceDescriptor) -> CMatrix {
        let s = CMatrix::from_fn(self.n_points(), self.n_points(), |i, j| {
            self.eigenvectors[(i, j)] * self.eigenvalues[j].sqrt()
        });
        s.kron(&CMatrix::identity(desc.inner_dim()))
    }
}

/// Shape of a tensor space (aux factors) (x) H(K) (x) C^coeff. The aux
/// factors sit left of the function factor, the coefficient space right of
/// it; value blocks are flattened aux-first, coefficient-last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub aux_dims: Vec<usize>,
    pub n_points: usize,
    pub coeff_dim: usize,
}

impl SpaceDescriptor {
    pub fn new(aux_dims: Vec<usize>, n_points: usize, coeff_dim: usize) -> Self {
        SpaceDescriptor {
            aux_dims,
            n_points,
            coeff_dim,
        }
    }

    /// H(K) (x) C^coeff with no aux factors.
    pub fn coeff(n_points: usize, coeff_dim: usize) -> Self {
        Self::new(vec![], n_points, coeff_dim)
    }

    /// Scalar-valued H(K).
    pub fn scalar(n_points: usize) -> Self {
        Self::coeff(n_points, 1)
    }

    pub fn aux_prod(&self) -> usize {
        self.aux_dims.iter().product()
    }

    pub fn inner_dim(&self) -> usize {
        self.aux_prod() * self.coeff_dim
    }

    pub fn total_dim(&self) -> usize {
        self.n_points * self.inner_dim()
    }

    pub fn with_left_aux(&self, dim: usize) -> Self {
        let mut aux = vec![dim];
        aux.extend_from_slice(&self.aux_dims);
        Self::new(aux, self.n_points, self.coeff_dim)
    }

    pub fn with_coeff_factor(&self, dim: usize) -> Self {
        Self::new(self.aux_dims.clone(), self.n_points, self.coeff_dim * dim)
    }
}

/// Either a tensor space over the kernel or a plain coefficient space C^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpSpace {
    Rkhs(SpaceDescriptor),
    Euclidean(usize),
}

impl OpSpace {
    pub fn total_dim(&self) -> usize {
        match self {
            OpSpace::Rkhs(d) => d.total_dim(),
            OpSpace::Euclidean(d) => *d,
        }
    }

    fn lifted_left(&self, r: usize) -> OpSpace {
        match self {
            OpSpace::Rkhs(d) => OpSpace::Rkhs(d.with_left_aux(r)),
            OpSpace::Euclidean(d) => OpSpace::Euclidean(r * d),
        }
    }

    fn lifted_right(&self, m: usize) -> OpSpace {
        match self {
            OpSpace::Rkhs(d) => OpSpace::Rkhs(d.with_coeff_factor(m)),
            OpSpace::Euclidean(d) => OpSpace::Euclidean(d * m),
        }
    }

}

/// Element of a tensor space in value coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct VecElement {
    pub space: SpaceDescriptor,
    pub values: Vec<Complex64>,
}

impl VecElement {
    pub fn new(space: SpaceDescriptor, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.total_dim() {
            return Err(Error::SpaceMismatch(format!(
                "expected {} values, got {}",
                space.total_dim(),
                values.len()
            )));
        }
        Ok(VecElement { space, values })
    }

    pub fn zero(space: SpaceDescriptor) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); space.total_dim()];
        VecElement { space, values }
    }

    /// The value block at point index i (length inner_dim).
    pub fn value_at(&self, i: usize) -> &[Complex64] {
        let inner = self.space.inner_dim();
        &self.values[i * inner..(i + 1) * inner]
    }

    pub fn add(&self, other: &VecElement) -> Result<VecElement> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch("element spaces differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(VecElement {
            space: self.space.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &VecElement) -> Result<VecElement> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch("element spaces differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(VecElement {
            space: self.space.clone(),
            values,
        })
    }

    pub fn scale(&self, c: Complex64) -> VecElement {
        VecElement {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

/// The kernel section k_λj (x) ξ as an element of H(K) (x) C^coeff.
pub fn kernel_section(kernel: &KernelData, j: usize, xi: &[Complex64]) -> VecElement {
    let n = kernel.n_points();
    let desc = SpaceDescriptor::coeff(n, xi.len());
    let mut values = Vec::with_capacity(n * xi.len());
    for i in 0..n {
        let kij = kernel.value(i, j);
        for x in xi {
            values.push(kij * x);
        }
    }
    VecElement { space: desc, values }
}

/// Gram-weighted inner product sum_{i,j} (K^{-1})_{ij} <f(λ_j), g(λ_i)>.
pub fn inner_product(f: &VecElement, g: &VecElement, kernel: &KernelData) -> Result<Complex64> {
    if f.space != g.space {
        return Err(Error::SpaceMismatch("inner product across spaces".into()));
    }
    if f.space.n_points != kernel.n_points() {
        return Err(Error::SpaceMismatch(
            "element does not live over this kernel".into(),
        ));
    }
    let kinv = kernel.gram_inv();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..kernel.n_points() {
        let gi = g.value_at(i);
        for j in 0..kernel.n_points() {
            let fj = f.value_at(j);
            let w = kinv[(i, j)];
            let mut pair = Complex64::new(0.0, 0.0);
            for t in 0..fj.len() {
                pair += fj[t] * gi[t].conj();
            }
            acc += w * pair;
        }
    }
    Ok(acc)
}

pub fn norm(f: &VecElement, kernel: &KernelData) -> Result<f64> {
    Ok(inner_product(f, f, kernel)?.re.max(0.0).sqrt())
}

/// Value -> orthonormal coordinates.
pub fn to_onb(kernel: &KernelData, f: &VecElement) -> Result<Vec<Complex64>> {
    if f.space.n_points != kernel.n_points() {
        return Err(Error::SpaceMismatch(
            "element does not live over this kernel".into(),
        ));
    }
    let n = kernel.n_points();
    let inner = f.space.inner_dim();
    let mut out = vec![Complex64::new(0.0, 0.0); n * inner];
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    let mut res = vec![Complex64::new(0.0, 0.0); n];
    for t in 0..inner {
        for p in 0..n {
            col[p] = f.values[p * inner + t];
        }
        kernel.point_to_onb(&col, &mut res);
        for p in 0..n {
            out[p * inner + t] = res[p];
        }
    }
    Ok(out)
}

/// Orthonormal -> value coordinates.
pub fn from_onb(
    kernel: &KernelData,
    space: &SpaceDescriptor,
    coords: &[Complex64],
) -> Result<VecElement> {
    if coords.len() != space.total_dim() || space.n_points != kernel.n_points() {
        return Err(Error::SpaceMismatch(
            "coordinate length does not match the space".into(),
        ));
    }
    let n = kernel.n_points();
    let inner = space.inner_dim();
    let mut out = vec![Complex64::new(0.0, 0.0); n * inner];
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    let mut res = vec![Complex64::new(0.0, 0.0); n];
    for t in 0..inner {
        for p in 0..n {
            col[p] = coords[p * inner + t];
        }
        kernel.point_from_onb(&col, &mut res);
        for p in 0..n {
            out[p * inner + t] = res[p];
        }
    }
    VecElement::new(space.clone(), out)
}

/// Operator between spaces, stored in orthonormal coordinates of both
/// sides, so the adjoint is the conjugate transpose.
#[derive(Debug, Clone)]
pub struct OperatorData {
    pub domain: OpSpace,
    pub codomain: OpSpace,
    pub onb: CMatrix,
}

impl OperatorData {
    pub fn new(domain: OpSpace, codomain: OpSpace, onb: CMatrix) -> Result<Self> {
        if onb.rows() != codomain.total_dim() || onb.cols() != domain.total_dim() {
            return Err(Error::SpaceMismatch(format!(
                "operator is {}x{} but spaces are {} -> {}",
                onb.rows(),
                onb.cols(),
                domain.total_dim(),
                codomain.total_dim()
            )));
        }
        Ok(OperatorData {
            domain,
            codomain,
            onb,
        })
    }

    pub fn identity(space: OpSpace) -> Self {
        let d = space.total_dim();
        OperatorData {
            domain: space.clone(),
            codomain: space,
            onb: CMatrix::identity(d),
        }
    }

    pub fn adjoint(&self) -> OperatorData {
        OperatorData {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            onb: self.onb.adjoint(),
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &OperatorData) -> Result<OperatorData> {
        if self.domain != other.codomain {
            return Err(Error::SpaceMismatch(
                "composition domain/codomain mismatch".into(),
            ));
        }
        Ok(OperatorData {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            onb: self.onb.matmul(&other.onb),
        })
    }

    pub fn add(&self, other: &OperatorData) -> Result<OperatorData> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpaceMismatch("operator sum across spaces".into()));
        }
        Ok(OperatorData {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            onb: &self.onb + &other.onb,
        })
    }

    pub fn sub(&self, other: &OperatorData) -> Result<OperatorData> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpaceMismatch("operator difference across spaces".into()));
        }
        Ok(OperatorData {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            onb: &self.onb - &other.onb,
        })
    }

    pub fn scale(&self, c: Complex64) -> OperatorData {
        OperatorData {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            onb: self.onb.scale(c),
        }
    }

    pub fn norm(&self) -> f64 {
        numlin::operator_norm(&self.onb)
    }

    /// self . self*, the Gram operator on the codomain.
    pub fn gram(&self) -> CMatrix {
        self.onb.matmul(&self.onb.adjoint())
    }

    /// I_r (x) self, the new aux factor inserted on the left of both sides.
    pub fn lift_left(&self, r: usize) -> OperatorData {
        let dom = self.domain.lifted_left(r);
        let cod = self.codomain.lifted_left(r);
        let mut onb = CMatrix::zeros(cod.total_dim(), dom.total_dim());
        for alpha in 0..r {
            for i in 0..self.onb.rows() {
                let io = lift_left_index(&self.codomain, r, alpha, i);
                for j in 0..self.onb.cols() {
                    let z = self.onb[(i, j)];
                    if z.re == 0.0 && z.im == 0.0 {
                        continue;
                    }
                    let jo = lift_left_index(&self.domain, r, alpha, j);
                    onb[(io, jo)] = z;
                }
            }
        }
        OperatorData {
            domain: dom,
            codomain: cod,
            onb,
        }
    }

    /// self (x) I_m, the new coefficient factor appended on the right.
    pub fn lift_right(&self, m: usize) -> OperatorData {
        OperatorData {
            domain: self.domain.lifted_right(m),
            codomain: self.codomain.lifted_right(m),
            onb: self.onb.kron(&CMatrix::identity(m)),
        }
    }

    /// Apply to an element given in value coordinates; both sides must be
    /// tensor spaces over the kernel.
    pub fn apply_element(&self, kernel: &KernelData, f: &VecElement) -> Result<VecElement> {
        let dom = match &self.domain {
            OpSpace::Rkhs(d) => d,
            OpSpace::Euclidean(_) => {
                return Err(Error::SpaceMismatch("operator domain is Euclidean".into()))
            }
        };
        let cod = match &self.codomain {
            OpSpace::Rkhs(d) => d,
            OpSpace::Euclidean(_) => {
                return Err(Error::SpaceMismatch("operator codomain is Euclidean".into()))
            }
        };
        if dom != &f.space {
            return Err(Error::SpaceMismatch("operator applied off its domain".into()));
        }
        let coords = to_onb(kernel, f)?;
        let out = self.onb.apply(&coords);
        from_onb(kernel, cod, &out)
    }
}

fn lift_left_index(space: &OpSpace, _r: usize, alpha: usize, orig: usize) -> usize {
    match space {
        OpSpace::Euclidean(d) => alpha * d + orig,
        OpSpace::Rkhs(desc) => {
            let inner = desc.inner_dim();
            let p = orig / inner;
            let rem = orig % inner;
            (p * _r + alpha) * inner + rem
        }
    }
}

/// Operator acting pointwise in value coordinates: block i multiplies the
/// value at λ_i by blocks[i]. This is how every multiplier acts.
pub fn pointwise_operator(
    kernel: &KernelData,
    dom: &SpaceDescriptor,
    cod: &SpaceDescriptor,
    blocks: &[CMatrix],
) -> Result<OperatorData> {
    let n = kernel.n_points();
    if dom.n_points != n || cod.n_points != n || blocks.len() != n {
        return Err(Error::SpaceMismatch(
            "pointwise operator needs one block per point".into(),
        ));
    }
    for b in blocks {
        if b.rows() != cod.inner_dim() || b.cols() != dom.inner_dim() {
            return Err(Error::SpaceMismatch(format!(
                "pointwise block is {}x{}, expected {}x{}",
                b.rows(),
                b.cols(),
                cod.inner_dim(),
                dom.inner_dim()
            )));
        }
    }
    let mut value_mat = CMatrix::zeros(cod.total_dim(), dom.total_dim());
    for (i, b) in blocks.iter().enumerate() {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                value_mat[(i * cod.inner_dim() + r, i * dom.inner_dim() + c)] = b[(r, c)];
            }
        }
    }
    operator_from_value_matrix(kernel, dom, cod, &value_mat)
}

/// Wrap a matrix acting on value coordinates as an OperatorData in
/// orthonormal coordinates.
pub fn operator_from_value_matrix(
    kernel: &KernelData,
    dom: &SpaceDescriptor,
    cod: &SpaceDescriptor,
    value_mat: &CMatrix,
) -> Result<OperatorData> {
    let fwd = kernel.onb_matrix(cod);
    let inv = kernel.onb_matrix_inv(dom);
    OperatorData::new(
        OpSpace::Rkhs(dom.clone()),
        OpSpace::Rkhs(cod.clone()),
        fwd.matmul(value_mat).matmul(&inv),
    )
}

/// Matrix of the operator on value coordinates (tensor spaces only).
pub fn operator_value_matrix(kernel: &KernelData, op: &OperatorData) -> Result<CMatrix> {
    let dom = match &op.domain {
        OpSpace::Rkhs(d) => d,
        _ => return Err(Error::SpaceMismatch("operator domain is Euclidean".into())),
    };
    let cod = match &op.codomain {
        OpSpace::Rkhs(d) => d,
        _ => return Err(Error::SpaceMismatch("operator codomain is Euclidean".into())),
    };
    Ok(kernel
        .onb_matrix_inv(cod)
        .matmul(&op.onb)
        .matmul(&kernel.onb_matrix(dom)))
}

/// Operator from a Euclidean space into a tensor space, given by its
/// value-coordinate matrix (columns are value vectors of images).
pub fn operator_from_euclidean(
    kernel: &KernelData,
    cod: &SpaceDescriptor,
    value_mat: &CMatrix,
) -> Result<OperatorData> {
    let fwd = kernel.onb_matrix(cod);
    OperatorData::new(
        OpSpace::Euclidean(value_mat.cols()),
        OpSpace::Rkhs(cod.clone()),
        fwd.matmul(value_mat),
    )
}
